from itertools import permutations

import pytest

from permgrowth.perm import (
    Permutation,
    all_symmetries,
    contains,
    inflate,
    permutations_of_length,
    substitution_depth,
)
from permgrowth.structure import (
    PARALLEL_ORIENTATIONS,
    WEDGE_ORIENTATIONS,
    depth_wedge_bound_check,
    has_wedge_alternation,
    is_alternation_witness,
    is_parallel_alternation,
    longest_alternation,
    longest_monotone,
    parallel_alternations_up,
    simple_permutations,
    two_increasing_merge,
    two_lines_drawable,
    wedge_alternation,
    wedge_alternations_up,
)


def brute_monotone(p):
    n = len(p)
    inc = dec = 1 if n else 0
    for mask in range(1, 1 << n):
        sub = [p[i] for i in range(n) if mask >> i & 1]
        if all(a < b for a, b in zip(sub, sub[1:])):
            inc = max(inc, len(sub))
        if all(a > b for a, b in zip(sub, sub[1:])):
            dec = max(dec, len(sub))
    return inc, dec


def test_longest_monotone_matches_brute_force():
    for n in range(0, 7):
        for p in permutations(range(1, n + 1)):
            assert longest_monotone(p) == brute_monotone(p)


def test_erdos_szekeres_k3():
    for p in permutations_of_length(5):
        assert max(longest_monotone(p)) >= 3


def test_parallel_alternation_example():
    p = Permutation((1, 3, 5, 7, 9, 2, 4, 6, 8, 10))
    rep = longest_alternation(p, "parallel", "//")
    assert rep.length == 10
    assert is_alternation_witness(p, rep)


def test_wedge_alternation_example():
    p = Permutation((1, 10, 2, 9, 3, 8, 4, 7, 5, 6))
    best = max(longest_alternation(p, "wedge", o).length for o in WEDGE_ORIENTATIONS)
    assert best == 10
    for o in WEDGE_ORIENTATIONS:
        rep = longest_alternation(p, "wedge", o)
        assert is_alternation_witness(p, rep)


def test_identity_has_only_trivial_wedges():
    p = Permutation(range(1, 8))
    for o in WEDGE_ORIENTATIONS:
        rep = longest_alternation(p, "wedge", o)
        assert rep.length <= 2
        assert rep.degenerate


def test_wedge_constructor_orientations():
    for o in WEDGE_ORIENTATIONS:
        p = wedge_alternation(9, o)
        assert longest_alternation(p, "wedge", o).length == 9


def test_alternation_witnesses_are_valid_small():
    for n in range(1, 7):
        for p in permutations_of_length(n):
            for o in PARALLEL_ORIENTATIONS:
                rep = longest_alternation(p, "parallel", o)
                assert is_alternation_witness(p, rep)


def test_parallel_alternation_symmetry_invariance():
    # the maximum over all parallel orientations is a symmetry invariant
    def best(p):
        return max(longest_alternation(p, "parallel", o).length for o in PARALLEL_ORIENTATIONS)

    for p in permutations_of_length(6):
        values = {best(q) for q in all_symmetries(p)}
        assert len(values) == 1


def test_bad_orientation_rejected():
    with pytest.raises(ValueError):
        longest_alternation((1, 2, 3), "parallel", "^")
    with pytest.raises(ValueError):
        longest_alternation((1, 2, 3), "sideways", "//")


def test_alternation_family_counts():
    # two monotone runs split by a vertical line, counted by choosing the left values
    for n in range(2, 9):
        assert len(wedge_alternations_up(n)) == 2 ** (n - 1)
        assert len(parallel_alternations_up(n)) == 2 ** n - n


def test_is_parallel_alternation():
    assert is_parallel_alternation((1, 3, 5, 2, 4, 6))
    assert is_parallel_alternation((2, 4, 6, 1, 3, 5))
    assert not is_parallel_alternation((1, 2, 3))


def test_substitution_depth_examples():
    assert substitution_depth((4, 7, 9, 8, 3, 2, 1, 5, 6)) == 3
    assert substitution_depth((2, 4, 1, 3)) == 1
    b = Permutation((2, 1))
    assert substitution_depth(inflate(Permutation((2, 4, 1, 3)), [b, b, b, b])) == 2


def test_depth_wedge_bound():
    assert depth_wedge_bound_check(1)
    assert depth_wedge_bound_check(2)


def test_long_wedge_is_deep():
    p = wedge_alternation(16, ">")
    assert substitution_depth(p) >= 8
    assert has_wedge_alternation(wedge_alternation(14, ">"), 14)


def test_two_lines():
    assert not two_lines_drawable((3, 2, 1))
    assert two_lines_drawable((4, 1, 5, 2, 3))
    for n in range(0, 8):
        for p in permutations_of_length(n):
            merge = two_increasing_merge(p)
            assert (merge is not None) == (not contains((3, 2, 1), p))
            if merge is not None:
                a, b = merge
                assert sorted(a + b) == list(range(n))
                for part in (a, b):
                    vals = [p[i] for i in part]
                    assert vals == sorted(vals)


def test_simple_counts():
    # simple permutations of lengths 4 to 7 (OEIS A111111)
    assert [len(simple_permutations(n)) for n in range(4, 8)] == [2, 6, 46, 338]
