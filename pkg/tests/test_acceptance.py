"""Acceptance criteria 1 to 19, one test each.

Every test prints a ``[PASS]`` or ``[FAIL]`` line for its criterion.  Run the
file directly (``python3 tests/test_acceptance.py``) for a plain summary.
"""
import io
import random
import sys
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

from permgrowth.classes import (
    Av,
    antichain_lengths,
    antichain_member,
    members,
    oscillation,
    parse_profile,
    skew_indec_profile,
    sum_closure_counts,
    sum_indec_profile,
)
from permgrowth.cli import main as cli_main
from permgrowth.concentration import (
    all_lines,
    cover_for_line,
    inflated_oscillation_witness,
    inflated_oscillations,
    is_concentrated,
    multi_line_cover,
)
from permgrowth.gf import (
    gf_sum_closure,
    kappa_polynomial_report,
    named_constant,
    profile_closure_gf,
    profile_growth,
    RationalGF,
    IntPolynomial,
)
from permgrowth.grid import (
    ClassMatrix,
    all_griddings,
    cell_graph,
    find_gridding,
    gridded_signature,
    subword_count,
    subword_growth,
    vector_decode,
    vector_encode,
)
from permgrowth.manifest import ERRATUM, MATCH, MISMATCH, evaluate, load_manifest, parse_manifest
from permgrowth.perm import (
    Permutation,
    contains,
    decompose,
    inflate,
    is_simple,
    patterns_of_length,
    permutations_of_length,
    standardize,
    window_pattern,
)
from permgrowth.structure import is_parallel_alternation, longest_monotone, two_increasing_merge

STRICT = 5e-5
LOOSE = 5e-3
REFINED = Fraction(1, 10**12)


CRITERION_LINES = []


def report(k, text, ok):
    # printed directly when run as a script; under pytest the conftest hook
    # repeats the collected lines in the terminal summary
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {text}"
    CRITERION_LINES.append(line)
    print(line)
    assert ok, line


def growth(perm, how="sum"):
    prof = sum_indec_profile(perm) if how == "sum" else skew_indec_profile(perm)
    return profile_growth(prof)


def manifest_row(**fields):
    return parse_manifest("\n".join(f"{k}: {v}" for k, v in fields.items()))[0]


# ---------------------------------------------------------------------------
# quantitative


def test_criterion_01_inflation_profiles():
    expected = {
        "256314": (1, 1, 3, 6, 4, 1),
        "265314": (1, 1, 3, 5, 4, 1),
        "263415": (1, 1, 3, 6, 3, 1),
        "264315": (1, 1, 3, 4, 3, 1),
    }
    got = {p: sum_indec_profile(Permutation(p)).head for p in expected}
    report(1, f"sum indecomposable profiles {got}", got == expected)


def test_criterion_02_inflation_growths():
    g265 = growth(Permutation("265314")).refine(REFINED)
    root2 = named_constant("one_plus_sqrt2").refine(REFINED)
    ok = abs(g265.approx - 2.41421) <= STRICT and abs(g265.approx - root2.approx) < 1e-9
    for p, v in (("263415", 2.43245), ("264315", 2.36772)):
        ok = ok and abs(growth(Permutation(p)).approx - v) <= STRICT
    # the printed 256314 value is checked at the loose tier and never fails the run
    row = manifest_row(id="r", kind="growth", input="sum 256314", expected="2.44874", tier="loose")
    res = evaluate(row)
    certified = growth(Permutation("256314")).approx
    ok = ok and res.status in (MATCH, ERRATUM) and abs(float(res.computed) - certified) < 1e-9
    flagged = res.status == ERRATUM or res.detail.get("beyond_strict", False)
    ok = ok and (abs(certified - 2.44874) > STRICT) == flagged
    report(2, f"growths strict; 256314 certified {certified:.5f}, printed row status {res.status}", ok)


def test_criterion_03_basis_chart():
    ok = sum_indec_profile(Permutation("25314")).head == (1, 1, 3, 3, 1)
    ok = ok and abs(growth(Permutation("25314")).approx - 2.29237) <= STRICT
    ok = ok and sum_indec_profile(Permutation("362514")).head == (1, 1, 3, 8, 6, 1)
    ok = ok and abs(growth(Permutation("362514")).approx - 2.52326) <= STRICT
    g = growth(Permutation("35142"))
    ok = ok and sum_indec_profile(Permutation("35142")).head == (1, 1, 3, 5, 1)
    ok = ok and abs(g.approx - 2.36691) <= STRICT
    row = manifest_row(id="r", kind="growth", input="sum 35142", expected="2.66917", tier="loose")
    status = evaluate(row).status
    ok = ok and status == ERRATUM
    report(3, f"35142 certifies to {g.approx:.5f}; the 2.66917 row is {status}", ok)


def test_criterion_04_extension_chart():
    rows = [
        ("526314", "sum", (1, 1, 3, 9, 6, 1), 2.54894),
        ("526314", "skew", (1, 1, 3, 4, 3, 1), 2.36772),
        ("426315", "sum", None, 2.48545),
        ("426315", "skew", None, 2.48545),
        ("246315", "sum", None, 2.41421),
        ("246315", "skew", None, 2.48545),
    ]
    ok = True
    for p, how, prof, value in rows:
        perm = Permutation(p)
        if prof is not None:
            got = sum_indec_profile(perm) if how == "sum" else skew_indec_profile(perm)
            ok = ok and got.head == prof
        ok = ok and abs(growth(perm, how).approx - value) <= STRICT
    report(4, "extension chart profiles and growths", ok)


def test_criterion_05_constants():
    xi = named_constant("xi")
    lam = named_constant("lambdaB")
    kappa = named_constant("kappa")
    ok = abs(xi.approx - 2.30522) <= STRICT
    ok = ok and lam.polynomial.degree == 8 and abs(lam.approx - 2.35698) <= STRICT
    ok = ok and abs(kappa.approx - 2.20557) <= STRICT
    # the printed kappa polynomial has no root near 2.20557
    rep = kappa_polynomial_report()
    ok = ok and all(abs(r - 2.20557) > LOOSE for r in rep["plus_one_positive_roots"])
    ok = ok and abs(rep["minus_one_form"]) < 1e-4
    s2 = named_constant("one_plus_sqrt2").refine(REFINED).approx
    phi = named_constant("one_plus_phi").refine(REFINED).approx
    ok = ok and abs(s2 - (1 + 2**0.5)) < 1e-9 and abs(phi - (1 + (1 + 5**0.5) / 2)) < 1e-9
    report(5, f"xi {xi.approx:.5f}, lambdaB {lam.approx:.5f}, kappa {kappa.approx:.5f}", ok)


def test_criterion_06_wqo_computation():
    g = profile_growth(parse_profile("1,1,3,3,1,1,1,1,1,1"))
    xi = named_constant("xi")
    ok = g.lo > Fraction("2.30528") and g.lo > xi.hi
    report(6, f"growth {g.approx:.6f} exceeds 2.30528 and xi", ok)


def test_criterion_07_claim_values():
    a = profile_growth(parse_profile("1,1,3,3,2,2,1"))
    b = profile_growth(parse_profile("1,1,2,4,4,2,1"))
    ok = a.lo > Fraction("2.32638") and b.lo > Fraction("2.30985")
    ok = ok and abs(a.approx - 2.32638) <= STRICT and abs(b.approx - 2.30985) <= STRICT
    report(7, f"claims certify to {a.approx:.6f} and {b.approx:.6f}", ok)


def test_criterion_08_xi_coincidences():
    a = profile_growth(parse_profile("1,1,2,3,4^inf")).refine(REFINED)
    b = profile_growth(parse_profile("1,1,2,4,3,3,2,1")).refine(REFINED)
    xi = named_constant("xi").refine(REFINED)
    ok = abs(a.approx - b.approx) < 1e-9 and abs(a.approx - xi.approx) < 1e-9 and abs(b.approx - xi.approx) < 1e-9
    report(8, f"both profiles give {a.approx:.12f} and {b.approx:.12f}", ok)


def test_criterion_09_conclusion_identity():
    f = profile_closure_gf(parse_profile("1,1,3 tail 4"))
    target = RationalGF(IntPolynomial([1, -1]), IntPolynomial([1, -2, 0, -2, -1]))
    g = profile_growth(parse_profile("1,1,3 tail 4")).refine(REFINED)
    ok = f == target and abs(g.approx - (1 + 2**0.5)) < 1e-9
    report(9, f"closure gf {f}, growth {g.approx:.12f}", ok)


def test_criterion_10_antichain_profiles():
    ok = True
    # patterns printed for the depicted members of each family
    printed = {
        ("t32", 12): (1, 1, 2, 3) + (5,) * 4 + (4, 3, 2, 1),
        ("t33", 13): (1, 1, 2, 3, 5) + (6,) * 3 + (5, 4, 3, 2, 1),
        ("t42", 13): (1, 1, 2, 3, 5) + (6,) * 3 + (5, 4, 3, 2, 1),
        ("t43", 14): (1, 1, 2, 3, 5) + (7,) * 3 + (6, 5, 4, 3, 2, 1),
    }
    for (fam, n), prof in printed.items():
        got = sum_indec_profile(antichain_member(fam, n, validate=False)).head
        ok = ok and got == prof
    for n in antichain_lengths("Uo", 15):
        k = (n - 7) // 2
        want = (1, 1, 2, 3) + (4,) * (2 * k) + (3, 2, 1)
        ok = ok and sum_indec_profile(antichain_member("Uo", n, validate=False)).head == want
    for n in antichain_lengths("Ue", 15):
        k = (n - 6) // 2
        want = (1, 1, 2) + (4,) * (2 * k) + (3, 2, 1)
        ok = ok and sum_indec_profile(antichain_member("Ue", n, validate=False)).head == want
    report(10, "antichain profiles match the printed patterns up to length 15", ok)


# ---------------------------------------------------------------------------
# property based


def test_criterion_11_erdos_szekeres():
    ok = all(max(longest_monotone(p)) >= 3 for p in permutations_of_length(5))
    report(11, "every permutation of length 5 has a monotone subsequence of length 3", ok)


def _segmentations(p, sigma):
    """All ways to cut ``p`` into intervals whose pattern is ``sigma``."""
    n, m = len(p), len(sigma)
    found = []
    for cuts in combinations(range(1, n), m - 1):
        bounds = (0,) + cuts + (n,)
        segs = [p[a:b] for a, b in zip(bounds, bounds[1:])]
        if any(max(s) - min(s) + 1 != len(s) for s in segs):
            continue
        if standardize([s[0] for s in segs]) == sigma:
            found.append(tuple(standardize(s) for s in segs))
    return found


def test_criterion_12_decomposition():
    ok = True
    checked = 0
    simples_upto6 = [s for n in range(4, 7) for s in permutations_of_length(n) if is_simple(s)]
    for n in range(1, 9):
        for p in permutations_of_length(n):
            t = decompose(p)
            ok = ok and t.perm() == p
            if t.kind != "leaf":
                ok = ok and inflate(t.root_skeleton(), t.blocks()) == p
            if t.kind != "simple":
                continue
            checked += 1
            ways = _segmentations(p, t.skeleton)
            ok = ok and ways == [tuple(t.blocks())]
            if n <= 6:
                # no other simple skeleton reproduces p either
                others = [s for s in simples_upto6 if len(s) <= n and s != t.skeleton]
                ok = ok and not any(_segmentations(p, s) for s in others)
        if not ok:
            break
    report(12, f"round trip for all lengths up to 8, uniqueness for {checked} simple-rooted permutations", ok)


def _in_special_copy(p, i):
    n = len(p)
    others = [j for j in range(n) if j != i]
    for rest in combinations(others, 3):
        idx = sorted(rest + (i,))
        if standardize([p[j] for j in idx]) in ((2, 4, 1, 3), (3, 1, 4, 2)):
            return True
    for rest in combinations(others, 4):
        idx = sorted(rest + (i,))
        pat = standardize([p[j] for j in idx])
        if pat in ((2, 5, 3, 1, 4), (4, 1, 3, 5, 2)) and pat[idx.index(i)] == 3:
            return True
    return False


def test_criterion_13_simple_permutation_theorems():
    ok = True
    count = 0
    for n in range(4, 9):
        for p in permutations_of_length(n):
            if not is_simple(p):
                continue
            count += 1
            ok = ok and all(_in_special_copy(p, i) for i in range(n))
            if n >= 5 and not is_parallel_alternation(p):
                for m in range(5, n):
                    ok = ok and any(is_simple(q) for q in patterns_of_length(p, m))
        if not ok:
            break
    report(13, f"entry cover and simple chain hold on {count} simple permutations", ok)


def test_criterion_14_gf_vs_brute_force():
    ok = True
    count = 0
    for n in range(1, 7):
        for p in permutations_of_length(n):
            series = profile_closure_gf(sum_indec_profile(p)).series(11)[1:]
            brute = sum_closure_counts(p, 10)
            ok = ok and series == brute
            count += 1
    report(14, f"series of 1/(1-g) equals constructed counts to length 10 for {count} permutations", ok)


def _reverify(g, m):
    n = len(g.perm)
    if g.columns[0] != 1 or g.columns[-1] != n + 1 or g.rows[0] != 1 or g.rows[-1] != n + 1:
        return False
    from permgrowth.classes import is_member

    return all(
        is_member(
            window_pattern(g.perm, (g.columns[i], g.columns[i + 1] - 1), (g.rows[j], g.rows[j + 1] - 1)),
            m[i, j],
        )
        for i in range(m.width)
        for j in range(m.height)
    )


def test_criterion_15_gridding():
    ok = True
    mats = [
        ClassMatrix.from_rows([["Av(21)", "Av(12)"], ["Av(12)", "Av(21)"]]),
        ClassMatrix.from_rows([["Av(231)", 0], [1, "Av(321)"]]),
    ]
    for m in mats:
        for n in range(0, 7):
            for p in permutations_of_length(n):
                ok = ok and all(_reverify(g, m) for g in all_griddings(p, m))
    fig_m = ClassMatrix.from_rows([["0", "SumClosure(Sub(21))", "Av(21)"], ["Sub(132)", "0", "Av(12)"]])
    g = find_gridding(Permutation((7, 11, 10, 3, 1, 6, 5, 2, 12, 9, 4, 8)), fig_m)
    ok = ok and g is not None and _reverify(g, fig_m)
    G = "Av(321)"
    rows_top_first = [
        [0, G, 0, 0, 0, G, 0],
        [0, 0, 0, G, 0, 0, G],
        [0, 0, 0, 0, 0, "Point", 0],
        [G, 0, "Av(12)", 0, 0, 0, 0],
        [0, G, 0, 0, 0, G, 0],
        [0, 0, "Av(21)", 0, G, 0, 0],
    ]
    comps = cell_graph(ClassMatrix.from_rows(rows_top_first[::-1])).components()
    ok = ok and len(comps) == 3
    for t in range(1, 4):
        for vec in product((0, 1, -1), repeat=t):
            letters = [i + 1 for i, v in enumerate(vec) if v]
            m = ClassMatrix.row_vector(vec)
            for n in range(0, 7):
                if n and not letters:
                    continue
                seen = set()
                for word in product(letters, repeat=n):
                    gr = vector_decode(word, vec)
                    ok = ok and gr.verify(m) and vector_encode(gr, vec) == word
                    seen.add(gridded_signature(gr))
                ok = ok and len(seen) == len(letters) ** n
    report(15, "griddings reverify, figure instance grids, 3 components, codec is a bijection", ok)


def _brute_words(alphabet, forbidden, n):
    def has(w, b):
        it = iter(w)
        return all(c in it for c in b)

    return sum(1 for w in product(alphabet, repeat=n) if not any(has(w, b) for b in forbidden))


def test_criterion_16_subword_integrality():
    rng = random.Random(16)
    ok = True
    for _ in range(50):
        alphabet = "abcd"[: rng.randint(1, 4)]
        forbidden = [
            "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(0, 3))
        ]
        res = subword_growth(alphabet, forbidden)
        ok = ok and abs(res.spectral_radius - res.growth) < 1e-6
        ok = ok and subword_count(alphabet, forbidden, 5) == [_brute_words(alphabet, forbidden, n) for n in range(6)]
    report(16, "50 random subword-closed languages have integral growth", ok)


def _cover_is_valid(p, cover, lines, q_max, r_max):
    def box(idx):
        return (min(i + 1 for i in idx), max(i + 1 for i in idx)), (min(p[i] for i in idx), max(p[i] for i in idx))

    def apart(a, b):
        return a[1] < b[0] or b[1] < a[0]

    rects = [box(g) for g in cover.groups]
    covered = sorted([i for g in cover.groups for i in g] + list(cover.remainder))
    if covered != list(range(len(p))) or len(rects) > q_max or len(cover.remainder) > r_max:
        return False
    if any(not (apart(a[0], b[0]) and apart(a[1], b[1])) for a, b in combinations(rects, 2)):
        return False
    for line in lines:
        for (xl, xh), (yl, yh) in rects:
            lo, hi = (xl, xh) if line.orientation == "vertical" else (yl, yh)
            if lo <= line.after < hi:
                return False
    return True


def test_criterion_17_concentration():
    ok = True
    for n in range(1, 15):
        ok = ok and is_concentrated(Permutation.identity(n), 2, 0)
        ok = ok and is_concentrated(Permutation.identity(n).reverse(), 2, 0)
    for n in range(1, 14):
        ok = ok and all(is_concentrated(p, 2, 2) for p in oscillation(n, "inc"))
    rng = random.Random(17)
    for n in range(4, 12):
        for p in sorted(oscillation(n, "inc")):
            for ell in (1, 2, 3):
                lines = rng.sample(all_lines(n), ell)
                cover = multi_line_cover(p, lines, 2, 2)
                ok = ok and _cover_is_valid(p, cover, lines, ell + 1, 2 * ell)
    w = inflated_oscillation_witness(2, 2, 14)
    ok = ok and w is not None and w["perm"] in inflated_oscillations(w["n"])
    ok = ok and cover_for_line(w["perm"], w["line"], 2, 2) is None
    where = "none" if w is None else f"{w['perm'].compact()} at length {w['n']}"
    report(17, f"monotone (2,0), oscillations (2,2), line bounds hold; witness {where}", ok)


def test_criterion_18_two_lines():
    ok = True
    for n in range(0, 8):
        for p in permutations_of_length(n):
            ok = ok and (two_increasing_merge(p) is not None) == (not contains((3, 2, 1), p))
    report(18, "merge of two increasing sequences iff 321-avoiding, lengths up to 7", ok)


def test_criterion_19_negative_control(tmp_path=None):
    import tempfile

    text = Path(load_manifest.__globals__["__file__"]).parent.joinpath("data", "paper_tables.manifest").read_text()
    corrupted = text.replace("expected: 2.29237\ntier: strict", "expected: 2.29337\ntier: strict", 1)
    assert corrupted != text
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "corrupted.manifest"
        path.write_text(corrupted)
        code = cli_main(["verify", "paper-tables", "--manifest", str(path), "--no-timestamp"], out=io.StringIO())
        clean = cli_main(["verify", "paper-tables", "--no-timestamp"], out=io.StringIO())
    report(19, f"corrupted manifest exits {code}, shipped manifest exits {clean}", code == 3 and clean == 0)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
