"""Structural detectors: monotone subsequences, alternations, depth and two-line drawings.

Orientation names used for alternations:

* horizontal alternations (a vertical line splits the entries into a left and a
  right part whose values interleave): ``"//"`` both increasing, ``"\\\\"`` both
  decreasing, ``"^"`` left increasing and right decreasing, ``"v"`` left
  decreasing and right increasing;
* vertical alternations (a horizontal line splits them into a bottom and a top
  part whose positions interleave): ``"v//"`` both increasing, ``"v\\\\"`` both
  decreasing, ``">"`` bottom increasing and top decreasing, ``"<"`` bottom
  decreasing and top increasing.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .perm import (
    Permutation,
    as_perm,
    contains,
    decompose,
    direct_sum,
    inflate,
    is_simple,
    permutations_of_length,
    skew_sum,
    substitution_depth,
)

PARALLEL_ORIENTATIONS = ("//", "\\\\", "v//", "v\\\\")
WEDGE_ORIENTATIONS = ("^", ">", "v", "<")

# (vertical?, first part increasing?, second part increasing?)
_ORIENT = {
    "//": (False, True, True),
    "\\\\": (False, False, False),
    "^": (False, True, False),
    "v": (False, False, True),
    "v//": (True, True, True),
    "v\\\\": (True, False, False),
    ">": (True, True, False),
    "<": (True, False, True),
}

_ALIASES = {"∧": "^", "/\\": "^", "∨": "v", "\\/": "v", "\\": "\\\\"}

MAX_ALTERNATION_N = 14


@dataclass(frozen=True)
class AlternationReport:
    kind: str
    orientation: str
    length: int
    witness: tuple  # 0-based indices into the permutation, increasing

    @property
    def degenerate(self) -> bool:
        """Fewer than three entries qualify vacuously."""
        return self.length < 3

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "orientation": self.orientation,
            "length": self.length,
            "witness": [i + 1 for i in self.witness],
            "degenerate": self.degenerate,
        }


def longest_monotone(p) -> tuple:
    """Lengths of the longest increasing and longest decreasing subsequences."""

    def lis(seq):
        tails = []
        for v in seq:
            i = bisect_left(tails, v)
            if i == len(tails):
                tails.append(v)
            else:
                tails[i] = v
        return len(tails)

    p = tuple(p)
    return lis(p), lis([-v for v in p])


def _best_horizontal(word: tuple, left_inc: bool, right_inc: bool):
    """Longest horizontal alternation with the given part directions.

    For each vertical split the entries are chained in increasing value order,
    alternating between the two sides; each side must stay monotone.
    """
    n = len(word)
    best_len, best_wit = 0, ()
    for t in range(n + 1):
        side = [0 if i < t else 1 for i in range(n)]
        inc = (left_inc, right_inc)

        @lru_cache(maxsize=None)
        def extend(last_l: int, last_r: int, turn: int):
            # turn is the side of the next element; returns (count, chain)
            # the most recent chain element sits on the other side from ``turn``
            cur = last_l if turn == 1 else last_r
            floor = word[cur] if cur >= 0 else 0
            prev_same = last_l if turn == 0 else last_r
            best = (0, ())
            for j in range(n):
                if side[j] != turn or word[j] <= floor:
                    continue
                if prev_same >= 0:
                    if inc[turn] and j < prev_same:
                        continue
                    if not inc[turn] and j > prev_same:
                        continue
                nl, nr = (j, last_r) if turn == 0 else (last_l, j)
                cnt, chain = extend(nl, nr, 1 - turn)
                if cnt + 1 > best[0]:
                    best = (cnt + 1, (j,) + chain)
            return best

        for j in range(n):
            if side[j] == 0:
                cnt, chain = extend(j, -1, 1)
            else:
                cnt, chain = extend(-1, j, 0)
            if cnt + 1 > best_len:
                best_len, best_wit = cnt + 1, tuple(sorted((j,) + chain))
        extend.cache_clear()
    return best_len, best_wit


def longest_alternation(p, kind: str, orientation: str) -> AlternationReport:
    """A longest alternation of the requested kind and orientation contained in ``p``."""
    p = as_perm(p)
    orientation = _ALIASES.get(orientation, orientation)
    if orientation not in _ORIENT:
        raise ValueError(f"unknown orientation {orientation!r}")
    allowed = PARALLEL_ORIENTATIONS if kind == "parallel" else WEDGE_ORIENTATIONS if kind == "wedge" else None
    if allowed is None:
        raise ValueError("kind must be 'parallel' or 'wedge'")
    if orientation not in allowed:
        raise ValueError(f"orientation {orientation!r} is not a {kind} orientation")
    if len(p) > MAX_ALTERNATION_N:
        raise ValueError(f"alternation search is limited to length {MAX_ALTERNATION_N}")
    vertical, first_inc, second_inc = _ORIENT[orientation]
    if not vertical:
        length, wit = _best_horizontal(tuple(p), first_inc, second_inc)
        return AlternationReport(kind, orientation, length, wit)
    # vertical alternations of p are horizontal alternations of its inverse
    inv = p.inverse()
    length, wit = _best_horizontal(tuple(inv), first_inc, second_inc)
    witness = tuple(sorted(inv[j] - 1 for j in wit))
    return AlternationReport(kind, orientation, length, witness)


def is_alternation_witness(p, report: AlternationReport) -> bool:
    """Independent check of a witness against the separation definition."""
    p = tuple(p)
    vertical, first_inc, second_inc = _ORIENT[report.orientation]
    pts = [(i, p[i]) for i in report.witness]
    if len(pts) != report.length:
        return False
    if len(pts) <= 1:
        return True
    if vertical:
        pts = [(v, i) for i, v in pts]
    pts.sort()
    for cut in range(len(pts) + 1):
        first, second = pts[:cut], pts[cut:]

        def monotone(part, inc):
            vals = [v for _, v in part]
            return all((a < b) == inc for a, b in zip(vals, vals[1:]))

        if not (monotone(first, first_inc) and monotone(second, second_inc)):
            continue
        ids = {pt: 0 for pt in first}
        ids.update({pt: 1 for pt in second})
        by_value = sorted(pts, key=lambda q: q[1])
        labels = [ids[q] for q in by_value]
        if all(a != b for a, b in zip(labels, labels[1:])):
            return True
    return False


def has_wedge_alternation(p, k: int) -> bool:
    """Whether ``p`` contains a wedge alternation of length at least ``k`` in any orientation."""
    if k <= 2:
        return len(p) >= k
    return any(longest_alternation(p, "wedge", o).length >= k for o in WEDGE_ORIENTATIONS)


# ---------------------------------------------------------------------------
# alternation families used by the counting claims


def _two_monotone_runs(n: int, second_increasing: bool) -> set:
    # choose the value set of the left (increasing) run; the rest forms the right run
    from itertools import combinations

    out = set()
    for t in range(n + 1):
        for left in combinations(range(1, n + 1), t):
            chosen = set(left)
            right = sorted((v for v in range(1, n + 1) if v not in chosen), reverse=not second_increasing)
            out.add(Permutation._raw(list(left) + right))
    return out


def wedge_alternations_up(n: int) -> set:
    """Permutations of length ``n`` whose plot splits by a vertical line into an increasing then a decreasing sequence."""
    return _two_monotone_runs(n, second_increasing=False)


def parallel_alternations_up(n: int) -> set:
    """Permutations of length ``n`` made of two increasing sequences separated by a vertical line."""
    return _two_monotone_runs(n, second_increasing=True)


def is_parallel_alternation(p) -> bool:
    """Whether all of ``p`` is a parallel alternation of some orientation."""
    p = as_perm(p)
    if len(p) <= 2:
        return True
    return any(longest_alternation(p, "parallel", o).length == len(p) for o in PARALLEL_ORIENTATIONS)


def wedge_alternation(n: int, orientation: str = ">") -> Permutation:
    """The wedge alternation of length ``n`` with the given orientation, e.g. ``1,n,2,n-1,...`` for ``>``."""
    lo, hi = 1, n
    word = []
    for i in range(n):
        if i % 2 == 0:
            word.append(lo)
            lo += 1
        else:
            word.append(hi)
            hi -= 1
    p = Permutation(word)
    orientation = _ALIASES.get(orientation, orientation)
    if orientation == ">":
        return p
    if orientation == "<":
        return p.reverse()
    if orientation == "^":
        return p.inverse()
    if orientation == "v":
        return p.inverse().complement()
    raise ValueError(f"{orientation!r} is not a wedge orientation")


# ---------------------------------------------------------------------------
# substitution depth


def depth_corpus(max_len: int = 8) -> Iterable:
    """All permutations up to ``max_len`` followed by constructed deep examples."""
    for n in range(1, max_len + 1):
        yield from permutations_of_length(n)
    yield from deep_examples()


def deep_examples(max_depth: int = 20) -> list:
    """Alternating sum/skew chains, nested simple inflations and wedge alternations."""
    one = Permutation((1,))
    out = []
    p = one
    for d in range(1, max_depth + 1):
        p = direct_sum(one, p) if d % 2 else skew_sum(one, p)
        out.append(p)
    q = one
    for _ in range(4):
        q = inflate(Permutation((2, 4, 1, 3)), [q, one, one, one])
        out.append(q)
    for n in range(3, 25):
        out.append(wedge_alternation(n, ">"))
    return out


def depth_wedge_bound_check(n: int, max_len: int = 8) -> bool:
    """Every corpus member of depth at least ``8n`` contains a wedge alternation of length ``n``."""
    for p in depth_corpus(max_len):
        if substitution_depth(p) >= 8 * n and not has_wedge_alternation(p, n):
            return False
    return True


# ---------------------------------------------------------------------------
# two increasing lines


def two_increasing_merge(p) -> Optional[tuple]:
    """Split ``p`` into two increasing subsequences if possible (index tuples), else ``None``."""
    top_a = top_b = 0
    a, b = [], []
    for i, v in enumerate(p):
        # greedy: put v after the larger top it exceeds, keeping the smaller top free
        if top_a < v and top_b < v:
            if top_a >= top_b:
                a.append(i)
                top_a = v
            else:
                b.append(i)
                top_b = v
        elif top_a < v:
            a.append(i)
            top_a = v
        elif top_b < v:
            b.append(i)
            top_b = v
        else:
            return None
    return tuple(a), tuple(b)


def two_lines_drawable(p) -> bool:
    """Whether ``p`` can be drawn on two parallel lines of positive slope.

    Computed as a merge of two increasing sequences and cross-checked against
    avoidance of 321; a disagreement raises.
    """
    merge = two_increasing_merge(p) is not None
    avoid = not contains((3, 2, 1), p)
    if merge != avoid:
        raise AssertionError(f"two-line characterisations disagree on {p}")
    return merge


def simple_permutations(n: int) -> list:
    return [p for p in permutations_of_length(n) if is_simple(p)]
