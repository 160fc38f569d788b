"""Concentration of permutations: rectangle covers that avoid axis-parallel lines.

Coordinates follow the plot of a permutation: entry ``i`` (0-based index) sits
at the point ``(i + 1, p[i])``.  A rectangle is stored as a pair of closed
integer intervals ``(x_lo, x_hi)`` and ``(y_lo, y_hi)``; in the half-integer grid
its corners are ``x_lo - 1/2`` and so on.  Lines sit at half-integers
``after + 1/2`` for ``0 <= after <= n`` so they never pass through an entry.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx

from .classes import CapExceeded, oscillation, skew_indec_profile, sum_indec_profile
from .gf import RootCertificate, profile_growth
from .grid import Gridding
from .perm import Permutation, as_perm, inflate, is_monotone, standardize

MAX_CONC_N = int(os.environ.get("PERMGROWTH_MAX_N", "14"))
MAX_Q = int(os.environ.get("PERMGROWTH_MAX_Q", "5"))
MAX_R = int(os.environ.get("PERMGROWTH_MAX_R", "6"))


class ConcentrationError(AssertionError):
    """A cover that must exist by the many-lines refinement could not be built."""


class Undecidable(ValueError):
    pass


@dataclass(frozen=True)
class GridLine:
    orientation: str  # "vertical" or "horizontal"
    after: int  # the line sits at after + 1/2

    def __post_init__(self):
        if self.orientation not in ("vertical", "horizontal"):
            raise ValueError("orientation must be 'vertical' or 'horizontal'")
        if self.after < 0:
            raise ValueError("line position must be nonnegative")

    @property
    def position(self) -> Fraction:
        return Fraction(2 * self.after + 1, 2)

    def crosses(self, rect) -> bool:
        """Whether the line passes through the interior of ``rect``."""
        (xl, xh), (yl, yh) = rect
        lo, hi = (xl, xh) if self.orientation == "vertical" else (yl, yh)
        return lo <= self.after < hi

    def to_dict(self) -> dict:
        return {"orientation": self.orientation, "position": str(self.position)}


def all_lines(n: int) -> list:
    return [GridLine(o, k) for o in ("vertical", "horizontal") for k in range(n + 1)]


def parse_line(text: str) -> GridLine:
    """Parse ``v3`` / ``h0`` (line after position or value 3, resp. 0)."""
    text = text.strip().lower()
    if not text or text[0] not in "vh" or not text[1:].isdigit():
        raise ValueError(f"cannot parse line {text!r}; use e.g. v3 or h2")
    return GridLine("vertical" if text[0] == "v" else "horizontal", int(text[1:]))


def independent(r1, r2) -> bool:
    """Both axis projections are disjoint."""
    (a1, b1), (c1, d1) = r1
    (a2, b2), (c2, d2) = r2
    return (b1 < a2 or b2 < a1) and (d1 < c2 or d2 < c1)


def bounding_box(p, indices: Iterable[int]):
    idx = list(indices)
    vals = [p[i] for i in idx]
    return (min(idx) + 1, max(idx) + 1), (min(vals), max(vals))


@dataclass
class RectCover:
    rectangles: list  # of ((x_lo, x_hi), (y_lo, y_hi))
    groups: list  # 0-based entry indices covered by each rectangle
    remainder: list
    sliced_lines: list = field(default_factory=list)

    def verify(self, p) -> bool:
        n = len(p)
        covered = sorted([i for g in self.groups for i in g] + list(self.remainder))
        if covered != list(range(n)):
            return False
        for rect, g in zip(self.rectangles, self.groups):
            (xl, xh), (yl, yh) = rect
            if not all(xl <= i + 1 <= xh and yl <= p[i] <= yh for i in g):
                return False
            if any(line.crosses(rect) for line in self.sliced_lines):
                return False
        return all(independent(a, b) for a, b in combinations(self.rectangles, 2))

    def to_dict(self) -> dict:
        half = Fraction(1, 2)
        return {
            "rectangles": [
                {
                    "x": [str(xl - half), str(xh + half)],
                    "y": [str(yl - half), str(yh + half)],
                    "entries": [i + 1 for i in g],
                }
                for ((xl, xh), (yl, yh)), g in zip(self.rectangles, self.groups)
            ],
            "remainder": [i + 1 for i in self.remainder],
            "sliced_lines": [line.to_dict() for line in self.sliced_lines],
        }


def render(p, cover: RectCover) -> str:
    """ASCII plot with each rectangle's entries drawn by its letter and remainder entries as ``*``."""
    n = len(p)
    mark = {}
    for k, g in enumerate(cover.groups):
        for i in g:
            mark[i] = chr(ord("A") + k)
    for i in cover.remainder:
        mark[i] = "*"
    rows = []
    for v in range(n, 0, -1):
        rows.append(" ".join(mark[i] if p[i] == v else "." for i in range(n)))
    return "\n".join(rows)


def _check_caps(p, q, r):
    if len(p) > MAX_CONC_N:
        raise CapExceeded(f"concentration search is limited to length {MAX_CONC_N}")
    if q < 1 or r < 0:
        raise ValueError("need q >= 1 and r >= 0")
    if q + r >= len(p):
        return  # decided by the trivial cover, see _cover
    if q > MAX_Q or r > MAX_R:
        raise CapExceeded(f"q <= {MAX_Q} and r <= {MAX_R}")


def _search(p: tuple, lines: Sequence[GridLine], q: int, r: int) -> Optional[tuple]:
    """Assign entries in index order to groups or to the remainder.

    Each group's bounding box must avoid every line and stay independent of
    the other groups.  Returns ``(groups, remainder)`` or ``None``.
    """
    n = len(p)
    boxes: list = []
    groups: list = []
    rem: list = []

    def ok(box, skip):
        if any(line.crosses(box) for line in lines):
            return False
        return all(independent(box, b) for k, b in enumerate(boxes) if k != skip)

    def go(i):
        if i == n:
            return True
        x, y = i + 1, p[i]
        # join the most recent group; earlier groups lie strictly to the left of
        # it, so growing one of them would overlap its x-projection
        if boxes:
            (xl, xh), (yl, yh) = boxes[-1]
            box = ((xl, x), (min(yl, y), max(yh, y)))
            if ok(box, len(boxes) - 1):
                old = boxes[-1]
                boxes[-1] = box
                groups[-1].append(i)
                if go(i + 1):
                    return True
                groups[-1].pop()
                boxes[-1] = old
        if len(boxes) < q:
            box = ((x, x), (y, y))
            if ok(box, None):
                boxes.append(box)
                groups.append([i])
                if go(i + 1):
                    return True
                groups.pop()
                boxes.pop()
        if len(rem) < r:
            rem.append(i)
            if go(i + 1):
                return True
            rem.pop()
        return False

    if go(0):
        return [list(g) for g in groups], list(rem)
    return None


def _cover(p: tuple, lines: Sequence[GridLine], q: int, r: int) -> Optional[RectCover]:
    if q + r >= len(p):
        # single entries are independent and never meet a half-integer line
        k = min(q, len(p))
        found = [[i] for i in range(k)], list(range(k, len(p)))
    else:
        found = _search(p, lines, q, r)
    if found is None:
        return None
    groups, rem = found
    rects = [bounding_box(p, g) for g in groups]
    return RectCover(rects, groups, rem, list(lines))


def cover_for_line(p, line: GridLine, q: int, r: int) -> Optional[RectCover]:
    """At most ``q`` independent rectangles avoiding ``line`` covering all but at most ``r`` entries."""
    p = as_perm(p)
    _check_caps(p, q, r)
    if line.after > len(p):
        raise ValueError("line lies outside the plot")
    return _cover(tuple(p), [line], q, r)


def concentration_witness(p, q: int, r: int) -> Optional[GridLine]:
    """The first line for which no ``(q, r)`` cover exists, or ``None``."""
    p = as_perm(p)
    _check_caps(p, q, r)
    for line in all_lines(len(p)):
        if _cover(tuple(p), [line], q, r) is None:
            return line
    return None


def is_concentrated(p, q: int, r: int) -> bool:
    """Whether ``p`` admits a ``(q, r)`` cover for each of its ``2(n+1)`` lines."""
    return concentration_witness(p, q, r) is None


def multi_line_cover(p, lines: Iterable[GridLine], q: int, r: int) -> RectCover:
    """Cover avoiding all ``lines`` with at most ``(q-1)l + 1`` rectangles and ``r*l`` remainder.

    Built line by line: the single rectangle that a new line cuts is replaced
    by a ``(q, r)`` cover of the entries it holds.  Every pattern of a
    ``(q, r)``-concentrated permutation class admits such a cover, so a failure
    means ``p`` does not lie in one, and is raised.
    """
    p = as_perm(p)
    _check_caps(p, q, r)
    lines = list(dict.fromkeys(lines))
    n = len(p)
    groups = [list(range(n))] if n else []
    rem: list = []
    used: list = []
    for line in lines:
        used.append(line)
        hit = [k for k, g in enumerate(groups) if line.crosses(bounding_box(p, g))]
        if len(hit) > 1:
            raise ConcentrationError("independent rectangles cannot share a line")
        if not hit:
            continue
        k = hit[0]
        g = groups[k]
        sub = standardize([p[i] for i in g])
        if line.orientation == "vertical":
            local = GridLine("vertical", sum(1 for i in g if i + 1 <= line.after))
        else:
            local = GridLine("horizontal", sum(1 for i in g if p[i] <= line.after))
        found = _search(tuple(sub), [local], q, r)
        if found is None:
            raise ConcentrationError(f"pattern {sub.compact()} has no ({q},{r}) cover for its line")
        sub_groups, sub_rem = found
        groups[k : k + 1] = [[g[j] for j in sg] for sg in sub_groups]
        rem.extend(g[j] for j in sub_rem)
    rects = [bounding_box(p, g) for g in groups]
    cover = RectCover(rects, groups, sorted(rem), used)
    ell = len(lines)
    if len(rects) > (q - 1) * ell + 1 or len(rem) > r * ell or not cover.verify(p):
        raise ConcentrationError("many-lines bounds violated")
    return cover


# ---------------------------------------------------------------------------
# special rectangles in gridded permutations

SPECIAL_KINDS = ("separated_nonmonotone", "hook_separated")


def _cell_spans(divs: Sequence[int]) -> list:
    return [(k, a, b - 1) for k, (a, b) in enumerate(zip(divs, divs[1:])) if a < b]


def special_rectangles(g: Gridding, kind: str) -> list:
    """Inclusion-minimal integer rectangles of the requested kind.

    Any rectangle of either kind can be shrunk to a minimal one without losing
    independence, so maximum independent sets may be taken among these.
    """
    if kind not in SPECIAL_KINDS:
        raise ValueError(f"kind must be one of {SPECIAL_KINDS}")
    p = g.perm
    n = len(p)
    if n > MAX_CONC_N:
        raise CapExceeded(f"special rectangle search is limited to length {MAX_CONC_N}")
    cell = [g.cell_of_entry(i) for i in range(n)]
    found = []
    for ci, cx0, cx1 in _cell_spans(g.columns):
        for cj, cy0, cy1 in _cell_spans(g.rows):
            others = [i for i in range(n) if cell[i] != (ci, cj)]
            for xl, xh in combinations(range(cx0, cx1 + 2), 2):
                xh -= 1
                for yl, yh in combinations(range(cy0, cy1 + 2), 2):
                    yh -= 1
                    inside = [i for i in range(xl - 1, xh) if yl <= p[i] <= yh]
                    horiz = any(yl <= p[i] <= yh for i in others)
                    vert = any(xl <= i + 1 <= xh for i in others)
                    if kind == "separated_nonmonotone":
                        valid = not is_monotone([p[i] for i in inside]) and (horiz or vert)
                    else:
                        valid = bool(inside) and horiz and vert
                    if valid:
                        found.append(((xl, xh), (yl, yh)))
    boxes = set(found)

    def strictly_inside(a, b):
        (a1, a2), (a3, a4) = a
        (b1, b2), (b3, b4) = b
        return a != b and b1 <= a1 and a2 <= b2 and b3 <= a3 and a4 <= b4

    return sorted(b for b in boxes if not any(strictly_inside(o, b) for o in boxes))


def max_independent_special_rectangles(g: Gridding, kind: str) -> int:
    """Largest pairwise-independent family of rectangles of the given kind."""
    rects = special_rectangles(g, kind)
    if not rects:
        return 0
    graph = nx.Graph()
    graph.add_nodes_from(range(len(rects)))
    graph.add_edges_from(
        (a, b) for a, b in combinations(range(len(rects)), 2) if independent(rects[a], rects[b])
    )
    clique, weight = nx.max_weight_clique(graph, weight=None)
    return weight


# ---------------------------------------------------------------------------
# membership in the cell classes G_gamma


def _as_bound(gamma):
    if isinstance(gamma, RootCertificate):
        return gamma
    if isinstance(gamma, float):
        return Fraction(gamma)
    if isinstance(gamma, str):
        return Fraction(gamma.strip())
    return Fraction(gamma)


def _strictly_below(cert: RootCertificate, gamma, floor=Fraction(1, 10**12)) -> bool:
    """Decide ``value(cert) < gamma`` by refining intervals; raise if still undecided."""
    a = cert
    b = gamma
    tol = Fraction(1, 10**6)
    while True:
        a_lo, a_hi = a.lo, a.hi
        b_lo, b_hi = (b.lo, b.hi) if isinstance(b, RootCertificate) else (b, b)
        if a_hi < b_lo:
            return True
        if a_lo >= b_hi:
            return False
        if tol < floor:
            raise Undecidable(f"growth {a.approx:.15g} and bound {float(b_hi):.15g} agree to 1e-12")
        tol /= 1000
        a = a.refine(tol)
        if isinstance(b, RootCertificate):
            b = b.refine(tol)


def closure_growths(p) -> tuple:
    """Certified growth rates of the sum and skew closures of the downset of ``p``."""
    p = as_perm(p)
    return (
        profile_growth(sum_indec_profile(p)),
        profile_growth(skew_indec_profile(p)),
    )


def gamma_membership(p, gamma) -> bool:
    """Whether ``p`` lies in ``G_gamma``: one of its closures grows strictly slower than ``gamma``."""
    p = as_perm(p)
    if len(p) > MAX_CONC_N:
        raise CapExceeded(f"membership is limited to length {MAX_CONC_N}")
    bound = _as_bound(gamma)
    return any(_strictly_below(c, bound) for c in closure_growths(p))


# ---------------------------------------------------------------------------
# oscillations inflated by increasing permutations


def _compositions(total: int, parts: int):
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def inflated_oscillations(n: int) -> list:
    """Members of length ``n`` obtained by inflating an increasing oscillation with identities."""
    out = set()
    for m in range(1, n + 1):
        base = oscillation(m, "inc", exhaustive=False)
        for sigma in base:
            for sizes in _compositions(n, m):
                out.add(inflate(sigma, [Permutation.identity(k) for k in sizes]))
    return sorted(out)


def inflated_oscillation_witness(q: int = 2, r: int = 2, max_n: int = 14) -> Optional[dict]:
    """Least length at which an inflated increasing oscillation fails ``(q, r)``-concentration."""
    for n in range(1, max_n + 1):
        for p in inflated_oscillations(n):
            line = concentration_witness(p, q, r)
            if line is not None:
                return {"n": n, "perm": p, "line": line}
    return None
