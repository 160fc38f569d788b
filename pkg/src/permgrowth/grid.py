"""Grid classes: matrices of classes, griddings, cell graphs and vector encodings.

Matrices are indexed in Cartesian coordinates: ``M[i][j]`` is the cell in
column ``i`` from the left and row ``j`` from the bottom (both 0-based here).
A gridding stores 1-based column divisions ``c_1 = 1 <= ... <= c_{t+1} = n+1``
and row divisions likewise; cell ``(i, j)`` holds the entries with index in
``[c_i, c_{i+1})`` and value in ``[r_j, r_{j+1})``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from .classes import (
    CapExceeded,
    ClassSpec,
    DECREASING,
    EMPTY,
    INCREASING,
    format_spec,
    is_member,
    members,
    parse_spec,
)
from .perm import (
    Permutation,
    as_perm,
    direct_sum,
    one_point_deletions,
    permutations_of_length,
    skew_sum,
    standardize,
)

MAX_GRID_N = 14
MAX_DIVISION_TUPLES = 10**7


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ClassMatrix:
    """A ``width x height`` matrix of class specifications, ``cells[i][j]`` = column i, row j."""

    cells: tuple

    @property
    def width(self) -> int:
        return len(self.cells)

    @property
    def height(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.cells[i][j]

    def is_empty_cell(self, i: int, j: int) -> bool:
        c = self.cells[i][j]
        return c.kind == "named" and c.tag == "empty"

    def nonempty_cells(self) -> list:
        return [(i, j) for i in range(self.width) for j in range(self.height) if not self.is_empty_cell(i, j)]

    @classmethod
    def from_rows(cls, rows_bottom_first: Sequence[Sequence]) -> "ClassMatrix":
        """Build from a list of rows, bottom row first, each listing columns left to right."""
        rows = [[_cell_spec(c) for c in row] for row in rows_bottom_first]
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("all rows must have the same length")
        return cls(tuple(tuple(rows[j][i] for j in range(len(rows))) for i in range(width)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "ClassMatrix":
        return cls(tuple(tuple(_cell_spec(c) for c in col) for col in columns))

    @classmethod
    def row_vector(cls, entries: Sequence) -> "ClassMatrix":
        return cls.from_rows([list(entries)])

    def to_json(self) -> str:
        rows = [[format_spec(self.cells[i][j]) for i in range(self.width)] for j in range(self.height)]
        return json.dumps({"width": self.width, "height": self.height, "cells": rows})

    def submatrix(self, keep: Iterable) -> "ClassMatrix":
        """Same shape with every cell outside ``keep`` replaced by the empty class."""
        keep = set(keep)
        return ClassMatrix(
            tuple(
                tuple(self.cells[i][j] if (i, j) in keep else EMPTY for j in range(self.height))
                for i in range(self.width)
            )
        )


def _cell_spec(c) -> ClassSpec:
    if isinstance(c, ClassSpec):
        return c
    if isinstance(c, (int, float)) and not isinstance(c, bool):
        return {0: EMPTY, 1: INCREASING, -1: DECREASING}[int(c)]
    return parse_spec(str(c))


def load_matrix(text: str) -> ClassMatrix:
    """Read the JSON matrix format ``{"width": t, "height": u, "cells": [[...], ...]}``."""
    data = json.loads(text)
    m = ClassMatrix.from_rows(data["cells"])
    if m.width != data.get("width", m.width) or m.height != data.get("height", m.height):
        raise ValueError("declared width/height do not match the cells")
    return m


# ---------------------------------------------------------------------------
# griddings


@dataclass(frozen=True)
class Gridding:
    perm: Permutation
    columns: tuple  # c_1 .. c_{t+1}
    rows: tuple  # r_1 .. r_{u+1}

    def cell_pattern(self, i: int, j: int) -> Permutation:
        a, b = self.columns[i], self.columns[i + 1]
        c, d = self.rows[j], self.rows[j + 1]
        return standardize([v for v in self.perm[a - 1 : b - 1] if c <= v < d])

    def cell_of_entry(self, index: int) -> tuple:
        """Cell ``(i, j)`` of the entry at 0-based ``index``."""
        pos, val = index + 1, self.perm[index]
        i = max(k for k in range(len(self.columns) - 1) if self.columns[k] <= pos < self.columns[k + 1])
        j = max(k for k in range(len(self.rows) - 1) if self.rows[k] <= val < self.rows[k + 1])
        return i, j

    def verify(self, m: ClassMatrix) -> bool:
        n = len(self.perm)
        for divs, size in ((self.columns, m.width), (self.rows, m.height)):
            if len(divs) != size + 1 or divs[0] != 1 or divs[-1] != n + 1:
                return False
            if any(a > b for a, b in zip(divs, divs[1:])):
                return False
        return all(
            is_member(self.cell_pattern(i, j), m[i, j]) for i in range(m.width) for j in range(m.height)
        )

    def to_dict(self) -> dict:
        return {"perm": list(self.perm), "columns": list(self.columns), "rows": list(self.rows)}


def _division_tuples(n: int, parts: int):
    for inner in combinations_with_replacement(range(1, n + 2), parts - 1):
        yield (1,) + inner + (n + 1,)


def _griddings(p: Permutation, m: ClassMatrix):
    n, t, u = len(p), m.width, m.height
    cache = {}

    for cols in _division_tuples(n, t):
        rows = [1]

        def rec(j):
            if j == u:
                yield tuple(rows)
                return
            lo = rows[-1]
            choices = [n + 1] if j == u - 1 else range(lo, n + 2)
            for r in choices:
                good = True
                for i in range(t):
                    a, b = cols[i], cols[i + 1]
                    key = (i, a, b, lo, r, j)
                    if key not in cache:
                        pat = standardize([v for v in p[a - 1 : b - 1] if lo <= v < r])
                        cache[key] = is_member(pat, m.cells[i][j])
                    if not cache[key]:
                        good = False
                        break
                if good:
                    rows.append(r)
                    yield from rec(j + 1)
                    rows.pop()

        for rows_t in rec(0):
            yield Gridding(p, cols, rows_t)


def _check_size(p, m):
    if len(p) > MAX_GRID_N:
        raise CapExceeded(f"gridding search is limited to length {MAX_GRID_N}")
    if gridding_bound(len(p), m.width, m.height) > MAX_DIVISION_TUPLES:
        raise CapExceeded(f"more than {MAX_DIVISION_TUPLES} division tuples to search")


def find_gridding(p, m: ClassMatrix) -> Optional[Gridding]:
    """First valid gridding in lexicographic division order, or ``None``."""
    p = as_perm(p)
    _check_size(p, m)
    for g in _griddings(p, m):
        return g
    return None


def all_griddings(p, m: ClassMatrix) -> list:
    p = as_perm(p)
    _check_size(p, m)
    return list(_griddings(p, m))


def count_griddings(p, m: ClassMatrix) -> int:
    """Number of valid division tuples (weak divisions, empty blocks allowed)."""
    return len(all_griddings(p, m))


def gridding_bound(n: int, t: int, u: int) -> int:
    """Number of weak division tuples: ``C(n+t-1, t-1) * C(n+u-1, u-1)``."""
    return comb(n + t - 1, t - 1) * comb(n + u - 1, u - 1)


def in_grid_class(p, m: ClassMatrix) -> bool:
    return find_gridding(p, m) is not None


# ---------------------------------------------------------------------------
# cell graphs


@dataclass(frozen=True)
class CellGraph:
    vertices: tuple
    edges: frozenset
    labels: dict

    def components(self) -> list:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = set(), [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.add(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return comps


def cell_graph(m: ClassMatrix) -> CellGraph:
    """Nonempty cells, adjacent when they share a row or column with no nonempty cell between."""
    cells = m.nonempty_cells()
    edges = set()
    for j in range(m.height):
        row = sorted(i for i, jj in cells if jj == j)
        edges |= {((a, j), (b, j)) for a, b in zip(row, row[1:])}
    for i in range(m.width):
        col = sorted(j for ii, j in cells if ii == i)
        edges |= {((i, a), (i, b)) for a, b in zip(col, col[1:])}
    labels = {c: format_spec(m[c]) for c in cells}
    return CellGraph(tuple(sorted(cells)), frozenset(edges), labels)


def components(m: ClassMatrix) -> list:
    """Connected components as submatrices (other cells emptied)."""
    return [m.submatrix(comp) for comp in cell_graph(m).components()]


def restrict(g: Gridding, cells: Iterable) -> tuple:
    """Restriction of a gridded permutation to a set of cells: (pattern, entry cells)."""
    cells = set(cells)
    keep = [k for k in range(len(g.perm)) if g.cell_of_entry(k) in cells]
    return standardize([g.perm[k] for k in keep]), tuple(g.cell_of_entry(k) for k in keep)


def gridded_signature(g: Gridding) -> tuple:
    """The gridded permutation as the pattern plus the cell of every entry."""
    return tuple(g.perm), tuple(g.cell_of_entry(k) for k in range(len(g.perm)))


def gridded_count(spec_members: Iterable, m: ClassMatrix) -> int:
    """Number of distinct gridded permutations over a collection of permutations."""
    seen = set()
    for p in spec_members:
        for g in all_griddings(p, m):
            seen.add(gridded_signature(g))
    return len(seen)


# ---------------------------------------------------------------------------
# monotone vectors and their word encoding


def vector_decode(word: Sequence[int], vector: Sequence[int]) -> Gridding:
    """Decode a word over the cells ``1..t`` of a 0/±1 row vector.

    Letter ``i`` of the word is the cell of the entry with value ``i``.  Within a
    cell the entries are increasing or decreasing according to the vector.
    """
    t = len(vector)
    word = [int(c) for c in word]
    for c in word:
        if not 1 <= c <= t:
            raise ValueError(f"letter {c} is not a cell of a width-{t} vector")
        if vector[c - 1] == 0:
            raise ValueError(f"letter {c} names an empty cell")
    out, cols = [], [1]
    for cell in range(1, t + 1):
        vals = [i + 1 for i, c in enumerate(word) if c == cell]
        if vector[cell - 1] == -1:
            vals.reverse()
        out.extend(vals)
        cols.append(len(out) + 1)
    n = len(word)
    return Gridding(Permutation(out), tuple(cols), (1, n + 1))


def vector_encode(g: Gridding, vector: Sequence[int]) -> tuple:
    """Inverse of :func:`vector_decode` on validly gridded permutations."""
    m = ClassMatrix.row_vector(vector)
    if not g.verify(m):
        raise ValueError("the gridding is not valid for this vector")
    word = [0] * len(g.perm)
    for k, v in enumerate(g.perm):
        word[v - 1] = g.cell_of_entry(k)[0] + 1
    return tuple(word)


# ---------------------------------------------------------------------------
# subword-closed languages


class IntegralityError(AssertionError):
    """A computed growth rate of a subword-closed language was not an integer."""


@dataclass(frozen=True)
class SubwordGrowth:
    growth: int
    spectral_radius: float
    states: int
    finite: bool

    def to_dict(self) -> dict:
        return {
            "growth": self.growth,
            "spectral_radius": self.spectral_radius,
            "states": self.states,
            "finite": self.finite,
        }


def _subword_automaton(alphabet: Sequence, forbidden: Sequence[Sequence]):
    forbidden = [tuple(b) for b in forbidden]
    start = tuple(0 for _ in forbidden)
    if any(len(b) == 0 for b in forbidden):
        return [], {}, forbidden

    def step(state, a):
        return tuple(s + 1 if s < len(b) and b[s] == a else s for s, b in zip(state, forbidden))

    def live(state):
        return all(s < len(b) for s, b in zip(state, forbidden))

    states, index, trans = [start], {start: 0}, {}
    k = 0
    while k < len(states):
        s = states[k]
        for a in alphabet:
            nxt = step(s, a)
            if not live(nxt):
                continue
            if nxt not in index:
                index[nxt] = len(states)
                states.append(nxt)
            trans.setdefault(s, []).append(nxt)
        k += 1
    return states, trans, forbidden


def subword_count(alphabet: Sequence, forbidden: Sequence[Sequence], n: int) -> list:
    """Words of each length ``0..n`` avoiding every forbidden subword, via the automaton."""
    states, trans, _ = _subword_automaton(alphabet, forbidden)
    if not states:
        return [0] * (n + 1)
    vec = {states[0]: 1}
    out = []
    for _ in range(n + 1):
        out.append(sum(vec.values()))
        nxt = {}
        for s, c in vec.items():
            for t in trans.get(s, ()):
                nxt[t] = nxt.get(t, 0) + c
        vec = nxt
    return out


def subword_growth(alphabet: Sequence, forbidden: Sequence[Sequence], tol: float = 1e-6) -> SubwordGrowth:
    """Growth rate of the words over ``alphabet`` containing no word of ``forbidden`` as a subword.

    Every tracker only moves forward, so the strongly connected components of
    the automaton are single states and the growth rate is the largest number
    of self-loops at a live state.  The dominant eigenvalue of the transition
    count matrix is computed independently and must agree and be integral.
    """
    states, trans, _ = _subword_automaton(alphabet, forbidden)
    if not states:
        return SubwordGrowth(0, 0.0, 0, True)
    # order states so the matrix is upper triangular (trackers never move back)
    order = sorted(states, key=lambda s: (sum(s), s))
    idx = {s: k for k, s in enumerate(order)}
    a = np.zeros((len(order), len(order)))
    for s, outs in trans.items():
        for t in outs:
            a[idx[s], idx[t]] += 1
    loops = max(int(a[k, k]) for k in range(len(order)))
    rho = float(max(abs(np.linalg.eigvals(a)))) if len(order) else 0.0
    finite = loops == 0
    exact = 0 if finite else loops
    if abs(rho - round(rho)) > tol or round(rho) != exact:
        raise IntegralityError(f"spectral radius {rho} is not the integer {exact}")
    return SubwordGrowth(exact, rho, len(order), finite)


# ---------------------------------------------------------------------------
# the two-cell encoding with letters l1, l2, r


def two_cell_words(n: int) -> list:
    """Words over ``l1`` (weight 1), ``l2`` (weight 2) and ``r`` (weight 1) of total weight ``n``."""
    if n == 0:
        return [()]
    out = []
    for letter, w in (("l1", 1), ("l2", 2), ("r", 1)):
        if w <= n:
            out += [(letter,) + rest for rest in two_cell_words(n - w)]
    return out


def decode_two_cell(word: Sequence[str]) -> Gridding:
    """Read bottom to top: a left entry, a left copy of 21, or a right entry."""
    left, right = [], []
    v = 0
    for letter in word:
        if letter == "l1":
            left.append([v + 1])
            v += 1
        elif letter == "l2":
            left.append([v + 2, v + 1])
            v += 2
        elif letter == "r":
            right.append(v + 1)
            v += 1
        else:
            raise ValueError(f"unknown letter {letter!r}")
    word_left = [x for block in left for x in block]
    perm = Permutation(word_left + right)
    return Gridding(perm, (1, len(word_left) + 1, v + 1), (1, v + 1))


def two_cell_generator(m: int) -> Gridding:
    """The gridded permutation 2,1,5,4,...,3m-1,3m-2 | 3,6,...,3m with the line after the left part."""
    left = []
    for k in range(m):
        left += [3 * k + 2, 3 * k + 1]
    right = [3 * k + 3 for k in range(m)]
    perm = Permutation(left + right)
    return Gridding(perm, (1, len(left) + 1, 3 * m + 1), (1, 3 * m + 1))


def gridded_subpatterns(g: Gridding, n: int) -> set:
    """Distinct gridded permutations obtained by keeping ``n`` entries of ``g``."""
    from itertools import combinations

    cells = [g.cell_of_entry(k) for k in range(len(g.perm))]
    out = set()
    for keep in combinations(range(len(g.perm)), n):
        pat = standardize([g.perm[k] for k in keep])
        out.add((tuple(pat), tuple(cells[k] for k in keep)))
    return out


TWO_CELL_MATRIX_TEXT = ("SumClosure(Sub(21))", "Av(21)")


def two_cell_matrix() -> ClassMatrix:
    return ClassMatrix.row_vector([parse_spec(s) for s in TWO_CELL_MATRIX_TEXT])


# ---------------------------------------------------------------------------
# griddability scan


def basis_up_to(spec: ClassSpec, n_max: int) -> list:
    """Minimal non-members of ``spec`` of length at most ``n_max``."""
    levels = members(spec, n_max - 1, cap=max(n_max, 12)) if n_max >= 1 else [[Permutation._raw(())]]
    basis = []
    for n in range(1, n_max + 1):
        prev = set(levels[n - 1])
        for p in permutations_of_length(n):
            if not is_member(p, spec) and one_point_deletions(p) <= prev:
                basis.append(p)
    return basis


def griddability_scan(c: ClassSpec, g: ClassSpec, m_max: int, n_max: int) -> int:
    """Largest ``m <= m_max`` with a sum or skew sum of ``m`` basis elements of ``g`` in ``c``."""
    basis = basis_up_to(g, n_max)
    best = 0
    for m in range(1, m_max + 1):
        found = False
        for combo in product(basis, repeat=m):
            if sum(len(b) for b in combo) > n_max:
                continue
            if is_member(direct_sum(*combo), c) or is_member(skew_sum(*combo), c):
                found = True
                break
        if not found:
            break
        best = m
    return best
