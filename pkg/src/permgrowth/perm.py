"""Permutations in one-line notation and the basic containment machinery.

A :class:`Permutation` is an immutable tuple of the ranks ``1..n``.  The empty
permutation is an ordinary value.  Everything here is a pure function, so the
helpers can be called freely from worker processes.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class Permutation(tuple):
    """A permutation of ``1..n`` written in one-line notation."""

    __slots__ = ()

    def __new__(cls, word: Iterable[int] = ()):
        if isinstance(word, str):
            return parse_perm(word)
        word = tuple(int(v) for v in word)
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"{word!r} is not a permutation of 1..{len(word)}")
        return tuple.__new__(cls, word)

    @classmethod
    def _raw(cls, word: Iterable[int]) -> "Permutation":
        # trusted constructor: caller guarantees a bijection on 1..n
        return tuple.__new__(cls, word)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(range(1, n + 1))

    @classmethod
    def decreasing(cls, n: int) -> "Permutation":
        return cls._raw(range(n, 0, -1))

    @property
    def n(self) -> int:
        return len(self)

    @property
    def word(self) -> tuple:
        return tuple(self)

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        if len(self) <= 9:
            return f"Permutation('{''.join(map(str, self))}')"
        return f"Permutation('{','.join(map(str, self))}')"

    def compact(self) -> str:
        """Digit-string form when n <= 9, comma form otherwise."""
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    # symmetries
    def reverse(self) -> "Permutation":
        return Permutation._raw(self[::-1])

    def complement(self) -> "Permutation":
        m = len(self) + 1
        return Permutation._raw(m - v for v in self)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, v in enumerate(self):
            inv[v - 1] = i + 1
        return Permutation._raw(inv)

    def __le__(self, other):  # containment order
        return contains(self, other)

    def __lt__(self, other):
        return len(self) < len(other) and contains(self, other)

    def __ge__(self, other):
        return contains(other, self)

    def __gt__(self, other):
        return len(self) > len(other) and contains(other, self)


def parse_perm(text: str) -> Permutation:
    """Parse ``"4 7 9 8 3 2 1 5 6"``, ``"4,7,9"`` or the compact ``"479832156"``."""
    text = text.strip()
    if not text:
        return Permutation._raw(())
    if re.fullmatch(r"\d+", text):
        if len(text) > 9:
            raise ValueError(f"compact form is only allowed for n <= 9: {text!r}")
        return Permutation(int(c) for c in text)
    parts = [p for p in re.split(r"[\s,]+", text) if p]
    return Permutation(int(p) for p in parts)


def as_perm(p) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return parse_perm(p)
    return Permutation(p)


def standardize(values: Sequence[int]) -> Permutation:
    """The permutation order isomorphic to a sequence of distinct numbers."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return Permutation._raw(ranks)


def symmetry(p: Permutation, which: str) -> Permutation:
    p = as_perm(p)
    if which == "reverse":
        return p.reverse()
    if which == "complement":
        return p.complement()
    if which == "inverse":
        return p.inverse()
    raise ValueError(f"unknown symmetry {which!r}")


def all_symmetries(p: Permutation) -> list:
    """The eight images of ``p`` under the dihedral group of the square."""
    out = []
    for q in (p, p.inverse()):
        for r in (q, q.reverse()):
            out.append(r)
            out.append(r.complement())
    return out


def permutations_of_length(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for w in permutations(range(1, n + 1)):
        yield Permutation._raw(w)


# ---------------------------------------------------------------------------
# containment


def contains(pattern, host) -> bool:
    """True when ``host`` has a subsequence order isomorphic to ``pattern``."""
    pattern = tuple(pattern)
    host = tuple(host)
    k, n = len(pattern), len(host)
    if k == 0:
        return True
    if k > n:
        return False
    if k == n:
        return pattern == host
    # for pattern index i, the pattern indices j < i holding the next smaller and
    # next larger values among pattern[0..i-1]
    lower = [-1] * k
    upper = [-1] * k
    for i in range(k):
        lo = hi = -1
        for j in range(i):
            if pattern[j] < pattern[i] and (lo < 0 or pattern[j] > pattern[lo]):
                lo = j
            if pattern[j] > pattern[i] and (hi < 0 or pattern[j] < pattern[hi]):
                hi = j
        lower[i], upper[i] = lo, hi
    chosen = [0] * k

    def search(i: int, start: int) -> bool:
        if i == k:
            return True
        lo = chosen[lower[i]] if lower[i] >= 0 else 0
        hi = chosen[upper[i]] if upper[i] >= 0 else n + 1
        last = n - (k - i)
        for pos in range(start, last + 1):
            v = host[pos]
            if lo < v < hi:
                chosen[i] = v
                if search(i + 1, pos + 1):
                    return True
        return False

    return search(0, 0)


def avoids(pattern, host) -> bool:
    return not contains(pattern, host)


def patterns_of_length(host, k: int) -> set:
    """All distinct length-``k`` patterns contained in ``host``."""
    host = tuple(host)
    return {standardize([host[i] for i in idx]) for idx in combinations(range(len(host)), k)}


def delete_entry(p, i: int) -> Permutation:
    """Remove the entry at 0-based index ``i`` and standardize."""
    v = p[i]
    return Permutation._raw(x - (x > v) for j, x in enumerate(p) if j != i)


def one_point_deletions(p) -> set:
    return {delete_entry(p, i) for i in range(len(p))}


def downset(p) -> dict:
    """Every pattern of ``p`` grouped by length, built by repeated deletion."""
    p = as_perm(p)
    levels = {len(p): {p}}
    for k in range(len(p), 0, -1):
        nxt = set()
        for q in levels[k]:
            nxt |= one_point_deletions(q)
        levels[k - 1] = nxt
    return levels


def window_pattern(host, index_interval, value_interval) -> Permutation:
    """Pattern of the entries with index in ``[a, b]`` and value in ``[c, d]`` (1-based, closed)."""
    a, b = index_interval
    c, d = value_interval
    vals = [host[i - 1] for i in range(max(a, 1), min(b, len(host)) + 1) if c <= host[i - 1] <= d]
    return standardize(vals)


# ---------------------------------------------------------------------------
# sums, intervals and simplicity


def direct_sum(*parts) -> Permutation:
    out, shift = [], 0
    for p in parts:
        out.extend(v + shift for v in p)
        shift += len(p)
    return Permutation._raw(out)


def skew_sum(*parts) -> Permutation:
    total = sum(len(p) for p in parts)
    out = []
    for p in parts:
        total -= len(p)
        out.extend(v + total for v in p)
    return Permutation._raw(out)


def sum_components(p) -> list:
    """Split ``p`` into its sum-indecomposable components, left to right."""
    comps, start, mx = [], 0, 0
    for i, v in enumerate(p):
        mx = max(mx, v)
        if mx == i + 1:
            comps.append(standardize(p[start : i + 1]))
            start = i + 1
    return comps


def skew_components(p) -> list:
    n = len(p)
    comps, start, mn = [], 0, n + 1
    for i, v in enumerate(p):
        mn = min(mn, v)
        if mn == n - i:
            comps.append(standardize(p[start : i + 1]))
            start = i + 1
    return comps


def is_sum_indecomposable(p) -> bool:
    if len(p) == 0:
        raise ValueError("the empty permutation has no decomposition")
    mx = 0
    for i, v in enumerate(p[:-1]):
        mx = max(mx, v)
        if mx == i + 1:
            return False
    return True


def is_skew_indecomposable(p) -> bool:
    if len(p) == 0:
        raise ValueError("the empty permutation has no decomposition")
    n, mn = len(p), len(p) + 1
    for i, v in enumerate(p[:-1]):
        mn = min(mn, v)
        if mn == n - i:
            return False
    return True


def intervals(p) -> list:
    """All nonempty intervals as ``((a, b), (c, d))`` pairs, 1-based and closed."""
    out = []
    n = len(p)
    for a in range(n):
        lo = hi = p[a]
        for b in range(a, n):
            v = p[b]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == b - a:
                out.append(((a + 1, b + 1), (lo, hi)))
    return out


def is_simple(p) -> bool:
    n = len(p)
    if n <= 2:
        return True
    for a in range(n - 1):
        lo = hi = p[a]
        top = n if a > 0 else n - 1
        for b in range(a + 1, top):
            v = p[b]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == b - a:
                return False
    return True


def inflate(sigma, blocks: Sequence) -> Permutation:
    """``sigma[blocks[0], ..., blocks[m-1]]``."""
    sigma = tuple(sigma)
    if len(blocks) != len(sigma):
        raise ValueError(f"need {len(sigma)} blocks, got {len(blocks)}")
    if any(len(b) == 0 for b in blocks):
        raise ValueError("inflation blocks must be nonempty")
    sizes = [0] * len(sigma)
    for i, v in enumerate(sigma):
        sizes[v - 1] = len(blocks[i])
    offset = [0] * len(sigma)
    acc = 0
    for v in range(len(sigma)):
        offset[v] = acc
        acc += sizes[v]
    out = []
    for i, v in enumerate(sigma):
        out.extend(x + offset[v - 1] for x in blocks[i])
    return Permutation._raw(out)


def is_monotone(p) -> bool:
    p = tuple(p)
    return all(a < b for a, b in zip(p, p[1:])) or all(a > b for a, b in zip(p, p[1:]))


# ---------------------------------------------------------------------------
# substitution decomposition


@dataclass(frozen=True)
class DecompositionTree:
    """Substitution decomposition of a nonempty permutation.

    ``kind`` is ``"leaf"``, ``"sum"``, ``"skew"`` or ``"simple"``; simple nodes
    carry their skeleton.  ``depth`` counts internal levels, so a leaf has depth 0
    and a simple or monotone permutation of length at least 2 has depth 1.
    """

    kind: str
    children: tuple = ()
    skeleton: Permutation | None = None
    depth: int = field(default=0)

    def blocks(self) -> list:
        return [c.perm() for c in self.children]

    def perm(self) -> Permutation:
        if self.kind == "leaf":
            return Permutation._raw((1,))
        parts = self.blocks()
        if self.kind == "sum":
            return direct_sum(*parts)
        if self.kind == "skew":
            return skew_sum(*parts)
        return inflate(self.skeleton, parts)

    def root_skeleton(self) -> Permutation:
        """The permutation inflated at the root, one entry per child block."""
        k = len(self.children)
        if self.kind == "sum":
            return Permutation._raw(tuple(range(1, k + 1)))
        if self.kind == "skew":
            return Permutation._raw(tuple(range(k, 0, -1)))
        if self.kind == "simple":
            return self.skeleton
        return Permutation._raw((1,))

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "depth": self.depth}
        if self.skeleton is not None:
            d["skeleton"] = list(self.skeleton)
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d


_LEAF = DecompositionTree("leaf")


def _node(kind, children, skeleton=None) -> DecompositionTree:
    children = tuple(children)
    return DecompositionTree(kind, children, skeleton, 1 + max(c.depth for c in children))


@lru_cache(maxsize=200_000)
def _decompose(p: tuple) -> DecompositionTree:
    n = len(p)
    if n == 1:
        return _LEAF
    comps = sum_components(p)
    if len(comps) > 1:
        return _node("sum", (_decompose(tuple(c)) for c in comps))
    comps = skew_components(p)
    if len(comps) > 1:
        return _node("skew", (_decompose(tuple(c)) for c in comps))
    # both sum and skew indecomposable: the maximal proper intervals partition p
    proper = [(a, b) for (a, b), _ in intervals(p) if b - a + 1 < n]
    maximal = [
        (a, b) for (a, b) in proper if not any(c <= a and b <= d and (c, d) != (a, b) for c, d in proper)
    ]
    maximal.sort()
    skeleton = standardize([p[a - 1] for a, _ in maximal])
    children = [_decompose(tuple(standardize(p[a - 1 : b]))) for a, b in maximal]
    return _node("simple", children, skeleton)


def decompose(p) -> DecompositionTree:
    p = as_perm(p)
    if len(p) == 0:
        raise ValueError("cannot decompose the empty permutation")
    return _decompose(tuple(p))


def substitution_depth(p) -> int:
    """Height of the decomposition tree; 1 for simple or monotone permutations (and for 1)."""
    return max(1, decompose(p).depth)


# ---------------------------------------------------------------------------
# inversion graphs


@dataclass(frozen=True)
class InversionGraph:
    vertex_count: int
    edges: frozenset

    def neighbours(self, v: int) -> set:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def degrees(self) -> list:
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a - 1] += 1
            deg[b - 1] += 1
        return deg

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        adj = {v: set() for v in range(1, self.vertex_count + 1)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {1}, [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(1, self.vertex_count + 1))
        g.add_edges_from(self.edges)
        return g


def inversion_graph(p) -> InversionGraph:
    """Vertices are indices ``1..n``; ``{i, j}`` is an edge when ``i < j`` and ``p(i) > p(j)``."""
    n = len(p)
    edges = frozenset((i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
    return InversionGraph(n, edges)


def is_path_graph(g: InversionGraph) -> bool:
    n = g.vertex_count
    if n == 0:
        return False
    if len(g.edges) != n - 1 or not g.is_connected():
        return False
    return all(d <= 2 for d in g.degrees())


def is_increasing_oscillation(p) -> bool:
    return len(p) > 0 and is_path_graph(inversion_graph(p))


def is_split_end_path(g: InversionGraph) -> bool:
    """A path with two pendant vertices added at each end (at least 6 vertices)."""
    n = g.vertex_count
    if n < 6 or len(g.edges) != n - 1 or not g.is_connected():
        return False
    deg = g.degrees()
    leaves = [v + 1 for v, d in enumerate(deg) if d == 1]
    if len(leaves) != 4:
        return False
    # every leaf hangs off a vertex of degree 3 and exactly two leaves share each such vertex
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    anchors = {}
    for leaf in leaves:
        (w,) = adj[leaf]
        anchors.setdefault(w, []).append(leaf)
    if len(anchors) != 2 or any(len(v) != 2 for v in anchors.values()):
        return False
    if any(deg[w - 1] != 3 for w in anchors):
        return False
    # removing the leaves must leave a path
    core = [v for v in range(1, n + 1) if v not in leaves]
    core_deg = [sum(1 for w in adj[v] if w not in leaves) for v in core]
    return max(core_deg) <= 2
