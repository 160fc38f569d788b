"""Permutation classes: specifications, membership, enumeration and profiles.

Classes are described by small immutable :class:`ClassSpec` trees that can be
parsed from text such as ``Av(2413,3142)`` or ``SumClosure(Sub(21))``.  Members
of a class are generated length by length: the one-point extensions of the
length-``n`` members are filtered by membership, which is complete because every
class here is closed downward.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .perm import (
    Permutation,
    as_perm,
    contains,
    direct_sum,
    downset,
    inversion_graph,
    is_increasing_oscillation,
    is_split_end_path,
    is_sum_indecomposable,
    one_point_deletions,
    parse_perm,
    patterns_of_length,
    permutations_of_length,
    standardize,
    sum_components,
    skew_components,
)

DEFAULT_MAX_N = 12
MEMBER_GUARD = 10**7


class CapExceeded(ValueError):
    """Raised when an enumeration request is beyond the configured length cap or memory guard."""


def default_cap() -> int:
    try:
        return int(os.environ.get("PERMGROWTH_MAX_N", DEFAULT_MAX_N))
    except ValueError:
        return DEFAULT_MAX_N


# ---------------------------------------------------------------------------
# class specifications

NAMED_TAGS = ("empty", "point", "increasing", "decreasing", "osc_inc", "osc_dec")


@dataclass(frozen=True)
class ClassSpec:
    """A permutation class.

    ``kind`` is one of ``avoid``, ``sub``, ``sum_closure``, ``skew_closure``,
    ``union``, ``intersection`` or ``named``.  ``perms`` holds the basis or the
    generators, ``parts`` holds inner specs and ``tag`` names a named class.
    """

    kind: str
    perms: tuple = ()
    parts: tuple = ()
    tag: str = ""

    def __str__(self) -> str:
        return format_spec(self)

    def contains_perm(self, p) -> bool:
        return is_member(as_perm(p), self)


def Av(*basis) -> ClassSpec:
    perms = minimize_basis(as_perm(b) for b in basis)
    return ClassSpec("avoid", tuple(sorted(perms, key=lambda q: (len(q), q))))


def Sub(*generators) -> ClassSpec:
    gens = {as_perm(g) for g in generators}
    return ClassSpec("sub", tuple(sorted(gens, key=lambda q: (len(q), q))))


def SumClosure(inner: ClassSpec) -> ClassSpec:
    return ClassSpec("sum_closure", parts=(inner,))


def SkewClosure(inner: ClassSpec) -> ClassSpec:
    return ClassSpec("skew_closure", parts=(inner,))


def Union(*parts: ClassSpec) -> ClassSpec:
    return ClassSpec("union", parts=tuple(parts))


def Intersection(*parts: ClassSpec) -> ClassSpec:
    return ClassSpec("intersection", parts=tuple(parts))


def Named(tag: str) -> ClassSpec:
    if tag not in NAMED_TAGS:
        raise ValueError(f"unknown class tag {tag!r}")
    return ClassSpec("named", tag=tag)


EMPTY = Named("empty")
POINT = Named("point")
INCREASING = Named("increasing")
DECREASING = Named("decreasing")
OSC_INC = Named("osc_inc")
OSC_DEC = Named("osc_dec")

_TEXT_TAGS = {
    "0": "empty",
    "empty": "empty",
    "point": "point",
    "1": "increasing",
    "increasing": "increasing",
    "-1": "decreasing",
    "decreasing": "decreasing",
    "oscinc": "osc_inc",
    "osc_inc": "osc_inc",
    "oscdec": "osc_dec",
    "osc_dec": "osc_dec",
}

_TAG_TEXT = {
    "empty": "0",
    "point": "Point",
    "increasing": "1",
    "decreasing": "-1",
    "osc_inc": "OscInc",
    "osc_dec": "OscDec",
}


def _split_top(text: str, sep: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_spec(text: str) -> ClassSpec:
    """Parse the class grammar, e.g. ``Av(321)`` or ``Union(Av(21);Sub(2413))``."""
    raw = text.strip()
    key = re.sub(r"\s+", "", raw).lower()
    if key in _TEXT_TAGS:
        return Named(_TEXT_TAGS[key])
    m = re.fullmatch(r"\s*([A-Za-z]+)\s*\((.*)\)\s*", raw, flags=re.S)
    if not m:
        raise ValueError(f"cannot parse class specification {text!r}")
    head, body = m.group(1).lower(), m.group(2)
    if head in ("av", "sub"):
        items = [s for s in _split_top(body, ",")]
        perms = [parse_perm(s) for s in items if s.strip()]
        return Av(*perms) if head == "av" else Sub(*perms)
    if head in ("sumclosure", "skewclosure"):
        inner = parse_spec(body)
        return SumClosure(inner) if head == "sumclosure" else SkewClosure(inner)
    if head in ("union", "intersection"):
        parts = [parse_spec(s) for s in _split_top(body, ";")]
        return Union(*parts) if head == "union" else Intersection(*parts)
    raise ValueError(f"unknown class constructor {m.group(1)!r}")


def format_spec(spec: ClassSpec) -> str:
    if spec.kind == "named":
        return _TAG_TEXT[spec.tag]
    if spec.kind in ("avoid", "sub"):
        name = "Av" if spec.kind == "avoid" else "Sub"
        return f"{name}({','.join(p.compact() if len(p) <= 9 else ' '.join(map(str, p)) for p in spec.perms)})"
    if spec.kind == "sum_closure":
        return f"SumClosure({format_spec(spec.parts[0])})"
    if spec.kind == "skew_closure":
        return f"SkewClosure({format_spec(spec.parts[0])})"
    name = "Union" if spec.kind == "union" else "Intersection"
    return f"{name}({';'.join(format_spec(s) for s in spec.parts)})"


def minimize_basis(basis: Iterable) -> set:
    """Keep only the containment-minimal elements."""
    items = sorted({as_perm(b) for b in basis}, key=len)
    kept = []
    for b in items:
        if not any(contains(a, b) for a in kept):
            kept.append(b)
    return set(kept)


# ---------------------------------------------------------------------------
# membership


@lru_cache(maxsize=1_000_000)
def _member(p: Permutation, spec: ClassSpec) -> bool:
    kind = spec.kind
    if len(p) == 0:
        return True
    if kind == "avoid":
        return not any(contains(b, p) for b in spec.perms)
    if kind == "sub":
        return any(contains(p, g) for g in spec.perms)
    if kind == "sum_closure":
        comps = sum_components(p)
        return all(_member(c, spec.parts[0]) for c in comps)
    if kind == "skew_closure":
        comps = skew_components(p)
        return all(_member(c, spec.parts[0]) for c in comps)
    if kind == "union":
        return any(_member(p, s) for s in spec.parts)
    if kind == "intersection":
        return all(_member(p, s) for s in spec.parts)
    tag = spec.tag
    if tag == "empty":
        return False
    if tag == "point":
        return len(p) == 1
    if tag == "increasing":
        return all(a < b for a, b in zip(p, p[1:]))
    if tag == "decreasing":
        return all(a > b for a, b in zip(p, p[1:]))
    if tag == "osc_inc":
        # the downward closure of the increasing oscillations is sum closed and
        # its sum indecomposables are exactly the increasing oscillations
        return all(is_increasing_oscillation(c) for c in sum_components(p))
    if tag == "osc_dec":
        return _member(p.reverse(), OSC_INC)
    raise ValueError(f"unknown class kind {kind!r}")


def is_member(p, spec: ClassSpec) -> bool:
    """Membership test; the empty permutation belongs to every class."""
    return _member(as_perm(p), spec)


# ---------------------------------------------------------------------------
# enumeration


def one_point_extensions(p) -> set:
    """All permutations obtained by inserting one new entry into ``p``."""
    n = len(p)
    out = set()
    for v in range(1, n + 2):
        shifted = [x + 1 if x >= v else x for x in p]
        for i in range(n + 1):
            out.add(Permutation._raw(shifted[:i] + [v] + shifted[i:]))
    return out


def members(spec: ClassSpec, max_len: int, cap: Optional[int] = None, verify_closed: bool = True) -> list:
    """Members of ``spec`` of each length ``0..max_len``, lexicographic within a length."""
    cap = default_cap() if cap is None else cap
    if max_len > cap:
        raise CapExceeded(f"max_len {max_len} exceeds the enumeration cap {cap}")
    levels = [[Permutation._raw(())]]
    for n in range(1, max_len + 1):
        prev = levels[-1]
        if n >= 3 and len(levels[-2]) > 0:
            ratio = max(1.0, len(prev) / len(levels[-2]))
            if len(prev) * ratio > MEMBER_GUARD:
                raise CapExceeded(f"projected size of length {n} exceeds {MEMBER_GUARD}")
        cand = set()
        for p in prev:
            cand |= one_point_extensions(p)
        level = sorted(q for q in cand if _member(q, spec))
        if verify_closed:
            prev_set = set(prev)
            for q in level:
                if not one_point_deletions(q) <= prev_set:
                    raise AssertionError(f"{q} has a deletion outside the class; not a downset")
        levels.append(level)
    return levels


def counts(spec: ClassSpec, max_len: int, cap: Optional[int] = None) -> list:
    """Number of members of each length ``1..max_len``."""
    return [len(level) for level in members(spec, max_len, cap)[1:]]


def extensions(S: Iterable, p: int) -> set:
    """Everything obtained from members of ``S`` by inserting at most ``p`` entries."""
    if p < 0:
        raise ValueError("point budget must be nonnegative")
    current = {as_perm(s) for s in S}
    out = set(current)
    for _ in range(p):
        nxt = set()
        for q in current:
            nxt |= one_point_extensions(q)
        out |= nxt
        current = nxt
    return out


# ---------------------------------------------------------------------------
# sum indecomposable profiles


@dataclass(frozen=True)
class SumIndecProfile:
    """Counts of sum indecomposables by length ``1, 2, ...`` with an optional constant tail."""

    head: tuple
    tail: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(c) for c in self.head))
        if any(c < 0 for c in self.head) or (self.tail is not None and self.tail < 0):
            raise ValueError("profile counts must be nonnegative")

    def count(self, k: int) -> int:
        if k < 1:
            return 0
        if k <= len(self.head):
            return self.head[k - 1]
        return self.tail or 0

    def is_zero(self) -> bool:
        return not any(self.head) and not self.tail

    def __str__(self) -> str:
        s = ",".join(map(str, self.head))
        if self.tail is not None:
            s += f",{self.tail}^inf"
        return s


def parse_profile(text: str) -> SumIndecProfile:
    """Parse ``"1,1,3,3,1"`` or ``"1,1,2,3,4^inf"`` (also ``4^∞`` or ``tail 4``)."""
    text = text.strip()
    tail = None
    m = re.search(r"(?:,|\s)\s*(?:tail\s*(\d+)|(\d+)\s*\^\s*(?:inf|∞))\s*$", text)
    if m:
        tail = int(m.group(1) or m.group(2))
        text = text[: m.start()]
    head = [int(t) for t in re.split(r"[\s,]+", text.strip()) if t]
    return SumIndecProfile(tuple(head), tail)


def sum_indec_profile(p) -> SumIndecProfile:
    """Number of distinct sum indecomposable patterns of each length contained in ``p``."""
    p = as_perm(p)
    if len(p) == 0:
        raise ValueError("profile of the empty permutation is undefined")
    levels = downset(p)
    head = tuple(sum(1 for q in levels[k] if is_sum_indecomposable(q)) for k in range(1, len(p) + 1))
    return SumIndecProfile(head)


def skew_indec_profile(p) -> SumIndecProfile:
    """The skew analogue, computed through the reverse symmetry."""
    return sum_indec_profile(as_perm(p).reverse())


def sum_indecomposables(p) -> dict:
    """Sum indecomposable patterns of ``p`` keyed by length."""
    levels = downset(as_perm(p))
    return {k: {q for q in levels[k] if is_sum_indecomposable(q)} for k in range(1, len(p) + 1)}


def sum_closure_counts(source, max_len: int, cap: Optional[int] = None) -> list:
    """Counts of the sum closure for lengths ``1..max_len`` by explicit construction.

    ``source`` is a permutation (its downward closure is used), a
    :class:`ClassSpec`, or a :class:`SumIndecProfile`.  For permutations and
    specs the members are built as actual sums of indecomposables and
    deduplicated, which makes this an independent check on the generating
    function route.
    """
    cap = default_cap() if cap is None else cap
    if max_len > cap:
        raise CapExceeded(f"max_len {max_len} exceeds the enumeration cap {cap}")
    if isinstance(source, SumIndecProfile):
        a = [1]
        for n in range(1, max_len + 1):
            a.append(sum(source.count(k) * a[n - k] for k in range(1, n + 1)))
        return a[1:]
    if isinstance(source, ClassSpec):
        levels = members(source, max_len, cap, verify_closed=False)
        indec = {k: [q for q in levels[k] if is_sum_indecomposable(q)] for k in range(1, max_len + 1)}
    else:
        found = sum_indecomposables(source)
        indec = {k: sorted(found.get(k, ())) for k in range(1, max_len + 1)}
    built = [{()}]
    for n in range(1, max_len + 1):
        level = set()
        for k in range(1, n + 1):
            for c in indec[k]:
                for rest in built[n - k]:
                    level.add(tuple(c) + tuple(v + k for v in rest))
        built.append(level)
    return [len(level) for level in built[1:]]


# ---------------------------------------------------------------------------
# oscillations


def oscillating_sequence_prefix(k: int) -> list:
    """First ``k`` terms of 2, 4, 1, 6, 3, 8, 5, ..."""
    if k < 1:
        raise ValueError("k must be positive")
    seq = [2]
    j = 2
    while len(seq) < k:
        seq.append(2 * j)
        if len(seq) < k:
            seq.append(2 * j - 3)
        j += 1
    return seq[:k]


EXHAUSTIVE_OSC_N = 8


def _oscillations_from_sequence(n: int) -> set:
    w = oscillating_sequence_prefix(n + 8)
    out = set()
    for start in range(0, 6):
        window = w[start : start + n + 2]
        for q in patterns_of_length(window, n):
            if is_increasing_oscillation(q):
                out.add(q)
    return out


def oscillation(n: int, direction: str = "inc", exhaustive: Optional[bool] = None) -> set:
    """All increasing (or decreasing) oscillations of length ``n``.

    Small lengths are found by scanning all of S_n for path inversion graphs.
    Longer ones come from windows of the oscillating sequence, still filtered by
    the path check.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if direction not in ("inc", "dec"):
        raise ValueError("direction must be 'inc' or 'dec'")
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_OSC_N
    if exhaustive:
        found = {p for p in permutations_of_length(n) if is_increasing_oscillation(p)}
    else:
        found = _oscillations_from_sequence(n)
    if direction == "dec":
        found = {p.reverse() for p in found}
    return found


# ---------------------------------------------------------------------------
# antichains

ANTICHAIN_FAMILIES = ("Uo", "Ue", "Uo_inv", "Ue_inv", "t32", "t33", "t42", "t43", "dec1", "dec2")

# anchor sizes for the increasing-anchor families
_ANCHORS = {"Uo": (2, 2), "t32": (3, 2), "t33": (3, 3), "t42": (4, 2), "t43": (4, 3)}


class InadmissibleLength(ValueError):
    pass


def _anchored(a: int, b: int, p: int) -> list:
    # left anchor of a increasing entries, p oscillation steps, right anchor of b
    s = a + 3
    last = s + 2 * p - 1
    word = list(range(2, a + 2)) + [s, 1]
    for j in range(1, p + 1):
        word += [s + 2 * j, s + 2 * j - 3]
    word += list(range(last + 2, last + b + 2)) + [last]
    return word


def _ue(n: int) -> list:
    if n == 6:
        return [2, 3, 6, 1, 4, 5]
    k = (n - 6) // 2
    word = [2, 3, 5, 1]
    for j in range(1, k):
        word += [5 + 2 * j, 5 + 2 * j - 3]
    last = 5 + 2 * (k - 1) - 1
    word += [n, last, n - 2, n - 1]
    return word


def expected_antichain_profile(family: str, n: int) -> tuple:
    """The sum indecomposable profile each antichain member of length ``n`` must have."""
    if family in ("Uo", "Uo_inv"):
        k = (n - 7) // 2
        return (1, 1, 2, 3) + (4,) * (2 * k) + (3, 2, 1)
    if family in ("Ue", "Ue_inv"):
        k = (n - 6) // 2
        return (1, 1, 2) + (4,) * (2 * k) + (3, 2, 1)
    if family == "t32":
        return (1, 1, 2, 3) + (5,) * (n - 8) + (4, 3, 2, 1)
    if family in ("t33", "t42"):
        return (1, 1, 2, 3, 5) + (6,) * (n - 10) + (5, 4, 3, 2, 1)
    if family == "t43":
        return (1, 1, 2, 3, 5) + (7,) * (n - 11) + (6, 5, 4, 3, 2, 1)
    if family in ("dec1", "dec2"):
        return (1, 1, 3) + (4,) * (n - 6) + (3, 2, 1)
    raise ValueError(f"unknown antichain family {family!r}")


def _admissible(family: str, n: int) -> bool:
    if family in ("Uo", "Uo_inv", "dec1", "dec2"):
        return n >= 7 and n % 2 == 1
    if family in ("Ue", "Ue_inv"):
        return n >= 6 and n % 2 == 0
    a, b = _ANCHORS[family]
    # the motif needs at least one full oscillation step between the anchors
    return n >= a + b + 5 and (n - a - b - 3) % 2 == 0


def antichain_member(family: str, n: int, validate: bool = True) -> Permutation:
    """The member of length ``n`` of an infinite antichain family.

    ``Uo``/``Ue`` and their inverses have split-end path inversion graphs;
    ``tab`` has an increasing left anchor of ``a`` entries and an increasing
    right anchor of ``b`` entries around the oscillating motif.  ``dec1`` and
    ``dec2`` use decreasing anchors on one or both ends.
    """
    if family not in ANTICHAIN_FAMILIES:
        raise ValueError(f"unknown antichain family {family!r}")
    if not _admissible(family, n):
        raise InadmissibleLength(f"no member of {family} has length {n}")
    if family in ("Ue", "Ue_inv"):
        perm = Permutation(_ue(n))
    elif family in ("dec1", "dec2"):
        word = _anchored(2, 2, (n - 7) // 2)
        word[0], word[1] = word[1], word[0]
        if family == "dec2":
            word[-3], word[-2] = word[-2], word[-3]
        perm = Permutation(word)
    else:
        a, b = _ANCHORS["Uo" if family == "Uo_inv" else family]
        perm = Permutation(_anchored(a, b, (n - a - b - 3) // 2))
    if family.endswith("_inv"):
        perm = perm.inverse()
    if validate:
        if family in ("Uo", "Ue", "Uo_inv", "Ue_inv"):
            if not is_split_end_path(inversion_graph(perm)):
                raise AssertionError(f"{perm} does not have a split-end path inversion graph")
        if sum_indec_profile(perm).head != expected_antichain_profile(family, n):
            raise AssertionError(f"{perm} has an unexpected sum indecomposable profile")
    return perm


def antichain_lengths(family: str, max_len: int) -> list:
    return [n for n in range(1, max_len + 1) if _admissible(family, n)]


def is_antichain(perms: Iterable) -> bool:
    perms = list(perms)
    for i, p in enumerate(perms):
        for q in perms[i + 1 :]:
            if len(p) <= len(q) and contains(p, q):
                return False
            if len(q) <= len(p) and contains(q, p):
                return False
    return True


__all__ = [
    "ANTICHAIN_FAMILIES",
    "Av",
    "CapExceeded",
    "ClassSpec",
    "DECREASING",
    "EMPTY",
    "INCREASING",
    "InadmissibleLength",
    "Intersection",
    "Named",
    "OSC_DEC",
    "OSC_INC",
    "POINT",
    "SkewClosure",
    "Sub",
    "SumClosure",
    "SumIndecProfile",
    "Union",
    "antichain_lengths",
    "antichain_member",
    "counts",
    "default_cap",
    "expected_antichain_profile",
    "extensions",
    "format_spec",
    "is_antichain",
    "is_member",
    "members",
    "minimize_basis",
    "one_point_extensions",
    "oscillating_sequence_prefix",
    "oscillation",
    "parse_profile",
    "parse_spec",
    "skew_indec_profile",
    "standardize",
    "sum_closure_counts",
    "sum_indec_profile",
    "sum_indecomposables",
    "direct_sum",
]
