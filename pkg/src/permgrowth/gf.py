"""Exact generating functions and certified growth rates.

Polynomials carry integer coefficients in ascending order and every root is
located by Sturm sequences and bisection over :class:`fractions.Fraction`, so a
certificate is an interval with exact rational endpoints at which the
polynomial takes opposite signs.  Floats appear only when a value is displayed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

from .classes import SumIndecProfile

DEFAULT_TOL = Fraction(1, 10**9)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**15)
    return Fraction(x)


# ---------------------------------------------------------------------------
# rational-coefficient helpers (lists of Fractions, ascending)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(a: list, b: list):
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] / b[-1]
        q[shift] = coef
        for i, bc in enumerate(b):
            a[i + shift] -= coef * bc
        a = _trim(a)
    return _trim(q), a


def _primitive(c: Sequence[Fraction]) -> list:
    """Scale rational coefficients to coprime integers with positive leading coefficient."""
    c = _trim([Fraction(x) for x in c])
    if not c:
        return []
    den = reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), c, 1)
    ints = [int(x * den) for x in c]
    g = reduce(math.gcd, (abs(x) for x in ints))
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


# ---------------------------------------------------------------------------
# polynomials


class IntPolynomial:
    """Polynomial with exact integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for x in coeffs:
            if isinstance(x, Fraction) and x.denominator != 1:
                raise ValueError("coefficients must be integers")
            c.append(int(x))
        self.coeffs = tuple(_trim(c))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def reciprocal(self) -> "IntPolynomial":
        """``x^d p(1/x)``; maps nonzero roots to their reciprocals."""
        return IntPolynomial(reversed(self.coeffs))

    def primitive(self) -> "IntPolynomial":
        return IntPolynomial(_primitive(self.coeffs))

    def exact_divide(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = _qdivmod(self.coeffs, other.coeffs)
        if r or any(x.denominator != 1 for x in q):
            raise ValueError(f"{other} does not divide {self} over the integers")
        return IntPolynomial(int(x) for x in q)

    def to_list(self) -> list:
        return list(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mon = "x" if k == 1 else f"x^{k}"
                body = mon if a == 1 else f"{a}{mon}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    return IntPolynomial(p)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive greatest common divisor with positive leading coefficient."""
    x, y = list(a.coeffs), list(b.coeffs)
    while _trim(list(y)):
        _, r = _qdivmod(x, y)
        x, y = y, r
    if not _trim(list(x)):
        return IntPolynomial()
    return IntPolynomial(_primitive(x))


def square_free(p: IntPolynomial) -> IntPolynomial:
    """``p`` divided by ``gcd(p, p')``: same roots, all simple."""
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    q, _ = _qdivmod(p.coeffs, g.coeffs)
    return IntPolynomial(_primitive(q))


# ---------------------------------------------------------------------------
# root isolation


def sturm_sequence(p: IntPolynomial) -> list:
    seq = [list(map(Fraction, p.coeffs)), list(map(Fraction, p.derivative().coeffs))]
    while _trim(list(seq[-1])):
        _, r = _qdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [_signed_primitive(s) for s in seq if _trim(list(s))]


def _signed_primitive(c: list) -> IntPolynomial:
    # keep the sign of the leading coefficient, which Sturm counting depends on
    prim = _primitive(c)
    lead = _trim(list(c))[-1]
    if lead < 0:
        prim = [-x for x in prim]
    return IntPolynomial(prim)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(seq: list, x: Fraction) -> int:
    signs = [s for s in (_sign(q(x)) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: IntPolynomial, lo, hi, seq: Optional[list] = None) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = seq or sturm_sequence(square_free(p))
    return _variations(seq, _as_fraction(lo)) - _variations(seq, _as_fraction(hi))


def root_bound(p: IntPolynomial) -> Fraction:
    """Cauchy bound: every real root lies strictly inside ``(-B, B)``."""
    lead = abs(p.coeffs[-1])
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]) if p.degree > 0 else 0, lead)


@dataclass(frozen=True)
class RootCertificate:
    """A real root of ``polynomial`` isolated in ``[lo, hi]`` with exact rational ends.

    When ``lo == hi`` the root is the rational number itself.  ``transform`` is
    ``"root"`` when the value of interest is the root and ``"reciprocal"`` when
    it is ``1/root``; growth certificates are always stated for the reciprocal
    polynomial so that ``value`` lies inside ``[lo, hi]`` directly.
    """

    polynomial: IntPolynomial
    lo: Fraction
    hi: Fraction
    label: str = ""
    sources: tuple = field(default=())

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def verify(self) -> bool:
        """Exact check that exactly one root sits in the interval."""
        p = self.polynomial
        if self.lo == self.hi:
            return p(self.lo) == 0
        sf = square_free(p)
        a, b = sf(self.lo), sf(self.hi)
        if a == 0 or b == 0 or _sign(a) == _sign(b):
            return False
        return count_roots(sf, self.lo, self.hi) == 1

    def contains(self, value, slack: float = 0.0) -> bool:
        return float(self.lo) - slack <= value <= float(self.hi) + slack

    def refine(self, tol) -> "RootCertificate":
        lo, hi = _bisect(square_free(self.polynomial), self.lo, self.hi, _as_fraction(tol))
        return RootCertificate(self.polynomial, lo, hi, self.label, self.sources)

    def to_dict(self) -> dict:
        return {
            "poly": self.polynomial.to_list(),
            "lo": float(self.lo),
            "hi": float(self.hi),
            "lo_exact": str(self.lo),
            "hi_exact": str(self.hi),
            "approx": self.approx,
            **({"label": self.label} if self.label else {}),
        }

    def __str__(self):
        return f"{self.approx:.10g} in [{float(self.lo):.12g}, {float(self.hi):.12g}] root of {self.polynomial}"


def _bisect(sf: IntPolynomial, lo: Fraction, hi: Fraction, tol: Fraction):
    if lo == hi:
        return lo, hi
    flo = _sign(sf(lo))
    if flo == 0:
        return lo, lo
    if _sign(sf(hi)) == 0:
        return hi, hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = _sign(sf(mid))
        if s == 0:
            return mid, mid
        if s == flo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _isolate(p: IntPolynomial, lo: Fraction, hi: Fraction, which: str, tol: Fraction):
    """Bisect ``(lo, hi]`` down to the greatest or least root in it, then refine."""
    sf = square_free(p)
    seq = sturm_sequence(sf)
    total = count_roots(sf, lo, hi, seq)
    if total == 0:
        return None
    while count_roots(sf, lo, hi, seq) > 1:
        mid = (lo + hi) / 2
        upper = count_roots(sf, mid, hi, seq)
        if which == "max":
            if upper >= 1:
                lo = mid
            else:
                hi = mid
        else:
            if upper < count_roots(sf, lo, hi, seq):
                hi = mid
            else:
                lo = mid
    # now exactly one root in (lo, hi]
    if sf(hi) == 0:
        return hi, hi
    # lo may itself be a root excluded by the half-open count; shrink until it is not
    while sf(lo) == 0:
        mid = (lo + hi) / 2
        if sf(mid) == 0 and count_roots(sf, lo, mid, seq) == 1:
            return mid, mid
        if count_roots(sf, mid, hi, seq) == 1:
            lo = mid
        else:
            hi = mid
    return _bisect(sf, lo, hi, tol)


def largest_positive_root(p, tol=DEFAULT_TOL, label: str = "") -> RootCertificate:
    p = _as_poly(p)
    if p.degree < 1:
        raise NoPositiveRoot(f"{p} has no roots")
    res = _isolate(p, Fraction(0), root_bound(p), "max", _as_fraction(tol))
    if res is None:
        raise NoPositiveRoot(f"{p} has no positive real root")
    return RootCertificate(p, res[0], res[1], label)


def smallest_positive_root(p, tol=DEFAULT_TOL, label: str = "") -> RootCertificate:
    p = _as_poly(p)
    if p.degree < 1:
        raise NoPositiveRoot(f"{p} has no roots")
    res = _isolate(p, Fraction(0), root_bound(p), "min", _as_fraction(tol))
    if res is None:
        raise NoPositiveRoot(f"{p} has no positive real root")
    return RootCertificate(p, res[0], res[1], label)


def greatest_real_root(p, tol=DEFAULT_TOL, label: str = "") -> RootCertificate:
    p = _as_poly(p)
    b = root_bound(p)
    res = _isolate(p, -b, b, "max", _as_fraction(tol))
    if res is None:
        raise NoPositiveRoot(f"{p} has no real root")
    return RootCertificate(p, res[0], res[1], label)


class NoPositiveRoot(ValueError):
    """The denominator has no positive real root, so growth is not exponential."""


# ---------------------------------------------------------------------------
# rational generating functions


class RationalGF:
    """A ratio of integer polynomials with nonzero constant term in the denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1, reduce_now: bool = True):
        num, den = _as_poly(numerator), _as_poly(denominator)
        if den(0) == 0:
            raise ValueError("denominator must not vanish at 0")
        if reduce_now:
            g = poly_gcd(num, den) if not num.is_zero() else den.primitive()
            if g.degree > 0:
                num = _exact_quotient(num, g)
                den = _exact_quotient(den, g)
            # normalise so the denominator has positive constant term and no common content
            if den(0) < 0:
                num, den = -num, -den
            content = reduce(math.gcd, (abs(c) for c in num.coeffs + den.coeffs), 0)
            if content > 1:
                num = IntPolynomial(c // content for c in num.coeffs)
                den = IntPolynomial(c // content for c in den.coeffs)
        self.numerator, self.denominator = num, den

    def series(self, n: int) -> list:
        """First ``n`` coefficients (exact ints when possible, Fractions otherwise)."""
        num, den = self.numerator, self.denominator
        d0 = Fraction(den[0])
        out = []
        for k in range(n):
            acc = Fraction(num[k]) - sum(den[j] * out[k - j] for j in range(1, min(k, den.degree) + 1))
            out.append(acc / d0)
        return [int(c) if c.denominator == 1 else c for c in out]

    def __eq__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        other = _as_gf(other)
        return RationalGF(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalGF(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-_as_gf(other))

    def __rsub__(self, other):
        return _as_gf(other) - self

    def __mul__(self, other):
        other = _as_gf(other)
        return RationalGF(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __repr__(self):
        return f"RationalGF({self.numerator.to_list()}, {self.denominator.to_list()})"

    def __str__(self):
        return f"({self.numerator})/({self.denominator})"

    def to_dict(self) -> dict:
        return {"numerator": self.numerator.to_list(), "denominator": self.denominator.to_list()}


def _exact_quotient(a: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    q, r = _qdivmod(a.coeffs, g.coeffs)
    if r:
        raise AssertionError("gcd does not divide")
    return IntPolynomial(_primitive_keep_sign(q))


def _primitive_keep_sign(q: list) -> list:
    # the gcd is primitive, so the quotient of an integer polynomial by it is integral
    if all(x.denominator == 1 for x in q):
        return [int(x) for x in q]
    den = reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), q, 1)
    return [int(x * den) for x in q]


def _as_gf(f) -> RationalGF:
    if isinstance(f, RationalGF):
        return f
    return RationalGF(_as_poly(f), 1)


def gf_sum_closure(g: RationalGF) -> RationalGF:
    """``1/(1 - g)`` for a generating function with zero constant term."""
    g = _as_gf(g)
    if g.numerator(0) != 0:
        raise ValueError("g(0) must be 0 for a sum closure")
    return RationalGF(g.denominator, g.denominator - g.numerator)


def growth_rate(f: RationalGF, tol=DEFAULT_TOL) -> RootCertificate:
    """Certified reciprocal of the least positive pole of ``f``.

    The certificate is stated for the reciprocal polynomial of the reduced
    denominator, whose greatest positive root is the growth rate.
    """
    f = _as_gf(f)
    den = f.denominator
    if den.degree < 1:
        raise NoPositiveRoot("a polynomial has no singularities")
    cert = largest_positive_root(den.reciprocal(), tol, label="growth")
    return cert


def profile_gf(profile: SumIndecProfile) -> RationalGF:
    """Generating function ``g`` of the sum indecomposables described by ``profile``."""
    head = list(profile.head)
    num = IntPolynomial([0] + head)
    if not profile.tail:
        return RationalGF(num, 1)
    m = len(head)
    one_minus_x = IntPolynomial([1, -1])
    tail = IntPolynomial.monomial(m + 1, profile.tail)
    return RationalGF(num * one_minus_x + tail, one_minus_x)


def profile_closure_gf(profile: SumIndecProfile) -> RationalGF:
    return gf_sum_closure(profile_gf(profile))


def profile_growth(profile: SumIndecProfile, tol=DEFAULT_TOL) -> RootCertificate:
    """Growth rate of the sum closure whose indecomposables are counted by ``profile``.

    ``g`` has nonnegative coefficients, so ``g(x) = 1`` has exactly one positive
    solution below the radius of convergence.  The certificate is additionally
    checked against a direct evaluation of ``g`` at the bracketing points.
    """
    if profile.is_zero():
        raise ValueError("profile must be nonzero")
    g = profile_gf(profile)
    cert = growth_rate(gf_sum_closure(g), tol)
    if cert.lo > 0 and cert.lo != cert.hi:
        # x = 1/growth: g(1/hi) < 1 < g(1/lo) by monotonicity
        g_at = lambda x: Fraction(g.numerator(x)) / g.denominator(x)
        if not (g_at(1 / cert.hi) <= 1 <= g_at(1 / cert.lo)):
            raise AssertionError("profile growth certificate failed the monotone bracket check")
    return cert


# ---------------------------------------------------------------------------
# named constants and the spectrum below kappa

KAPPA_POLY = IntPolynomial([-1, 0, -2, 1])  # x^3 - 2x^2 - 1
KAPPA_PRINTED_POLY = IntPolynomial([1, 0, -2, 1])  # x^3 - 2x^2 + 1 = (x - 1)(x^2 - x - 1)
XI_POLY = IntPolynomial([-1, -1, -1, 0, -2, 1])
LAMBDA_B_POLY = IntPolynomial([-1, -1, -2, -2, -1, -1, 0, -2, 1])
ONE_PLUS_SQRT2_POLY = IntPolynomial([-1, -2, 1])
ONE_PLUS_PHI_POLY = IntPolynomial([1, -3, 1])

NAMED_POLYS = {
    "kappa": KAPPA_POLY,
    "xi": XI_POLY,
    "lambdaB": LAMBDA_B_POLY,
    "one_plus_sqrt2": ONE_PLUS_SQRT2_POLY,
    "one_plus_phi": ONE_PLUS_PHI_POLY,
}


def named_constant(name: str, tol=DEFAULT_TOL) -> RootCertificate:
    if name not in NAMED_POLYS:
        raise ValueError(f"unknown constant {name!r}; choose from {sorted(NAMED_POLYS)}")
    return largest_positive_root(NAMED_POLYS[name], tol, label=name)


def kappa_polynomial_report(value: float = 2.20557) -> dict:
    """Evaluate both candidate kappa polynomials and list the printed one's positive roots."""
    x = _as_fraction(value)
    printed_roots = []
    lo = Fraction(0)
    sf = square_free(KAPPA_PRINTED_POLY)
    seq = sturm_sequence(sf)
    b = root_bound(sf)
    n = count_roots(sf, lo, b, seq)
    # the printed polynomial factors, so collect its positive roots one at a time
    hi = b
    for _ in range(n):
        cert = _isolate(sf, lo, hi, "max", DEFAULT_TOL)
        printed_roots.append(float((cert[0] + cert[1]) / 2))
        hi = cert[0] - Fraction(1, 10**6) if cert[0] != cert[1] else cert[0] - Fraction(1, 10**6)
    return {
        "value": value,
        "minus_one_form": float(KAPPA_POLY(x)),
        "plus_one_form": float(KAPPA_PRINTED_POLY(x)),
        "plus_one_positive_roots": sorted(printed_roots),
        "kappa": named_constant("kappa").approx,
    }


def spectrum_family(family: int, k: int = 0, l: int = 0) -> list:
    x = IntPolynomial.x()
    base = IntPolynomial([-1, 0, -2, 1])
    if family == 1:
        return [x ** (k + 1) - 2 * x**k + 1]
    if family == 2:
        return [base * x ** (k + l) + x**l + 1]
    if family == 3:
        return [base * x**k + 1]
    if family == 4:
        return [
            IntPolynomial([-3, -2, -1, -1, 1]),
            IntPolynomial([-1, -3, -2, -1, -1, 1]),
            IntPolynomial([-3, -1, -1, 1]),
            IntPolynomial([-1, -3, -1, -1, 1]),
        ]
    raise ValueError("family must be 1, 2, 3 or 4")


def spectrum_below(bound: float, k_max: int = 8, l_max: int = 8, tol=Fraction(1, 10**12)) -> list:
    """Sorted, deduplicated growth rates below ``bound`` from the families above kappa's threshold list."""
    bound_q = _as_fraction(bound)
    found = [
        RootCertificate(IntPolynomial([0, 1]), Fraction(0), Fraction(0), "0", ("constant",)),
        RootCertificate(IntPolynomial([-1, 1]), Fraction(1), Fraction(1), "1", ("constant",)),
        RootCertificate(IntPolynomial([-2, 1]), Fraction(2), Fraction(2), "2", ("constant",)),
    ]
    candidates = []
    for k in range(k_max + 1):
        candidates += [(p, f"(1) k={k}") for p in spectrum_family(1, k)]
        candidates += [(p, f"(3) k={k}") for p in spectrum_family(3, k)]
        for l in range(l_max + 1):
            candidates += [(p, f"(2) k={k} l={l}") for p in spectrum_family(2, k, l)]
    candidates += [(p, f"(4) #{i + 1}") for i, p in enumerate(spectrum_family(4))]
    for p, source in candidates:
        try:
            cert = greatest_real_root(p, tol, label=source)
        except NoPositiveRoot:
            continue
        if cert.hi < bound_q:
            found.append(RootCertificate(cert.polynomial, cert.lo, cert.hi, source, (source,)))
    found.sort(key=lambda c: c.lo)
    merged = []
    for c in found:
        if merged and abs(c.approx - merged[-1].approx) < 1e-9:
            last = merged[-1]
            # prefer an exact rational representative when one is available
            keep = c if c.lo == c.hi and last.lo != last.hi else last
            merged[-1] = RootCertificate(keep.polynomial, keep.lo, keep.hi, keep.label, last.sources + c.sources)
        else:
            merged.append(c)
    return merged


def kgen_fibonacci(n: int, k: int) -> int:
    """``F_{n,k}``: sum of the previous ``k`` terms, with ``F_{0,k} = 1``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if n < 0:
        return 0
    f = [1]
    for m in range(1, n + 1):
        f.append(sum(f[m - j] for j in range(1, k + 1) if m - j >= 0))
    return f[n]


def parse_poly(text: str) -> IntPolynomial:
    """Parse an ascending coefficient list such as ``[-1,-1,-1,0,-2,1]``."""
    body = text.strip().strip("[]")
    return IntPolynomial(int(t) for t in body.replace(" ", "").split(",") if t)
