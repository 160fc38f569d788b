from fractions import Fraction

import pytest

from permgrowth.classes import parse_profile, sum_closure_counts, sum_indec_profile
from permgrowth.gf import (
    IntPolynomial,
    KAPPA_PRINTED_POLY,
    RationalGF,
    count_roots,
    gf_sum_closure,
    growth_rate,
    kappa_polynomial_report,
    kgen_fibonacci,
    largest_positive_root,
    named_constant,
    profile_closure_gf,
    profile_growth,
    spectrum_below,
)


def test_polynomial_arithmetic():
    x = IntPolynomial.x()
    p = (x - 1) * (x * x - x - 1)
    assert p == KAPPA_PRINTED_POLY
    assert p(2) == 1
    assert p.derivative() == IntPolynomial([0, -2, 3]) - IntPolynomial([0, 2])
    assert IntPolynomial([1, 2, 3]).reciprocal() == IntPolynomial([3, 2, 1])


def test_sturm_counts_roots():
    p = IntPolynomial([-2, 0, 1])  # x^2 - 2
    assert count_roots(p, Fraction(-2), Fraction(2)) == 2
    assert count_roots(p, Fraction(0), Fraction(2)) == 1


def test_root_certificate_is_exact():
    cert = largest_positive_root(IntPolynomial([-2, 0, 1]), Fraction(1, 10**12))
    assert cert.verify()
    assert abs(cert.approx - 2**0.5) < 1e-11
    assert cert.lo * cert.lo < 2 < cert.hi * cert.hi


def test_named_constants():
    assert abs(named_constant("xi").approx - 2.30522) < 5e-5
    assert abs(named_constant("kappa").approx - 2.20557) < 5e-5
    assert abs(named_constant("lambdaB").approx - 2.35698) < 5e-5
    assert abs(named_constant("one_plus_sqrt2").approx - (1 + 2**0.5)) < 1e-9
    assert abs(named_constant("one_plus_phi").approx - (3 + 5**0.5) / 2) < 1e-9


def test_printed_kappa_polynomial_has_the_wrong_roots():
    report = kappa_polynomial_report()
    roots = report["plus_one_positive_roots"]
    assert abs(roots[0] - 1) < 1e-6 and abs(roots[1] - (1 + 5**0.5) / 2) < 1e-6
    assert abs(report["minus_one_form"]) < 1e-3


def test_rational_gf_reduces():
    f = RationalGF(IntPolynomial([1, -1]) * IntPolynomial([1, 1]), IntPolynomial([1, -1]))
    assert f == RationalGF(IntPolynomial([1, 1]), 1)
    assert RationalGF(IntPolynomial([1]), IntPolynomial([1, -1])).series(5) == [1, 1, 1, 1, 1]


def test_sum_closure_requires_no_constant_term():
    with pytest.raises(ValueError):
        gf_sum_closure(RationalGF(IntPolynomial([1, 1]), 1))


def test_closure_series_matches_construction():
    for p in ["1", "21", "231", "2413", "25314"]:
        f = profile_closure_gf(sum_indec_profile(p))
        assert f.series(9)[1:] == sum_closure_counts(p, 8)


def test_profile_growths_from_the_charts():
    assert abs(profile_growth(parse_profile("1,1,3,3,1")).approx - 2.29237) < 5e-5
    assert abs(profile_growth(parse_profile("1,1,3,8,6,1")).approx - 2.52326) < 5e-5
    assert abs(profile_growth(parse_profile("1,1,2,3,4^inf")).approx - named_constant("xi").approx) < 1e-9


def test_wedge_closure():
    g = RationalGF(IntPolynomial([0, 1, -1]), IntPolynomial([1, -2]))
    f = gf_sum_closure(g)
    assert f == RationalGF(IntPolynomial([1, -2]), IntPolynomial([1, -3, 1]))
    assert abs(growth_rate(f).approx - (3 + 5**0.5) / 2) < 1e-9


def test_spectrum_starts_with_small_values():
    values = [c.approx for c in spectrum_below(2.0001, 4, 4)]
    assert values[:3] == [0.0, 1.0, pytest.approx((1 + 5**0.5) / 2)]
    assert values[-1] == 2.0
    assert values == sorted(values)


def test_kgen_fibonacci():
    assert [kgen_fibonacci(n, 2) for n in range(7)] == [1, 1, 2, 3, 5, 8, 13]
