"""Two profiles whose sum closures both grow at xi, compared with the defining polynomial.

Run: python3 demos/xi_routes.py
"""
from fractions import Fraction

from permgrowth.classes import parse_profile
from permgrowth.gf import named_constant, profile_growth


def main():
    tol = Fraction(1, 10**12)
    xi = named_constant("xi").refine(tol)
    print(f"xi from x^5-2x^4-x^2-x-1: {xi.approx:.12f}")
    for text in ("1,1,2,3,4^inf", "1,1,2,4,3,3,2,1"):
        cert = profile_growth(parse_profile(text)).refine(tol)
        print(f"profile {text:>18}: {cert.approx:.12f}  polynomial {cert.polynomial}")


if __name__ == "__main__":
    main()
