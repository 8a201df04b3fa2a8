"""The reduced first-order linear recurrence V_{n+1} = a_n V_n + b_n.

``v_closed`` evaluates the closed form

    V_n = V_0 * prod_{k=0}^{n-1} a_k  +  sum_{l=0}^{n-1} b_l * prod_{k=l+1}^{n-1} a_k

in a single left-to-right pass (running product and Horner-style running
sum), O(n) rational operations instead of the literal O(n^2) nested
products.  Tests keep the literal form as the oracle.
"""

from __future__ import annotations

from fractions import Fraction

from ratrec.core import CoefficientStream, Rational


def v_step(v: Rational, a_n: Rational, b_n: Rational) -> Rational:
    return a_n * v + b_n


def v_closed(v0: Rational, coeffs: CoefficientStream, n: int) -> Rational:
    """Closed-form V_n for the given coefficient stream, exactly."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    prod = Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        a_k, b_k = coeffs.at(k)
        prod *= a_k
        acc = acc * a_k + b_k
    return v0 * prod + acc


def v_closed_constant(v0: Rational, a: Rational, b: Rational, n: int) -> Rational:
    """Constant-coefficient specialization.

    a = 1: V_n = v0 + n*b.  Otherwise the geometric sum
    V_n = v0*a^n + b*(1 - a^n)/(1 - a).  Branch selection is exact
    equality, so the a != 1 branch never divides by zero.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    a, b, v0 = Fraction(a), Fraction(b), Fraction(v0)
    if a == 1:
        return v0 + n * b
    an = a ** n
    return v0 * an + b * (1 - an) / (1 - a)
