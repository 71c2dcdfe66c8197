"""Exact integer-root, logarithm-comparison and rational formatting helpers.

Nothing here touches floating point except :func:`decimal_str`, which is
presentation only.
"""
from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import isqrt


def ceil_sqrt(n: int) -> int:
    """Smallest ``c >= 0`` with ``c*c >= n``."""
    if n <= 0:
        return 0
    s = isqrt(n)
    return s if s * s == n else s + 1


def floor_ksqrt(k: int, n: int) -> int:
    """floor(k * sqrt(n)) for integers ``k, n >= 0``."""
    return isqrt(k * k * n)


def ceil_ksqrt(k: int, n: int) -> int:
    """ceil(k * sqrt(n)) for integers ``k, n >= 0``; e.g. ceil(2 sqrt 17) = 9."""
    return ceil_sqrt(k * k * n)


def ceil_sqrt_fraction(x: Fraction) -> int:
    """ceil(sqrt(x)) for a nonnegative rational."""
    x = Fraction(x)
    c = ceil_sqrt(x.numerator // x.denominator)
    while c > 0 and (c - 1) ** 2 * x.denominator >= x.numerator:
        c -= 1
    while c * c * x.denominator < x.numerator:
        c += 1
    return c


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def sqrt_exact(x: Fraction) -> Fraction | None:
    """sqrt(x) when ``x`` is the square of a rational, else ``None``."""
    x = Fraction(x)
    if x < 0:
        return None
    if is_square(x.numerator) and is_square(x.denominator):
        return Fraction(isqrt(x.numerator), isqrt(x.denominator))
    return None


def sqrt_interval(x: Fraction | int, digits: int = 9) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= sqrt(x) <= hi`` and ``hi - lo <= 10**-digits``.

    Degenerates to ``(s, s)`` when ``x`` is a rational square.
    """
    x = Fraction(x)
    exact = sqrt_exact(x)
    if exact is not None:
        return exact, exact
    scale = 10**digits
    # floor(sqrt(x) * scale) = isqrt(floor(x * scale^2))
    lo_num = isqrt(x.numerator * scale * scale // x.denominator)
    return Fraction(lo_num, scale), Fraction(lo_num + 1, scale)


def sqrt_ge(a: Fraction | int, k: int, n: int) -> bool:
    """Decide ``a >= k * sqrt(n)`` exactly (``k, n >= 0``)."""
    a = Fraction(a)
    if a < 0:
        return False
    return a * a >= k * k * n


def sqrt_gt(a: Fraction | int, k: int, n: int) -> bool:
    """Decide ``a > k * sqrt(n)`` exactly."""
    a = Fraction(a)
    if a < 0:
        return False
    return a * a > k * k * n


def floor_theta_log2(q: int, r: int, theta: Fraction) -> int:
    """floor(theta * r * log2 q): the largest ``a`` with ``2**a <= q**(theta*r)``.

    With ``theta = u/v`` the test ``2**(a*v) <= q**(u*r)`` reduces to the bit
    length of ``q**(u*r)``.
    """
    theta = Fraction(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    u, v = theta.numerator, theta.denominator
    big = q ** (u * r)
    return (big.bit_length() - 1) // v


def ceil_log_ratio(r: int, q: int, k: int = 2) -> int:
    """ceil(k * log r / log q): the smallest ``c >= 0`` with ``q**c >= r**k``."""
    if r < 1 or q < 2:
        raise ValueError("need r >= 1 and q >= 2")
    target = r**k
    c, power = 0, 1
    while power < target:
        power *= q
        c += 1
    return c


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def frac_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction | int, places: int = 6) -> str:
    """Decimal rendering for display; never used in a verification path."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))
