"""Small exact-arithmetic helpers shared by every module."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Floats are refused: every quantity here must be exact. Strings such as
    ``"5/6"`` or ``"1"`` are accepted.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if any(c in text for c in ".eE"):
            raise ValueError(f"refusing non-exact rational {value!r}")
        return Fraction(text)
    if isinstance(value, tuple) and len(value) == 2:
        return Fraction(*value)
    raise TypeError(f"cannot interpret {value!r} exactly as a rational")


def floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def frac(q: Fraction) -> Fraction:
    """Fractional part, always in [0, 1)."""
    return q - floor(q)


def ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def lcm(values) -> int:
    return reduce(math.lcm, values, 1)


def binom(x: int, j: int) -> int:
    """Binomial coefficient with the polynomial definition in ``x``.

    ``binom(x, j) = x (x-1) ... (x-j+1) / j!`` for ``j >= 0`` and any integer
    ``x`` (so ``binom(-1, j) == (-1) ** j``); zero for ``j < 0``.
    """
    if j < 0:
        return 0
    if x >= 0:
        return math.comb(x, j)
    # binom(-y, j) = (-1)^j binom(y + j - 1, j)
    return (-1) ** j * math.comb(-x + j - 1, j)


@lru_cache(maxsize=None)
def prime_divisors(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("n must be positive")
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return tuple(primes)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def totient(n: int) -> int:
    result = n
    for p in prime_divisors(n):
        result -= result // p
    return result


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
