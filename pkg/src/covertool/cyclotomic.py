"""Exact arithmetic in Z[zeta_N].

Elements live in the group ring Z[x]/(x^N - 1): appending a root of unity is
a single coefficient update. Equality and zero tests reduce modulo the
cyclotomic polynomial Phi_N, the minimal polynomial of zeta_N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .arith import divisors, totient
from .errors import NormNotRationalInteger


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divmod_monic(p: Sequence[int], d: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of ``p`` by the monic ``d`` (coefficients low to high)."""
    rem = list(p)
    dd = len(d) - 1
    if len(rem) <= dd:
        return [0], rem + [0] * (dd - len(rem))
    quot = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * d[j]
    return quot, rem[:dd]


@dataclass(frozen=True)
class CyclotomicPolynomial:
    n: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return sum(c * x**i for i, c in enumerate(self.coeffs))

    def __str__(self):
        return format_poly(self.coeffs)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> CyclotomicPolynomial:
    """Phi_n by exact division of x^n - 1 by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, cyclotomic_poly(d).coeffs)
    quot, rem = _poly_divmod_monic(num, den)
    assert not any(rem), "x^n - 1 not divisible by the product of lower cyclotomics"
    return CyclotomicPolynomial(n, tuple(quot))


@lru_cache(maxsize=None)
def _reduction_matrix(N: int) -> np.ndarray:
    """Row j holds the coordinates of x^j mod Phi_N in the basis 1, x, ..., x^(phi-1)."""
    phi = cyclotomic_poly(N).coeffs
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(N):
        rows.append(cur)
        # multiply by x, then eliminate the x^deg term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    mat = np.array(rows, dtype=object)
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=None)
def _reduction_matrix_i64(N: int) -> np.ndarray:
    mat = _reduction_matrix(N)
    out = mat.astype(np.int64)
    out.setflags(write=False)
    return out


def reduce_coeffs(N: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    """Canonical coordinates of sum c_j x^j modulo Phi_N (length phi(N))."""
    rows = _reduction_matrix(N)
    deg = rows.shape[1]
    out = [0] * deg
    for j, c in enumerate(coeffs):
        if c:
            row = rows[j % N]
            for i in range(deg):
                out[i] += c * row[i]
    return tuple(out)


def zero_rows(N: int, matrix) -> np.ndarray:
    """Zero test for many group-ring elements at once.

    ``matrix`` has one element per row (N columns of group-ring coefficients).
    Returns a boolean vector. Uses int64 only when the products provably fit.
    """
    mat = np.asarray(matrix)
    if mat.ndim == 1:
        mat = mat[None, :]
    if mat.shape[0] == 0:
        return np.ones(0, dtype=bool)
    red = _reduction_matrix_i64(N)
    bound = int(np.abs(mat).max(initial=0)) * int(np.abs(red).max(initial=0)) * N
    if mat.dtype != object and bound < 2**62:
        reduced = mat.astype(np.int64, copy=False) @ red
    else:
        reduced = mat.astype(object) @ _reduction_matrix(N)
    return np.all(reduced == 0, axis=1)


@dataclass(frozen=True, eq=False)
class CyclotomicElement:
    """``sum coeffs[j] * zeta_order**j`` with zeta a primitive root of unity."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        c = tuple(int(v) for v in self.coeffs)
        if len(c) != self.order:
            raise ValueError("need exactly `order` coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, order: int) -> CyclotomicElement:
        return cls(order, (0,) * order)

    @classmethod
    def integer(cls, value: int, order: int = 1) -> CyclotomicElement:
        return cls(order, (value,) + (0,) * (order - 1))

    @classmethod
    def from_exponents(cls, order: int, terms) -> CyclotomicElement:
        """Sum of ``c * zeta^e`` over ``(e, c)`` pairs (or bare exponents)."""
        coeffs = [0] * order
        for t in terms:
            e, c = t if isinstance(t, tuple) else (t, 1)
            coeffs[e % order] += c
        return cls(order, tuple(coeffs))

    def reduced(self) -> tuple[int, ...]:
        return reduce_coeffs(self.order, self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def lift(self, order: int) -> CyclotomicElement:
        """The same number written in Z[zeta_order]; ``self.order`` must divide ``order``."""
        if order % self.order:
            raise ValueError(f"{self.order} does not divide {order}")
        step = order // self.order
        coeffs = [0] * order
        for j, c in enumerate(self.coeffs):
            coeffs[j * step] = c
        return CyclotomicElement(order, tuple(coeffs))

    def _common(self, other):
        if isinstance(other, int):
            other = CyclotomicElement.integer(other, self.order)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented, NotImplemented
        if other.order == self.order:
            return self, other
        N = math.lcm(self.order, other.order)
        return self.lift(N), other.lift(N)

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CyclotomicElement(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicElement(self.order, tuple(other * x for x in self.coeffs))
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        N = a.order
        out = [0] * N
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % N] += x * y
        return CyclotomicElement(N, tuple(out))

    __rmul__ = __mul__

    def __eq__(self, other):
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.is_zero()

    # equality crosses orders (1 in Z[zeta_1] equals 1 in Z[zeta_4]), so no hash
    __hash__ = None

    def conjugate(self, r: int) -> CyclotomicElement:
        """The Galois image under zeta -> zeta^r (r coprime to the order)."""
        if math.gcd(r, self.order) != 1:
            raise ValueError("r must be coprime to the order")
        return CyclotomicElement.from_exponents(
            self.order, ((j * r, c) for j, c in enumerate(self.coeffs) if c)
        )

    def __str__(self):
        terms = [(j, c) for j, c in enumerate(self.coeffs) if c]
        if not terms:
            return "0"
        out = []
        for j, c in terms:
            mono = "" if j == 0 else ("ζ" if j == 1 else f"ζ^{j}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}·{mono}"
            out.append(("-" if c < 0 else "+") + body)
        text = " ".join(out)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"CyclotomicElement({self.order}, {self.coeffs})"


def root_of_unity(N: int, num: int) -> CyclotomicElement:
    """zeta_N ** num."""
    if N < 1:
        raise ValueError("N must be positive")
    return CyclotomicElement.from_exponents(N, [num])


def phase(order: int, q: Fraction) -> int:
    """Exponent j with e^{2 pi i q} = zeta_order^j; the denominator of q must divide order."""
    q = Fraction(q)
    if order % q.denominator:
        raise ValueError(f"denominator of {q} does not divide {order}")
    return (q.numerator * (order // q.denominator)) % order


def is_zero(e: CyclotomicElement) -> bool:
    return e.is_zero()


def galois_norm(e: CyclotomicElement) -> int:
    """Product of all Galois conjugates of ``e``; a rational integer."""
    N = e.order
    acc = CyclotomicElement.integer(1, N)
    for r in range(1, N + 1):
        if math.gcd(r, N) == 1:
            red = reduce_coeffs(N, (acc * e.conjugate(r)).coeffs)
            acc = CyclotomicElement(N, red + (0,) * (N - len(red)))
    red = acc.reduced()
    if any(red[1:]):
        raise NormNotRationalInteger(f"norm reduced to non-constant {red}")
    return red[0]


def subset_power_sums(n: int) -> list[list[int]]:
    """``out[l][e]`` = number of l-subsets of [1, n) whose sum is e mod n."""
    table = [[0] * n for _ in range(n)]
    table[0][0] = 1
    for j in range(1, n):
        for size in range(j, 0, -1):
            prev, row = table[size - 1], table[size]
            for e in range(n):
                if prev[e]:
                    row[(e + j) % n] += prev[e]
    return table


def lemma_3_2_check(n: int, l: int) -> bool:
    """Sum of zeta_n^(sum J) over l-subsets J of [1, n) equals (-1)^l."""
    if not 0 <= l < n:
        raise ValueError("need 0 <= l < n")
    lhs = CyclotomicElement(n, tuple(subset_power_sums(n)[l]))
    return (lhs - (-1) ** l).is_zero()


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        terms.append(("- " if c < 0 else "+ ") + body)
    if not terms:
        return "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


__all__ = [
    "CyclotomicElement",
    "CyclotomicPolynomial",
    "cyclotomic_poly",
    "galois_norm",
    "is_zero",
    "lemma_3_2_check",
    "phase",
    "reduce_coeffs",
    "root_of_unity",
    "totient",
    "zero_rows",
]
