"""If-and-only-if certificates for m-covers and m-systems.

Each check evaluates an exponential-sum identity exactly in Z[zeta_N] and,
where the identity characterizes a covering property, compares the verdict
with the direct sieve. A disagreement raises
:class:`~covertool.errors.CharacterizationMismatch`.

The identities range over a real parameter in [0, 1); only the finitely many
fractional parts r/N can carry a nonempty sum, so those are the ones tested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import as_rational, binom, floor, frac
from .cyclotomic import CyclotomicElement, zero_rows
from .errors import CharacterizationMismatch, PreconditionFailed
from .subset_sums import WeightedSystem, build_sum_table
from .systems import DEFAULT_SIEVE_CEILING, ResidueClass, System, classify, covering_profile, max_multiplicity
from .tuplesums import DEFAULT_MAX_CELLS, tuple_table


@dataclass(frozen=True)
class Lemma21Certificate:
    divides: bool
    multiplicities: tuple[int, ...]
    coprime: bool


def lemma_2_1_certificate(W: WeightedSystem, m: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> Lemma21Certificate:
    """Divisibility of ``prod_s (1 - z^(N m_s/n_s) e^(2 pi i a_s m_s/n_s))`` by ``(1 - z^N)^m``.

    ``e^(2 pi i r/N)`` is a root of the product of multiplicity
    ``M_r = #{s : n_s | m_s (r + a_s)}``, so divisibility is ``min M_r >= m``.
    The condition ``n_s | m_s (r + a_s)`` says ``r = -a_s`` modulo
    ``n_s / gcd(m_s, n_s)``, which turns ``M`` into a covering function.
    """
    A = W.system.without_head()
    shadow = System(
        tuple(ResidueClass(-c.a, c.n // math.gcd(w, c.n)) for c, w in zip(A.body, W.weights))
    )
    N = A.period
    if N > ceiling:
        covering_profile(A, ceiling)  # raises SieveTooLarge
    counts = np.zeros(N, dtype=np.int64)
    for c in shadow.classes:
        counts[c.a :: c.n] += 1
    mult = tuple(int(x) for x in counts)
    divides = min(mult) >= m
    coprime = all(math.gcd(w, c.n) == 1 for c, w in zip(A.body, W.weights))
    if coprime and divides != classify(A, m, ceiling).is_m_cover:
        raise CharacterizationMismatch(f"{A}: divisibility {divides} disagrees with the sieve")
    return Lemma21Certificate(divides, mult, coprime)


def lemma_2_1_polynomial(W: WeightedSystem, m: int, max_order: int = 48) -> bool:
    """Literal check: multiply out the product over Z[zeta_N] and divide by ``(1 - z^N)`` ``m`` times."""
    A = W.system.without_head()
    N = A.period
    if N > max_order:
        raise PreconditionFailed(f"literal division limited to N <= {max_order}, got {N}")
    degree = sum(N * w // c.n for c, w in zip(A.body, W.weights))
    poly = np.zeros((degree + 1, N), dtype=object)
    poly[0, 0] = 1
    top = 0
    for c, w in zip(A.body, W.weights):
        d = N * w // c.n
        e = (c.a * w * (N // c.n)) % N
        shifted = np.roll(poly[: top + 1], e, axis=1)
        poly[d : d + top + 1] -= shifted
        top += d
    for _ in range(m):
        if top < N:
            return bool(zero_rows(N, poly[: top + 1]).all())
        quot = np.zeros((top - N + 1, N), dtype=object)
        for i in range(top - N + 1):
            quot[i] = poly[i] + (quot[i - N] if i >= N else 0)
        # remainder terms at degrees top-N+1 .. top
        tail = np.array([poly[i] + (quot[i - N] if i >= N else 0) for i in range(top - N + 1, top + 1)], dtype=object)
        if not zero_rows(N, tail).all():
            return False
        poly, top = quot, top - N
    return True


@dataclass(frozen=True)
class SAlphaSum:
    n: int
    alpha: Fraction
    value: CyclotomicElement = field(repr=False)


def s_alpha(system: System, n: int, alpha=0, max_cells: int = DEFAULT_MAX_CELLS) -> SAlphaSum:
    """Signed binomial sum over tuples ``m_s >= 1`` with ``sum m_s/n_s - alpha`` in ``{0..n}``.

    Each tuple with ``sum = alpha + j`` contributes
    ``(-1)^j binom(n, j) e^(2 pi i sum a_s m_s/n_s)``. For ``alpha`` in [0, 1)
    ``j`` is the integer part of the sum.
    """
    A = system.without_head()
    alpha = as_rational(alpha)
    if n < 0 or alpha < 0:
        raise ValueError("need n >= 0 and alpha >= 0")
    N = A.period
    if (alpha * N).denominator != 1:
        return SAlphaSum(n, alpha, CyclotomicElement.zero(N))
    base = int(alpha * N)
    zmax = base + n * N
    table = tuple_table(A.moduli, A.residues, [1] * A.k, [None] * A.k, zmax, max_cells=max_cells)
    row = [0] * N
    for j in range(n + 1):
        coef = (-1) ** j * binom(n, j)
        for p, x in enumerate(table[base + j * N]):
            row[p] += coef * int(x)
    return SAlphaSum(n, alpha, CyclotomicElement(N, tuple(row)))


def _binomial_rows(table, N: int, nrows: int, weights) -> np.ndarray:
    """``sum_j weights[j] * table[jN + r]`` for every r, as an ``(N, N)`` array."""
    blocks = np.zeros((nrows * N, table.shape[1]), dtype=table.dtype)
    cut = min(table.shape[0], nrows * N)
    blocks[:cut] = table[:cut]
    blocks = blocks.reshape(nrows, N, table.shape[1])
    w = np.array(weights, dtype=object if table.dtype == object else np.int64)
    return np.tensordot(w, blocks, axes=1)


def theorem_1_3_check(system: System, m: int, ceiling: int = DEFAULT_SIEVE_CEILING,
                      max_cells: int = DEFAULT_MAX_CELLS) -> bool:
    """m-system test through ``S(n, alpha)`` for ``n in [m, k)``:
    ``S(n, 0) = (-1)^k`` and ``S(n, alpha) = 0`` for ``0 < alpha < 1``."""
    A = system.without_head()
    k = A.k
    N = A.period
    verdict = True
    if k > m:
        # sums below k cover every n < k together with alpha < 1
        table = tuple_table(A.moduli, A.residues, [1] * k, [None] * k, k * N - 1, max_cells=max_cells)
        for n in range(m, k):
            rows = _binomial_rows(table, N, n + 1, [(-1) ** j * binom(n, j) for j in range(n + 1)])
            rows[0, 0] -= (-1) ** k
            if not zero_rows(N, rows).all():
                verdict = False
                break
    if verdict != classify(A, m, ceiling).is_m_system:
        raise CharacterizationMismatch(f"{A}: S(n, alpha) test gives {verdict} for m={m}")
    return verdict


def lemma_3_1_check(W: WeightedSystem, m: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> bool:
    """m-cover identity: for every theta and ``n < m``, the subsets with
    ``{sum m_s/n_s} = theta`` weighted by ``(-1)^|I| binom(floor, n)`` cancel."""
    A = W.system.without_head()
    W = WeightedSystem(A, W.weights)
    table = build_sum_table(W, witness_cap=0)
    N = table.order
    groups: dict[Fraction, list] = {}
    for cls in table:
        groups.setdefault(frac(cls.value), []).append(cls)
    rows = []
    for n in range(m):
        for members in groups.values():
            row = [0] * N
            for cls in members:
                coef = binom(floor(cls.value), n)
                if coef:
                    for p, x in enumerate(cls.csum.coeffs):
                        row[p] += coef * x
            rows.append(row)
    verdict = bool(zero_rows(N, np.array(rows)).all()) if rows else True
    coprime = all(math.gcd(w, c.n) == 1 for c, w in zip(A.body, W.weights))
    if coprime and verdict != classify(A, m, ceiling).is_m_cover:
        raise CharacterizationMismatch(f"{A}: subset identity gives {verdict} for m={m}")
    return verdict


def theorem_3_1_check(system: System, m: int, ceiling: int = DEFAULT_SIEVE_CEILING,
                      max_cells: int = DEFAULT_MAX_CELLS) -> bool:
    """m-system test through tuples ``x_s in [0, n_s)`` grouped by the
    fractional part of ``sum x_s/n_s``, weighted by ``binom(floor, n)`` for ``n < k - m``."""
    A = system.without_head()
    k = A.k
    N = A.period
    verdict = True
    if k > m:
        zmax = sum(N - N // n for n in A.moduli)
        table = tuple_table(A.moduli, A.residues, [0] * k, [n - 1 for n in A.moduli], zmax,
                            max_cells=max_cells)
        nrows = zmax // N + 1
        for n in range(k - m):
            rows = _binomial_rows(table, N, nrows, [binom(f, n) for f in range(nrows)])
            if not zero_rows(N, rows).all():
                verdict = False
                break
    if verdict != classify(A, m, ceiling).is_m_system:
        raise CharacterizationMismatch(f"{A}: tuple identity gives {verdict} for m={m}")
    return verdict


def corollary_1_5_check(system: System, ceiling: int = DEFAULT_SIEVE_CEILING,
                        max_cells: int = DEFAULT_MAX_CELLS) -> bool:
    """For a disjoint system: ``sum`` of ``e^(2 pi i sum a_s m_s/n_s)`` over ``m_s >= 1``
    with ``sum m_s/n_s = 1`` equals ``(-1)^(k-1)``."""
    A = system.without_head()
    if A.k == 0:
        raise PreconditionFailed("needs at least one class")
    if max_multiplicity(A) > 1:
        raise PreconditionFailed("not disjoint")
    N = A.period
    table = tuple_table(A.moduli, A.residues, [1] * A.k, [None] * A.k, N, max_cells=max_cells)
    lhs = CyclotomicElement(N, tuple(int(x) for x in table[N]))
    return (lhs - (-1) ** (A.k - 1)).is_zero()


def corollary_3_1_check(system: System, m: int, ceiling: int = DEFAULT_SIEVE_CEILING,
                        max_cells: int = DEFAULT_MAX_CELLS) -> bool:
    """For an m-system: over ``m_s in [1, n_s]`` with ``m - sum m_s/n_s = j'`` a
    nonnegative integer, ``binom(k - 1 - sum, m - sum)`` weighted phases add
    to ``(-1)^(k-m)``."""
    A = system.without_head()
    k = A.k
    if max_multiplicity(A) > m:
        raise PreconditionFailed(f"not an {m}-system")
    N = A.period
    top = min(m, k)
    table = tuple_table(A.moduli, A.residues, [1] * k, list(A.moduli), top * N, max_cells=max_cells)
    row = [0] * N
    for j in range(top + 1):
        coef = binom(k - 1 - j, m - j)
        if coef:
            for p, x in enumerate(table[j * N]):
                row[p] += coef * int(x)
    lhs = CyclotomicElement(N, tuple(row))
    return (lhs - (-1) ** abs(k - m)).is_zero()
