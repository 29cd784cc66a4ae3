"""Subset sums of ``m_s / n_s`` grouped by value, with their signed root-of-unity sums.

This is where the dichotomy for systems ``{a_s(n_s)}_{s=0}^k`` whose
covering multiplicity exceeds ``floor(sum m_s/n_s)`` is checked: for each
``0 <= alpha < 1`` either every signed exponential sum over the subsets with
``sum = (alpha + a)/n_0`` vanishes, or those subsets are at least
``binom(m, floor(a/n_0))`` in number for every ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith import as_rational, binom, ceil, floor, frac, lcm
from .cyclotomic import CyclotomicElement
from .errors import EnumerationTooLarge, PreconditionFailed, TheoremViolated, TooManySubsets
from .systems import DEFAULT_SIEVE_CEILING, System, classify, covering_profile
from .tuplesums import count_table

MAX_SUBSET_K = 30
DEFAULT_WITNESS_CAP = 1024
DEFAULT_PRODUCT_CEILING = 10**7


@dataclass(frozen=True)
class WeightedSystem:
    system: System
    weights: tuple[int, ...]

    def __init__(self, system: System, weights: Iterable[int] | None = None):
        weights = tuple(weights) if weights is not None else (1,) * system.k
        if len(weights) != system.k:
            raise ValueError(f"expected {system.k} weights, got {len(weights)}")
        if any(not isinstance(w, int) or w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "weights", weights)

    @property
    def k(self) -> int:
        return self.system.k

    @property
    def terms(self) -> tuple[Fraction, ...]:
        """The ``m_s / n_s`` for the body classes."""
        return tuple(Fraction(w, c.n) for w, c in zip(self.weights, self.system.body))

    @property
    def total(self) -> Fraction:
        return sum(self.terms, Fraction(0))

    @property
    def m(self) -> int:
        return floor(self.total)

    @property
    def order(self) -> int:
        return self.system.period


@dataclass(frozen=True)
class SumClass:
    value: Fraction
    count: int
    witnesses: tuple[int, ...]
    csum: CyclotomicElement = field(repr=False)

    @property
    def csum_zero(self) -> bool:
        return self.csum.is_zero()

    def witness_sets(self) -> list[frozenset[int]]:
        """Witness bitmasks as 1-based index sets."""
        return [mask_to_set(m) for m in self.witnesses]


@dataclass(frozen=True)
class SumClassTable:
    order: int
    k: int
    classes: dict[Fraction, SumClass]

    def __getitem__(self, value) -> SumClass:
        return self.classes[as_rational(value)]

    def get(self, value) -> SumClass | None:
        return self.classes.get(as_rational(value))

    def count(self, value) -> int:
        c = self.get(value)
        return c.count if c else 0

    def csum(self, value) -> CyclotomicElement:
        c = self.get(value)
        return c.csum if c else CyclotomicElement.zero(self.order)

    def __iter__(self):
        return iter(self.classes.values())

    def __len__(self):
        return len(self.classes)


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def set_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def build_sum_table(W: WeightedSystem, witness_cap: int = DEFAULT_WITNESS_CAP) -> SumClassTable:
    """Every subset sum of the ``m_s/n_s`` with count, witnesses and signed sum.

    Classes are added one at a time; the subsets containing class ``s`` all
    have bitmasks above the ones that do not, so witness lists stay in
    ascending bitmask order when concatenated.
    """
    if W.k > MAX_SUBSET_K:
        raise TooManySubsets(f"k = {W.k} exceeds {MAX_SUBSET_K}")
    N = W.order
    # value -> [count, masks, group-ring coefficients]
    acc: dict[Fraction, list] = {Fraction(0): [1, [0], [1] + [0] * (N - 1)]}
    for s, (cls, w) in enumerate(zip(W.system.body, W.weights)):
        step = Fraction(w, cls.n)
        # e^{2 pi i a_s m_s / n_s} = zeta_N^(a_s m_s N / n_s)
        shift = (cls.a * w * (N // cls.n)) % N
        bit = 1 << s
        new = {v: [c, list(ms), list(cs)] for v, (c, ms, cs) in acc.items()}
        for v, (c, ms, cs) in acc.items():
            entry = new.setdefault(v + step, [0, [], [0] * N])
            entry[0] += c
            room = witness_cap - len(entry[1])
            if room > 0:
                entry[1].extend(m | bit for m in ms[:room])
            target = entry[2]
            for j, x in enumerate(cs):
                if x:
                    target[(j + shift) % N] -= x
        acc = new
    classes = {
        v: SumClass(v, c, tuple(ms), CyclotomicElement(N, tuple(cs)))
        for v, (c, ms, cs) in sorted(acc.items())
    }
    return SumClassTable(N, W.k, classes)


def _require_distinguished(W: WeightedSystem):
    if not W.system.distinguished:
        raise PreconditionFailed("needs a system with a distinguished class a_0(n_0)")


def _require_multiplicity(W: WeightedSystem, ceiling: int) -> int:
    mult = covering_profile(W.system, ceiling).min_multiplicity
    if mult <= W.m:
        raise PreconditionFailed(
            f"covering multiplicity {mult} of the full system does not exceed m = {W.m}"
        )
    return mult


@dataclass(frozen=True)
class DichotomyRow:
    a: int
    value: Fraction
    count: int
    bound: int
    csum_zero: bool
    witnesses: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class DichotomyReport:
    alpha: Fraction
    m: int
    n0: int
    branch: str
    vanishing: bool
    counting: bool
    rows: tuple[DichotomyRow, ...]

    def row(self, a: int) -> DichotomyRow:
        return next(r for r in self.rows if r.a == a)


def theorem_1_1_report(
    W: WeightedSystem,
    alpha=0,
    table: SumClassTable | None = None,
    ceiling: int = DEFAULT_SIEVE_CEILING,
) -> DichotomyReport:
    """Decide which side of the vanishing/counting dichotomy holds at ``alpha``.

    Only ``a`` with ``(alpha + a)/n_0 <= total`` can have nonempty classes; the
    range is extended up to ``(m + 1) n_0 - 1`` so that every ``a`` with a
    nonzero binomial bound is inspected. Beyond that both sides are trivially
    zero. ``branch`` is ``"Vanishing"`` when all signed sums vanish and
    ``"Counting"`` otherwise.
    """
    _require_distinguished(W)
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    _require_multiplicity(W, ceiling)
    table = table or build_sum_table(W)
    n0 = W.system.head.n
    m = W.m
    last = max((m + 1) * n0 - 1, floor(n0 * W.total - alpha))
    rows = []
    for a in range(last + 1):
        v = (alpha + a) / n0
        cls = table.get(v)
        rows.append(
            DichotomyRow(
                a=a,
                value=v,
                count=cls.count if cls else 0,
                bound=binom(m, a // n0),
                csum_zero=cls.csum_zero if cls else True,
                witnesses=tuple(cls.witness_sets()) if cls else (),
            )
        )
    vanishing = all(r.csum_zero for r in rows)
    counting = all(r.count >= r.bound for r in rows)
    if not (vanishing or counting):
        bad = next(r for r in rows if r.count < r.bound)
        raise TheoremViolated(
            f"alpha={alpha}: a nonvanishing signed sum exists but a={bad.a} has "
            f"{bad.count} < {bad.bound} subsets"
        )
    return DichotomyReport(
        alpha=alpha,
        m=m,
        n0=n0,
        branch="Vanishing" if vanishing else "Counting",
        vanishing=vanishing,
        counting=counting,
        rows=tuple(rows),
    )


def relevant_alphas(W: WeightedSystem, table: SumClassTable | None = None) -> list[Fraction]:
    """Every alpha for which some class ``(alpha + a)/n_0`` is nonempty."""
    _require_distinguished(W)
    table = table or build_sum_table(W)
    n0 = W.system.head.n
    return sorted({frac(n0 * v) for v in table.classes})


@dataclass(frozen=True)
class CountingCheck:
    holds: bool
    m: int
    rows: tuple[tuple[int, int, int], ...]  # (a or n, count, bound)
    counterexample: tuple[int, int, int] | None = None


def corollary_1_1_check(system: System, ceiling: int = DEFAULT_SIEVE_CEILING) -> CountingCheck:
    """Unit-weight counting bound: at least ``binom(m, floor(a/n_0))`` subsets sum to ``a/n_0``."""
    W = WeightedSystem(system)
    _require_distinguished(W)
    _require_multiplicity(W, ceiling)
    table = build_sum_table(W, witness_cap=0)
    n0 = system.head.n
    m = W.m
    rows = []
    for a in range((m + 1) * n0):
        rows.append((a, table.count(Fraction(a, n0)), binom(m, a // n0)))
    bad = next((r for r in rows if r[1] < r[2]), None)
    return CountingCheck(bad is None, m, tuple(rows), bad)


def _require_product(system: System, ceiling: int):
    prod = 1
    for n in system.moduli:
        prod *= n
    if prod > ceiling:
        raise EnumerationTooLarge(f"product of moduli {prod} exceeds {ceiling}")


def corollary_1_2_check(
    system: System,
    ceiling: int = DEFAULT_SIEVE_CEILING,
    product_ceiling: int = DEFAULT_PRODUCT_CEILING,
) -> CountingCheck:
    """Tuples ``m_s in [1, n_s]`` with ``sum m_s/n_s = n``: at least ``binom(k-m, n-m)`` of them."""
    A = system.without_head()
    m = ceil(A.density())
    if A.k == 0 or m < 1:
        raise PreconditionFailed("needs a nonempty system")
    if not classify(A, m, ceiling).is_m_system:
        raise PreconditionFailed(f"not an m-system for m = ceil(sum 1/n_s) = {m}")
    _require_product(A, product_ceiling)
    N = A.period
    k = A.k
    counts = count_table(A.moduli, [1] * k, list(A.moduli), k * N)
    rows = tuple((n, counts[n * N], binom(k - m, n - m)) for n in range(m, k + 1))
    bad = next((r for r in rows if r[1] < r[2]), None)
    return CountingCheck(bad is None, m, rows, bad)


@dataclass(frozen=True)
class UniqueSubsetCheck:
    unique: bool
    value: Fraction
    fractions_fit: bool
    reaches_m: bool


def corollary_1_3_check(
    W: WeightedSystem, J: Iterable[int], ceiling: int = DEFAULT_SIEVE_CEILING
) -> UniqueSubsetCheck:
    """If no other subset shares the sum of ``J``, the fractional-part and size
    inequalities must hold. ``J`` holds 1-based body indices."""
    _require_distinguished(W)
    _require_multiplicity(W, ceiling)
    J = frozenset(J)
    if not J <= set(range(1, W.k + 1)):
        raise ValueError(f"J must be a subset of [1, {W.k}]")
    terms = W.terms
    v = sum((terms[s - 1] for s in J), Fraction(0))
    rest = W.total - v
    table = build_sum_table(W, witness_cap=0)
    unique = table.count(v) == 1
    n0 = W.system.head.n
    fractions_fit = frac(n0 * v) + frac(n0 * rest) < 1
    reaches_m = v >= W.m or rest >= W.m
    if unique and not (fractions_fit and reaches_m):
        raise TheoremViolated(f"J={sorted(J)} has a unique sum {v} but the inequalities fail")
    return UniqueSubsetCheck(unique, v, fractions_fit, reaches_m)


@dataclass(frozen=True)
class Alternatives:
    alt1: bool
    alt2: bool
    l: int
    r: int


def corollary_1_4_check(system: System, m: int, r: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> Alternatives:
    """For an m-cover with a strict top block of ``l`` equal largest moduli:
    either dropping the ``r`` largest classes keeps ``sum 1/n_s >= m`` or
    ``binom(l, r)`` lies in ``D(n_k)``."""
    from .extremal import d_membership, tail_block

    A = system.without_head()
    l = tail_block(A)
    if not classify(A, m, ceiling).is_m_cover:
        raise PreconditionFailed(f"not an {m}-cover")
    moduli = A.moduli
    k = A.k
    nk, below = moduli[-1], moduli[k - l - 1]
    if not (0 <= r <= l and r * below < nk):
        raise PreconditionFailed(f"need 0 <= r <= l = {l} and r < n_k/n_(k-l) = {nk}/{below}")
    alt1 = sum((Fraction(1, n) for n in moduli[: k - r]), Fraction(0)) >= m
    alt2 = d_membership(nk, binom(l, r))
    if not (alt1 or alt2):
        raise TheoremViolated(f"r={r}: neither alternative holds")
    return Alternatives(alt1, alt2, l, r)


def representable_integers(
    system: System,
    ceiling: int = DEFAULT_SIEVE_CEILING,
    product_ceiling: int = DEFAULT_PRODUCT_CEILING,
) -> frozenset[int]:
    """Integers ``n in [1, k]`` equal to ``sum m_s/n_s`` for some ``m_s in [1, n_s]``.

    With ``m`` the largest value of the covering function, the system is an
    m-system, so at most ``m - 1`` integers of ``[1, k]`` may be missing and
    ``m`` itself must be representable; either failure raises.
    """
    A = system.without_head()
    _require_product(A, product_ceiling)
    k = A.k
    if k == 0:
        return frozenset()
    N = A.period
    counts = count_table(A.moduli, [1] * k, list(A.moduli), k * N)
    result = frozenset(n for n in range(1, k + 1) if counts[n * N])
    m = covering_profile(A, ceiling).max_multiplicity
    missing = k - len(result)
    if missing > m - 1 or m not in result:
        raise TheoremViolated(
            f"{A} is a {m}-system but {missing} integers of [1, {k}] are not representable"
        )
    return result
