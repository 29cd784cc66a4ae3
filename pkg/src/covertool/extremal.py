"""Extremal density bounds for m-systems, the semigroup D(n), and classical
facts about disjoint covers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import binom, prime_divisors
from .errors import PreconditionFailed, TheoremViolated
from .systems import DEFAULT_SIEVE_CEILING, System, covering_profile, max_multiplicity


@dataclass
class SemigroupD:
    """Nonnegative integer combinations of the prime divisors of ``n``."""

    n: int
    prime_divisors: tuple[int, ...] = field(init=False)
    _members: list[bool] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("D(n) needs n >= 2")
        self.prime_divisors = prime_divisors(self.n)
        self._members = [True]

    def _grow(self, t: int):
        members = self._members
        for x in range(len(members), t + 1):
            members.append(any(x >= p and members[x - p] for p in self.prime_divisors))

    def __contains__(self, t: int) -> bool:
        if t < 0:
            return False
        self._grow(t)
        return self._members[t]


@lru_cache(maxsize=None)
def _semigroup(n: int) -> SemigroupD:
    return SemigroupD(n)


def d_membership(n: int, t: int) -> bool:
    if n < 2:
        raise ValueError("D(n) needs n >= 2")
    return t in _semigroup(n)


def tail_block(system: System, allow_all_equal: bool = False) -> int:
    """Number ``l`` of classes sharing the largest modulus.

    Requires ascending moduli. Unless ``allow_all_equal``, also requires
    ``0 < l < k`` so that a strictly smaller modulus precedes the block.
    """
    moduli = system.moduli
    if not moduli:
        raise PreconditionFailed("empty system has no top block")
    if not system.is_sorted():
        raise PreconditionFailed("moduli must be in ascending order")
    l = moduli.count(moduli[-1])
    if l == len(moduli) and not allow_all_equal:
        raise PreconditionFailed("all moduli are equal; need 0 < l < k")
    return l


@dataclass(frozen=True)
class ExtremalCheck:
    bound_holds: bool
    equality: bool
    extremal_form: bool
    density: Fraction
    bound: Fraction


def remark_1_5_system(k: int, m: int) -> System:
    """``m - 1`` copies of 0(1) followed by 1(2), 2(4), ..., 2^(k-m)(2^(k-m+1))."""
    if not k >= m >= 1:
        raise ValueError("need k >= m >= 1")
    pairs = [(0, 1)] * (m - 1) + [(2**j, 2 ** (j + 1)) for j in range(k - m + 1)]
    return System.of(pairs)


def theorem_1_2_check(system: System, m: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> ExtremalCheck:
    """Density of an m-system is at most ``m - 2^-(k-m+1)`` unless it equals ``m``,
    with equality exactly for moduli ``2^max(s-m+1, 0)``."""
    A = system.without_head()
    k = A.k
    if k < m:
        raise PreconditionFailed(f"need k >= m, got k={k}, m={m}")
    if not A.is_sorted():
        raise PreconditionFailed("moduli must be in ascending order")
    if max_multiplicity(A) > m:
        raise PreconditionFailed(f"not an {m}-system")
    density = A.density()
    if density == m:
        raise PreconditionFailed("sum of 1/n_s equals m")
    bound = m - Fraction(1, 2 ** (k - m + 1))
    extremal = all(n == 2 ** max(s - m + 1, 0) for s, n in enumerate(A.moduli, start=1))
    result = ExtremalCheck(density <= bound, density == bound, extremal, density, bound)
    if not result.bound_holds or result.equality != extremal:
        raise TheoremViolated(f"{A}: density {density} against bound {bound}, extremal form {extremal}")
    return result


@dataclass(frozen=True)
class DualVariant:
    alt1: bool
    alt2: bool
    l: int
    r: int


def dual_variant_check(system: System, m: int, r: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> DualVariant:
    """For an m-system with top block ``l``: ``sum 1/n_s <= m - r/n_k`` or
    ``binom(l + r - 1, r)`` lies in ``D(n_k)``."""
    A = system.without_head()
    l = tail_block(A)
    if max_multiplicity(A) > m:
        raise PreconditionFailed(f"not an {m}-system")
    moduli = A.moduli
    nk, below = moduli[-1], moduli[-l - 1]
    if not (r >= 0 and r * below < nk):
        raise PreconditionFailed(f"need 0 <= r < n_k/n_(k-l) = {nk}/{below}")
    alt1 = A.density() <= m - Fraction(r, nk)
    alt2 = d_membership(nk, binom(l + r - 1, r))
    if not (alt1 or alt2):
        raise TheoremViolated(f"{A}, r={r}: neither alternative holds")
    return DualVariant(alt1, alt2, l, r)


def newman_znam_check(system: System, ceiling: int = DEFAULT_SIEVE_CEILING) -> bool:
    """In an exact m-cover, the largest modulus occurs at least as often as its least prime divisor.

    The all-equal case is admitted with ``l = k``.
    """
    A = system.without_head()
    l = tail_block(A, allow_all_equal=True)
    profile = covering_profile(A, ceiling)
    if profile.min_multiplicity != profile.max_multiplicity or profile.min_multiplicity == 0:
        raise PreconditionFailed("not an exact m-cover")
    nk = A.moduli[-1]
    if nk == 1:
        raise PreconditionFailed("largest modulus is 1; it has no prime divisor")
    return l >= prime_divisors(nk)[0]


@dataclass(frozen=True)
class ClassicalChecks:
    dmnr: bool | None
    erdos62: bool | None


def classical_disjoint_checks(system: System, ceiling: int = DEFAULT_SIEVE_CEILING) -> ClassicalChecks:
    """Two facts about disjoint systems, each evaluated only when it applies.

    ``dmnr``: a disjoint cover with least modulus above 1 has its two largest
    moduli equal. ``erdos62``: strictly increasing moduli above 1 give
    ``sum 1/n_s <= 1 - 2^-k``. ``None`` marks a fact that does not apply.
    """
    A = system.without_head()
    profile = covering_profile(A, ceiling)
    if profile.max_multiplicity > 1:
        raise PreconditionFailed("not disjoint")
    moduli = sorted(A.moduli)
    k = len(moduli)
    dmnr = erdos = None
    if k and profile.min_multiplicity == 1 and moduli[0] > 1:
        dmnr = moduli[-2] == moduli[-1]
    if k and moduli[0] > 1 and all(a < b for a, b in zip(moduli, moduli[1:])):
        erdos = A.density() <= 1 - Fraction(1, 2**k)
    if dmnr is None and erdos is None:
        raise PreconditionFailed("neither a disjoint cover with n_1 > 1 nor strictly increasing moduli above 1")
    return ClassicalChecks(dmnr, erdos)
