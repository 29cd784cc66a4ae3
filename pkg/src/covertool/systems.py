"""Residue classes, finite systems of them, and their covering functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import lcm
from .errors import InvalidModulus, SieveTooLarge

DEFAULT_SIEVE_CEILING = 10**7


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The class ``a(n) = {x : x = a mod n}`` stored with ``0 <= a < n``."""

    # field order gives the canonical (n, a) sort
    n: int
    a: int

    def __init__(self, a: int, n: int):
        if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
            raise InvalidModulus(f"modulus must be a positive integer, got {n!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", int(a) % n)

    def __contains__(self, x: int) -> bool:
        return (x - self.a) % self.n == 0

    def intersects(self, other: ResidueClass) -> bool:
        return (self.a - other.a) % math.gcd(self.n, other.n) == 0

    def shifted(self, r: int) -> ResidueClass:
        return ResidueClass(self.a + r, self.n)

    def __str__(self):
        return f"{self.a}({self.n})"

    def __repr__(self):
        return f"ResidueClass({self.a}, {self.n})"


def intersect(c: ResidueClass, d: ResidueClass) -> ResidueClass | None:
    """Intersection of two classes as a class, or None when they are disjoint."""
    g = math.gcd(c.n, d.n)
    if (c.a - d.a) % g:
        return None
    n = c.n // g * d.n
    # x = c.a + c.n * t with c.n * t = d.a - c.a (mod d.n)
    t = ((d.a - c.a) // g) * pow(c.n // g, -1, d.n // g) if d.n // g > 1 else 0
    return ResidueClass(c.a + c.n * t, n)


@dataclass(frozen=True)
class System:
    """An ordered finite list of residue classes.

    With ``distinguished=True`` the first class plays the role of the extra
    class ``a_0(n_0)`` and :attr:`body` holds the remaining ``k`` classes.
    """

    classes: tuple[ResidueClass, ...] = ()
    distinguished: bool = False

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if self.distinguished and not self.classes:
            raise ValueError("a distinguished system needs at least one class")

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]], distinguished=False) -> System:
        """Build from ``(a, n)`` pairs."""
        return cls(tuple(ResidueClass(a, n) for a, n in pairs), distinguished)

    @property
    def head(self) -> ResidueClass | None:
        return self.classes[0] if self.distinguished else None

    @property
    def body(self) -> tuple[ResidueClass, ...]:
        return self.classes[1:] if self.distinguished else self.classes

    @property
    def k(self) -> int:
        """Number of classes excluding a distinguished one."""
        return len(self.body)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(c.n for c in self.body)

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(c.a for c in self.body)

    @property
    def period(self) -> int:
        return lcm(c.n for c in self.classes)

    def density(self) -> Fraction:
        """Sum of 1/n_s over the body classes."""
        return sum((Fraction(1, n) for n in self.moduli), Fraction(0))

    def plain(self) -> System:
        """All classes, with no distinguished marker."""
        return System(self.classes)

    def with_head(self, head: ResidueClass) -> System:
        return System((head,) + self.body, distinguished=True)

    def without_head(self) -> System:
        return System(self.body)

    def canonical(self) -> System:
        """Body sorted by (modulus, residue); a distinguished head stays first."""
        body = tuple(sorted(self.body))
        return System(((self.head,) if self.distinguished else ()) + body, self.distinguished)

    def is_sorted(self) -> bool:
        m = self.moduli
        return all(m[i] <= m[i + 1] for i in range(len(m) - 1))

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __str__(self):
        from .textio import format_system

        return format_system(self)


@dataclass(frozen=True)
class CoveringProfile:
    period: int
    counts: np.ndarray = field(repr=False, compare=False)
    min_multiplicity: int
    max_multiplicity: int
    average: Fraction

    def w(self, x: int) -> int:
        return int(self.counts[x % self.period])


def covering_profile(system: System, ceiling: int = DEFAULT_SIEVE_CEILING) -> CoveringProfile:
    """Covering function of every class of ``system`` over one full period.

    Each class is stepped through its own residues, so the cost is
    ``sum(N / n_s)`` rather than ``k * N`` membership tests.
    """
    N = system.period
    if N > ceiling:
        raise SieveTooLarge(f"lcm of moduli is {N}, above the sieve ceiling {ceiling}")
    counts = np.zeros(N, dtype=np.int64)
    for c in system.classes:
        counts[c.a :: c.n] += 1
    counts.setflags(write=False)
    total = int(counts.sum())
    return CoveringProfile(
        period=N,
        counts=counts,
        min_multiplicity=int(counts.min()),
        max_multiplicity=int(counts.max()),
        average=Fraction(total, N),
    )


@dataclass(frozen=True)
class Classification:
    m: int
    is_m_cover: bool
    is_exact_m_cover: bool
    is_m_system: bool


def classify(system: System, m: int, ceiling: int = DEFAULT_SIEVE_CEILING) -> Classification:
    if m < 0:
        raise ValueError("m must be nonnegative")
    p = covering_profile(system, ceiling)
    return Classification(
        m=m,
        is_m_cover=p.min_multiplicity >= m,
        is_exact_m_cover=p.min_multiplicity == p.max_multiplicity == m,
        is_m_system=p.max_multiplicity <= m,
    )


def covering_multiplicity(system: System, ceiling: int = DEFAULT_SIEVE_CEILING) -> int:
    return covering_profile(system, ceiling).min_multiplicity


def dual(system: System) -> System:
    """All shifts ``a_s + r (n_s)`` with ``1 <= r < n_s``, ordered by (s, r)."""
    return System(tuple(c.shifted(r) for c in system.body for r in range(1, c.n)))


def check_duality(system: System, ceiling: int = DEFAULT_SIEVE_CEILING) -> bool:
    body = system.without_head()
    N = body.period
    if N > ceiling:
        raise SieveTooLarge(f"lcm of moduli is {N}, above the sieve ceiling {ceiling}")
    w = covering_profile(body, ceiling).counts
    w_dual = np.zeros(N, dtype=np.int64)
    for c in dual(body).classes:
        w_dual[c.a :: c.n] += 1
    return bool(np.all(w + w_dual == body.k))


def classes_meeting(classes: Sequence[ResidueClass]) -> ResidueClass | None:
    """Common intersection of several classes, or None if it is empty."""
    acc = ResidueClass(0, 1)
    for c in classes:
        acc = intersect(acc, c)
        if acc is None:
            return None
    return acc


def max_multiplicity(system: System) -> int:
    """Largest value of the covering function, found without a sieve.

    It is the size of the largest set of classes with a common point, so a
    depth-first search over CRT intersections suffices. Cheap for small k
    whatever the lcm.
    """
    classes = sorted(system.classes)
    k = len(classes)
    best = 0

    def grow(start: int, acc: ResidueClass, size: int):
        nonlocal best
        best = max(best, size)
        for i in range(start, k):
            if size + k - i <= best:
                return
            nxt = intersect(acc, classes[i])
            if nxt is not None:
                grow(i + 1, nxt, size + 1)

    grow(0, ResidueClass(0, 1), 0)
    return best
