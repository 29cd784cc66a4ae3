"""Exhaustive generation of residue-class systems within bounds.

Systems are produced in canonical order (classes sorted by modulus, then
residue), so each multiset of classes appears once. Constraints are pushed
into the depth-first search: disjointness through a precomputed pairwise
compatibility bitmask (``a(m)`` and ``b(n)`` meet iff ``gcd(m, n) | a - b``),
bounded overlap through the running list of nonempty intersections, and
covering requirements through the density still reachable.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import PreconditionFailed, TheoremViolated, WorkCeilingExceeded
from .systems import DEFAULT_SIEVE_CEILING, ResidueClass, System, covering_profile, intersect, max_multiplicity
from .tuplesums import iter_tuples

DEFAULT_WORK_CEILING = 10**8


def default_work_ceiling() -> int:
    value = os.environ.get("COVERTOOL_WORK_CEILING")
    return int(value) if value else DEFAULT_WORK_CEILING


@dataclass(frozen=True)
class SearchSpace:
    k: int
    max_modulus: int
    min_modulus: int = 1
    disjoint: bool = False
    cover: int | None = None
    exact_cover: int | None = None
    m_system: int | None = None
    distinct_moduli: bool = False
    # ascending moduli is the canonical order already; kept for completeness
    sorted_moduli: bool = True

    def overlap_bound(self) -> int | None:
        bounds = [b for b in (1 if self.disjoint else None, self.m_system, self.exact_cover) if b is not None]
        return min(bounds) if bounds else None

    def cover_level(self) -> int:
        return max(self.cover or 0, self.exact_cover or 0)


def canonical_classes(max_modulus: int, min_modulus: int = 1) -> list[ResidueClass]:
    return [ResidueClass(a, n) for n in range(min_modulus, max_modulus + 1) for a in range(n)]


class _Budget:
    def __init__(self, ceiling: int):
        self.ceiling = ceiling
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.ceiling:
            raise WorkCeilingExceeded(f"more than {self.ceiling} candidate prefixes")


def enumerate_systems(
    space: SearchSpace,
    work_ceiling: int | None = None,
    pair_filter=None,
) -> Iterator[System]:
    """Every canonical system in ``space``.

    ``pair_filter(c, d)``, when given, must hold for every pair of chosen
    classes; it prunes like disjointness does.
    """
    if space.k < 0 or space.max_modulus < 1 or space.min_modulus < 1:
        raise ValueError("bad search space")
    budget = _Budget(work_ceiling or default_work_ceiling())
    classes = canonical_classes(space.max_modulus, space.min_modulus)
    count = len(classes)
    bound = space.overlap_bound()
    level = space.cover_level()
    exact = space.exact_cover
    disjoint = space.disjoint or bound == 1
    repeats = not (disjoint or bound == 0)

    # compat[i]: indices j >= i that may follow class i
    compat = []
    for i, c in enumerate(classes):
        mask = 0
        for j in range(i, count):
            d = classes[j]
            if j == i and not repeats:
                continue
            if disjoint and c.intersects(d):
                continue
            if space.distinct_moduli and c.n == d.n:
                continue
            if pair_filter is not None and not pair_filter(c, d):
                continue
            mask |= 1 << j
        compat.append(mask)
    everything = (1 << count) - 1
    layered = bound is not None and bound > 1
    chosen: list[ResidueClass] = []

    def walk(cand: int, density: Fraction, layers):
        budget.tick()
        depth = len(chosen)
        remaining = space.k - depth
        if remaining == 0:
            if level or exact is not None:
                prof = covering_profile(System(tuple(chosen)))
                if prof.min_multiplicity < level:
                    return
                if exact is not None and prof.max_multiplicity != exact:
                    return
            yield System(tuple(chosen))
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            c = classes[i]
            if level and density + Fraction(remaining, c.n) < level:
                # moduli only grow from here on
                return
            new_density = density + Fraction(1, c.n)
            if exact is not None and new_density + Fraction(remaining - 1, space.max_modulus) > exact:
                continue
            new_layers = layers
            if layered:
                if any(X.intersects(c) for X in layers[bound]):
                    continue
                new_layers = [layers[0]] + [
                    layers[j] + [Y for Y in (intersect(X, c) for X in layers[j - 1]) if Y is not None]
                    for j in range(1, bound + 1)
                ]
            chosen.append(c)
            yield from walk((cand | low) & compat[i], new_density, new_layers)
            chosen.pop()

    start_layers = [[ResidueClass(0, 1)]] + [[] for _ in range(bound or 0)] if layered else None
    yield from walk(everything, Fraction(0), start_layers)


@dataclass(frozen=True)
class ConjectureScan:
    k: int
    max_modulus: int
    verified: bool
    counterexamples: tuple[System, ...]
    systems_checked: int | None
    exhaustive: bool


def conjecture_1_1_scan(k: int, max_modulus: int, exhaustive: bool = True,
                        work_ceiling: int | None = None) -> ConjectureScan:
    """Disjoint systems of ``k`` classes with moduli up to ``max_modulus`` must
    contain two classes whose moduli have gcd at least ``k``.

    ``exhaustive=True`` walks every disjoint system and tests each one. With
    ``exhaustive=False`` only systems whose pairs all have gcd below ``k``
    are generated; those are exactly the violators, so the verdict is the
    same at a fraction of the work.
    """
    if k < 2:
        raise ValueError("the conjecture concerns k >= 2")
    space = SearchSpace(k=k, max_modulus=max_modulus, disjoint=True)
    if exhaustive:
        found, checked = [], 0
        for system in enumerate_systems(space, work_ceiling):
            checked += 1
            m = system.moduli
            if not any(math.gcd(m[s], m[t]) >= k for s in range(k) for t in range(s + 1, k)):
                found.append(system)
    else:
        found = list(enumerate_systems(space, work_ceiling, pair_filter=lambda c, d: math.gcd(c.n, d.n) < k))
        checked = None
    found.sort(key=lambda s: s.classes)
    return ConjectureScan(k, max_modulus, not found, tuple(found), checked, exhaustive)


def find_unit_weight_representation(system: System, m: int,
                                    ceiling: int = DEFAULT_SIEVE_CEILING) -> tuple[int, ...]:
    """Positive integers ``m_s <= m n_s`` with ``sum m_s/n_s = m`` for an m-system."""
    A = system.without_head()
    if max_multiplicity(A) > m:
        raise PreconditionFailed(f"not an {m}-system")
    moduli = A.moduli
    found = next(iter_tuples(moduli, [1] * A.k, [m * n for n in moduli], target=Fraction(m)), None)
    if found is None:
        raise TheoremViolated(f"{A} is an {m}-system but no tuple sums to {m}")
    return found
