import itertools
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from covertool.arith import lcm
from covertool.cyclotomic import CyclotomicElement
from covertool.systems import ResidueClass, System

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def systems(draw, max_k=6, max_modulus=8, min_k=0, distinguished=False):
    k = draw(st.integers(min_k, max_k))
    classes = []
    for _ in range(k + (1 if distinguished else 0)):
        n = draw(st.integers(1, max_modulus))
        classes.append(ResidueClass(draw(st.integers(0, n - 1)), n))
    return System(tuple(classes), distinguished=distinguished)


@st.composite
def elements(draw, max_order=24, bound=5):
    N = draw(st.integers(1, max_order))
    coeffs = draw(st.lists(st.integers(-bound, bound), min_size=N, max_size=N))
    return CyclotomicElement(N, tuple(coeffs))


# brute-force oracles, deliberately naive


def brute_w(system, x):
    return sum(1 for c in system.classes if (x - c.a) % c.n == 0)


def brute_subsets(terms, residues_phase):
    """value -> (count, list of 1-based index sets, phase exponents) by listing every subset."""
    k = len(terms)
    out = {}
    for size in range(k + 1):
        for J in itertools.combinations(range(1, k + 1), size):
            v = sum((terms[s - 1] for s in J), Fraction(0))
            entry = out.setdefault(v, [0, [], []])
            entry[0] += 1
            entry[1].append(frozenset(J))
            entry[2].append(((-1) ** size, sum(residues_phase[s - 1] for s in J)))
    return out


def brute_tuples(moduli, lo, hi):
    """Every tuple in the box with its exact sum."""
    ranges = [range(l, h + 1) for l, h in zip(lo, hi)]
    for t in itertools.product(*ranges):
        yield t, sum((Fraction(m, n) for m, n in zip(t, moduli)), Fraction(0))


def naive_systems(k, max_modulus, min_modulus=1):
    """Generate every k-sequence of classes, then deduplicate by sorting."""
    classes = [ResidueClass(a, n) for n in range(min_modulus, max_modulus + 1) for a in range(n)]
    seen = set()
    for seq in itertools.product(classes, repeat=k):
        seen.add(tuple(sorted(seq)))
    return seen


def period_of(system):
    return lcm(system.moduli) if system.classes else 1


@pytest.fixture
def erdos():
    return System.of([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)])


@pytest.fixture
def erdos_headed():
    return System.of([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)], distinguished=True)
