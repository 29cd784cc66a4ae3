from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from covertool.arith import lcm
from covertool.errors import EnumerationTooLarge
from covertool.tuplesums import count_table, iter_tuples, tuple_table

from conftest import brute_tuples


@st.composite
def boxes(draw):
    k = draw(st.integers(1, 4))
    moduli = [draw(st.integers(1, 6)) for _ in range(k)]
    residues = [draw(st.integers(0, n - 1)) for n in moduli]
    lo = [draw(st.integers(0, 2)) for _ in range(k)]
    hi = [l + draw(st.integers(0, 4)) for l in lo]
    return moduli, residues, lo, hi


@given(boxes())
def test_table_matches_brute_force(box):
    moduli, residues, lo, hi = box
    N = lcm(moduli)
    zmax = sum(h * N // n for n, h in zip(moduli, hi))
    table = tuple_table(moduli, residues, lo, hi, zmax)
    expect = [[0] * N for _ in range(zmax + 1)]
    for t, v in brute_tuples(moduli, lo, hi):
        z = v * N
        assert z.denominator == 1
        expect[int(z)][sum(a * m * (N // n) for a, m, n in zip(residues, t, moduli)) % N] += 1
    assert table.tolist() == expect
    assert count_table(moduli, lo, hi, zmax) == [sum(r) for r in expect]


@given(boxes(), st.data())
def test_dfs_matches_brute_force(box, data):
    moduli, residues, lo, hi = box
    everything = list(brute_tuples(moduli, lo, hi))
    target = data.draw(st.sampled_from([v for _, v in everything]))
    assert sorted(iter_tuples(moduli, lo, hi, target=target)) == sorted(t for t, v in everything if v == target)
    below = Fraction(data.draw(st.integers(0, 8)), 2)
    assert sorted(iter_tuples(moduli, lo, hi, below=below)) == sorted(t for t, v in everything if v < below)


def test_unbounded_upper_limit():
    # m_1/2 + m_2/3 = 1 with m_s >= 1 has exactly no solution; = 2 has (2, 3) and ...
    t = tuple_table([2, 3], [0, 0], [1, 1], [None, None], 12)
    assert t[6].sum() == 0
    sols = sorted(iter_tuples([2, 3], [1, 1], [4, 6], target=Fraction(2)))
    assert int(t[12].sum()) == len(sols) == 1


def test_cell_ceiling():
    with pytest.raises(EnumerationTooLarge):
        tuple_table([7, 11, 13], [0, 0, 0], [0, 0, 0], [None] * 3, 10**5, max_cells=10**6)
    with pytest.raises(EnumerationTooLarge):
        list(iter_tuples([2] * 10, [0] * 10, [9] * 10, max_nodes=1000))
