"""Generating tables for sums ``sum_s m_s / n_s`` over integer tuples.

Several identities sum a root of unity ``e^{2 pi i sum a_s m_s / n_s}`` over
all tuples ``(m_1, ..., m_k)`` in a box whose rational sum hits a given
value. Rather than visiting the tuples one by one, :func:`tuple_table`
builds the bivariate generating table

    T[z, p] = #{tuples : N * sum m_s/n_s == z and N * sum a_s m_s/n_s == p (mod N)}

class by class, with ``N`` the lcm of the moduli. Any such sum is then a
row of ``T`` read as an element of Z[zeta_N].

:func:`iter_tuples` is the plain depth-first enumeration with rational
prefix pruning; it produces witnesses and serves as an independent check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .arith import lcm
from .errors import EnumerationTooLarge

DEFAULT_MAX_CELLS = 10**7


def tuple_table(
    moduli: Sequence[int],
    residues: Sequence[int],
    lo: Sequence[int],
    hi: Sequence[int | None],
    zmax: int,
    order: int | None = None,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> np.ndarray:
    """Table ``T`` of shape ``(zmax + 1, order)`` described in the module docstring.

    ``m_s`` ranges over ``[lo[s], hi[s]]``; ``hi[s] = None`` leaves it bounded
    only by ``zmax``. ``order`` defaults to the lcm of the moduli and must be
    a multiple of it.
    """
    N = order or lcm(moduli)
    if N % lcm(moduli):
        raise ValueError("order must be a multiple of every modulus")
    if (zmax + 1) * N > max_cells:
        raise EnumerationTooLarge(f"table of {(zmax + 1) * N} cells exceeds {max_cells}")
    steps = []
    size_bound = 1
    for n, a, l, h in zip(moduli, residues, lo, hi):
        d = N // n
        top = zmax // d
        h = top if h is None else min(h, top)
        steps.append((d, (a * d) % N, l, h))
        size_bound *= max(h - l + 1, 1)
    dtype = np.int64 if size_bound < 2**62 else object
    table = np.zeros((zmax + 1, N), dtype=dtype)
    table[0, 0] = 1
    for d, e, l, h in steps:
        new = np.zeros_like(table)
        for m in range(l, h + 1):
            shift = m * d
            if shift > zmax:
                break
            new[shift:] += np.roll(table[: zmax + 1 - shift], (m * e) % N, axis=1)
        table = new
    return table


def count_table(moduli: Sequence[int], lo, hi, zmax: int, max_cells: int = DEFAULT_MAX_CELLS) -> list[int]:
    """Counts only: ``out[z]`` = number of tuples with ``N * sum m_s/n_s == z``."""
    N = lcm(moduli)
    if zmax + 1 > max_cells:
        raise EnumerationTooLarge(f"{zmax + 1} cells exceeds {max_cells}")
    counts = [0] * (zmax + 1)
    counts[0] = 1
    for n, l, h in zip(moduli, lo, hi):
        d = N // n
        top = zmax // d
        h = top if h is None else min(h, top)
        new = [0] * (zmax + 1)
        for z, c in enumerate(counts):
            if c:
                for m in range(l, h + 1):
                    t = z + m * d
                    if t > zmax:
                        break
                    new[t] += c
        counts = new
    return counts


def iter_tuples(
    moduli: Sequence[int],
    lo: Sequence[int],
    hi: Sequence[int],
    target: Fraction | None = None,
    below: Fraction | None = None,
    max_nodes: int = DEFAULT_MAX_CELLS,
) -> Iterator[tuple[int, ...]]:
    """Depth-first over tuples ``m_s in [lo[s], hi[s]]``.

    With ``target`` only tuples whose sum equals it are yielded; with
    ``below`` only those with sum strictly less. Branches are cut using the
    least and greatest sums the remaining coordinates can still add.
    """
    k = len(moduli)
    inv = [Fraction(1, n) for n in moduli]
    rest_min = [Fraction(0)] * (k + 1)
    rest_max = [Fraction(0)] * (k + 1)
    for s in range(k - 1, -1, -1):
        rest_min[s] = rest_min[s + 1] + lo[s] * inv[s]
        rest_max[s] = rest_max[s + 1] + hi[s] * inv[s]
    nodes = 0
    prefix: list[int] = []

    def walk(s: int, acc: Fraction):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise EnumerationTooLarge(f"more than {max_nodes} search nodes")
        if s == k:
            if (target is None or acc == target) and (below is None or acc < below):
                yield tuple(prefix)
            return
        for m in range(lo[s], hi[s] + 1):
            cur = acc + m * inv[s]
            low = cur + rest_min[s + 1]
            if target is not None:
                if low > target:
                    break
                if cur + rest_max[s + 1] < target:
                    continue
            if below is not None and low >= below:
                break
            prefix.append(m)
            yield from walk(s + 1, cur)
            prefix.pop()

    yield from walk(0, Fraction(0))
