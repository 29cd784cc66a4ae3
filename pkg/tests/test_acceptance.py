"""Acceptance criteria. Each test prints one PASS/FAIL line and enforces its runtime limit."""

import random
import time
from fractions import Fraction

import pytest

from covertool import corpus
from covertool.arith import divisors
from covertool.characterizations import (
    corollary_1_5_check,
    corollary_3_1_check,
    lemma_2_1_certificate,
    lemma_3_1_check,
    theorem_1_3_check,
    theorem_3_1_check,
)
from covertool.cli import main
from covertool.cyclotomic import CyclotomicElement, cyclotomic_poly, lemma_3_2_check, root_of_unity
from covertool.errors import PreconditionFailed
from covertool.extremal import classical_disjoint_checks, remark_1_5_system, theorem_1_2_check
from covertool.report import run_full_analysis
from covertool.search import SearchSpace, conjecture_1_1_scan, enumerate_systems
from covertool.subset_sums import (
    WeightedSystem,
    corollary_1_1_check,
    corollary_1_2_check,
    theorem_1_1_report,
)
from covertool.systems import ResidueClass, System, classify, covering_profile

from test_cyclotomic import numerically_zero, poly_mul, random_vanishing


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail, elapsed, limit):
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title}: {detail} ({elapsed:.2f}s, limit {limit:g}s)")
        assert ok, detail
        assert within, f"took {elapsed:.2f}s, limit {limit}s"

    return emit


def systems_up_to(k_max, max_modulus, k_min=1, **constraints):
    for k in range(k_min, k_max + 1):
        yield from enumerate_systems(SearchSpace(k=k, max_modulus=max_modulus, **constraints))


def test_criterion_1_erdos_example(verdict):
    start = time.perf_counter()
    A = corpus.load("erdos-example-1.1")
    report = run_full_analysis(A)
    checks = {v.check: v for v in report.verdicts}
    prof = checks["covering_profile"].detail
    # 0(2) is the first class, so it becomes a_0(n_0)
    headed = System(A.classes, distinguished=True)
    W = WeightedSystem(headed)
    zero = theorem_1_1_report(W, 0)
    five = theorem_1_1_report(W, Fraction(5, 6))
    row = five.row(0)
    facts = {
        "min multiplicity 1": prof["min_multiplicity"] == 1,
        "average 4/3": prof["average"] == "4/3" and covering_profile(A).average == Fraction(4, 3),
        "not exact": not classify(A, 1).is_exact_m_cover,
        "alpha=0 Counting": zero.branch == "Counting",
        "I={1,3} sums to 1/2": frozenset({1, 3}) in zero.row(1).witnesses and zero.row(1).value == Fraction(1, 2),
        "alpha=5/6 Vanishing": five.branch == "Vanishing",
        "a=0 class {{1,4},{2,3}}": row.value == Fraction(5, 12)
        and set(row.witnesses) == {frozenset({1, 4}), frozenset({2, 3})},
        "exact zero sum": row.csum_zero,
        "report branches": checks["thm11[alpha=0]"].detail["branch"] == "Counting"
        and checks["thm11[alpha=5/6]"].detail["branch"] == "Vanishing",
        "CLI exit 0": main(["analyze", "@erdos-example-1.1"]) == 0,
    }
    elapsed = time.perf_counter() - start
    failed = [k for k, v in facts.items() if not v]
    verdict(1, "erdos example", not failed, f"failed={failed}" if failed else "all facts hold", elapsed, 1)


def test_criterion_2_extremal_family(verdict):
    start = time.perf_counter()
    bad = []
    for k, m in [(2, 1), (3, 1), (4, 1), (4, 2), (5, 2)]:
        A = remark_1_5_system(k, m)
        r = theorem_1_2_check(A, m)
        ok = (
            classify(A, m).is_m_system
            and A.density() == m - Fraction(1, 2 ** (k - m + 1))
            and r.equality
            and r.extremal_form
        )
        if not ok:
            bad.append((k, m))
    for name, k, m in [("remark-1.5-k2-m1", 2, 1), ("remark-1.5-k3-m1", 3, 1), ("remark-1.5-k4-m2", 4, 2)]:
        if corpus.load(name) != remark_1_5_system(k, m):
            bad.append(name)
    elapsed = time.perf_counter() - start
    verdict(2, "extremal equality family", not bad, f"bad={bad}" if bad else "5/5 equality and extremal form", elapsed, 1)


def test_criterion_3_characterization_sweep(verdict):
    start = time.perf_counter()
    mismatches, count = [], 0
    for A in systems_up_to(4, 6):
        count += 1
        unit = WeightedSystem(A)
        for m in (1, 2):
            c = classify(A, m)
            got = (
                theorem_1_3_check(A, m),
                theorem_3_1_check(A, m),
                lemma_3_1_check(unit, m),
                lemma_2_1_certificate(unit, m).divides,
            )
            if got != (c.is_m_system, c.is_m_system, c.is_m_cover, c.is_m_cover):
                mismatches.append((str(A), m, got))
    elapsed = time.perf_counter() - start
    verdict(3, "characterization sweep", not mismatches and count > 1000,
            f"{count} systems x 2 levels, {len(mismatches)} mismatches", elapsed, 300)


def test_criterion_4_counting_bounds(verdict):
    start = time.perf_counter()
    violations, checked11, checked12 = [], 0, 0
    bodies = list(systems_up_to(4, 6, k_min=0))
    heads = [ResidueClass(a, n) for n in range(1, 7) for a in range(n)]
    for body in bodies:
        for head in heads:
            A = body.with_head(head)
            try:
                r = corollary_1_1_check(A)
            except PreconditionFailed:
                continue
            checked11 += 1
            if not r.holds:
                violations.append(("cor11", str(A), r.counterexample))
    for A in bodies:
        if A.k == 0:
            continue
        try:
            r = corollary_1_2_check(A)
        except PreconditionFailed:
            continue
        checked12 += 1
        if not r.holds:
            violations.append(("cor12", str(A), r.counterexample))
    elapsed = time.perf_counter() - start
    ok = not violations and checked11 > 0 and checked12 > 0
    verdict(4, "counting bounds", ok,
            f"{checked11} headed + {checked12} plain systems, {len(violations)} violations", elapsed, 300)


def test_criterion_5_disjoint_identities(verdict):
    start = time.perf_counter()
    bad, n15, n31 = [], 0, 0
    for A in systems_up_to(4, 8, disjoint=True):
        n15 += 1
        if not corollary_1_5_check(A):
            bad.append(("cor15", str(A)))
    for m in (1, 2):
        for A in systems_up_to(3, 6, m_system=m):
            n31 += 1
            if not corollary_3_1_check(A, m):
                bad.append(("cor31", m, str(A)))
    elapsed = time.perf_counter() - start
    verdict(5, "disjoint and m-system identities", not bad and n15 > 100 and n31 > 100,
            f"{n15} disjoint + {n31} m-systems, {len(bad)} failures", elapsed, 300)


def test_criterion_6_classical_facts(verdict):
    start = time.perf_counter()
    bad, covers, strict = [], 0, 0
    for A in systems_up_to(5, 8, min_modulus=2, disjoint=True, cover=1):
        covers += 1
        if A.moduli[-2] != A.moduli[-1] or classical_disjoint_checks(A).dmnr is not True:
            bad.append(("dmnr", str(A)))
    for A in systems_up_to(5, 16, min_modulus=2, disjoint=True, distinct_moduli=True):
        strict += 1
        if A.density() > 1 - Fraction(1, 2**A.k) or classical_disjoint_checks(A).erdos62 is not True:
            bad.append(("erdos62", str(A)))
    elapsed = time.perf_counter() - start
    verdict(6, "classical disjoint facts", not bad and covers > 0 and strict > 0,
            f"{covers} disjoint covers + {strict} strict-moduli systems, {len(bad)} violations", elapsed, 300)


def test_criterion_7_gcd_conjecture_scan(verdict):
    start = time.perf_counter()
    results = [conjecture_1_1_scan(k, n) for k, n in [(2, 8), (3, 12), (4, 12)]]
    ok = all(r.verified and not r.counterexamples and r.exhaustive for r in results)
    detail = ", ".join(f"k={r.k} max={r.max_modulus}: {r.systems_checked} checked" for r in results)
    elapsed = time.perf_counter() - start
    verdict(7, "gcd conjecture bounded scan", ok, detail, elapsed, 600)


def test_criterion_8_cyclotomic_kernel(verdict):
    start = time.perf_counter()
    bad = []
    for n in range(1, 201):
        prod = [1]
        for d in divisors(n):
            prod = poly_mul(prod, cyclotomic_poly(d).coeffs)
        if prod != [-1] + [0] * (n - 1) + [1]:
            bad.append(("product", n))
    for n in range(1, 31):
        for l in range(n):
            if not lemma_3_2_check(n, l):
                bad.append(("subset sums", n, l))
    rng = random.Random(8)
    disagree = 0
    for i in range(500):
        N = rng.randint(2, 60)
        if i % 3 == 1:
            e = random_vanishing(rng, N)
        elif i % 3 == 2:
            e = random_vanishing(rng, N) + root_of_unity(N, rng.randrange(N))
        else:
            e = CyclotomicElement(N, tuple(rng.randint(-2, 2) for _ in range(N)))
        disagree += e.is_zero() != numerically_zero(e)
    if disagree:
        bad.append(("float oracle", disagree))
    elapsed = time.perf_counter() - start
    verdict(8, "cyclotomic kernel", not bad,
            f"200 products, 465 subset identities, 500 oracle checks, failures={bad}", elapsed, 30)
