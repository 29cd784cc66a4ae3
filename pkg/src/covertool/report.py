"""Structured verdict reports and the all-in-one analysis."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import characterizations as ch
from . import extremal, search, subset_sums
from .arith import format_rational
from .errors import PreconditionFailed, ResourceCeiling, TheoremViolated
from .subset_sums import WeightedSystem
from .systems import DEFAULT_SIEVE_CEILING, System, check_duality, classify, covering_profile, dual
from .textio import format_system

SCHEMA_VERSION = "covertool.report/1"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "covertool report",
    "type": "object",
    "required": ["schema", "command", "input_system", "verdicts", "timing_ms"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "input_system": {"type": "string"},
        "timing_ms": {"type": "number", "minimum": 0},
        "verdicts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["check", "status"],
                "additionalProperties": False,
                "properties": {
                    "check": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skipped", "error"]},
                    "detail": {},
                },
            },
        },
    },
}

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 2, 3, 4


@dataclass
class Verdict:
    check: str
    status: str
    detail: object = None


@dataclass
class Report:
    command: str
    input_system: str
    verdicts: list[Verdict] = field(default_factory=list)
    timing_ms: float = 0.0
    schema: str = SCHEMA_VERSION

    def add(self, check: str, status: str, detail=None) -> Verdict:
        v = Verdict(check, status, _jsonable(detail))
        self.verdicts.append(v)
        return v

    def run(self, check: str, fn: Callable, *, expect=True):
        """Run ``fn`` and record its outcome.

        ``fn`` returns ``(ok, detail)``. Precondition failures become skips,
        theorem violations become failures and resource ceilings errors.
        """
        try:
            ok, detail = fn()
        except PreconditionFailed as exc:
            return self.add(check, "skipped", str(exc))
        except TheoremViolated as exc:
            return self.add(check, "fail", str(exc))
        except ResourceCeiling as exc:
            return self.add(check, "error", str(exc))
        return self.add(check, "pass" if ok == expect else "fail", detail)

    @property
    def exit_code(self) -> int:
        statuses = {v.status for v in self.verdicts}
        if "fail" in statuses:
            return EXIT_FAIL
        if "error" in statuses:
            return EXIT_RESOURCE
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "command": self.command,
            "input_system": self.input_system,
            "verdicts": [asdict(v) for v in self.verdicts],
            "timing_ms": self.timing_ms,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(
            command=data["command"],
            input_system=data["input_system"],
            verdicts=[Verdict(**v) for v in data["verdicts"]],
            timing_ms=data["timing_ms"],
        )

    def format_text(self) -> str:
        lines = [f"{self.command}: {self.input_system or '(empty system)'}"]
        for v in self.verdicts:
            detail = "" if v.detail is None else f"  {_short(v.detail)}"
            lines.append(f"  [{v.status.upper():7}] {v.check}{detail}")
        lines.append(f"  ({self.timing_ms:.1f} ms)")
        return "\n".join(lines)


def _short(detail) -> str:
    text = detail if isinstance(detail, str) else json.dumps(detail, ensure_ascii=False)
    return text if len(text) <= 160 else text[:157] + "..."


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, System):
        return format_system(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalar
        return obj.item()
    return obj


def dichotomy_detail(report: subset_sums.DichotomyReport) -> dict:
    return {
        "alpha": report.alpha,
        "branch": report.branch,
        "m": report.m,
        "rows": [
            {
                "a": r.a,
                "v": r.value,
                "count": r.count,
                "bound": r.bound,
                "csum_zero": r.csum_zero,
                "witnesses": [sorted(w) for w in r.witnesses[:8]],
            }
            for r in report.rows
        ],
    }


def run_full_analysis(
    system: System,
    alphas=None,
    ceiling: int = DEFAULT_SIEVE_CEILING,
    command: str = "analyze",
) -> Report:
    """Profile, classification, duality and every applicable identity or bound.

    Checks whose preconditions fail are listed as skipped with the reason.
    When ``system`` has no distinguished class, its first class plays that
    role for the checks that need one.
    """
    start = time.perf_counter()
    report = Report(command, format_system(system))
    profile = covering_profile(system, ceiling)
    report.add(
        "covering_profile",
        "pass",
        {
            "period": profile.period,
            "min_multiplicity": profile.min_multiplicity,
            "max_multiplicity": profile.max_multiplicity,
            "average": profile.average,
            "density": system.plain().density(),
        },
    )
    whole = system.plain()
    top = profile.max_multiplicity
    low = profile.min_multiplicity
    for m in range(1, top + 1):
        c = classify(whole, m, ceiling)
        report.add(f"classify[m={m}]", "pass", {
            "m_cover": c.is_m_cover, "exact_m_cover": c.is_exact_m_cover, "m_system": c.is_m_system})
    report.run("duality", lambda: (check_duality(whole, ceiling), {"dual_classes": dual(whole).k}))

    if whole.k >= 1:
        headed = system if system.distinguished else System(whole.classes, distinguished=True)
        W = WeightedSystem(headed)
        _theorem_family(report, W, alphas, ceiling)

    A = whole
    k = A.k
    if k == 0:
        report.add("identities", "skipped", "empty system: all statements are vacuous")
    else:
        unit = WeightedSystem(A)
        if low >= 1:
            report.run(f"lemma21[m={low}]", lambda: (ch.lemma_2_1_certificate(unit, low, ceiling).divides, None))
            report.run(f"lemma31[m={low}]", lambda: (ch.lemma_3_1_check(unit, low, ceiling), None))
        else:
            report.add("lemma21", "skipped", "not a cover")
            report.add("lemma31", "skipped", "not a cover")
        report.run(f"thm13[m={top}]", lambda: (ch.theorem_1_3_check(A, top, ceiling), None))
        report.run(f"thm31[m={top}]", lambda: (ch.theorem_3_1_check(A, top, ceiling), None))
        report.run(f"cor31[m={top}]", lambda: (ch.corollary_3_1_check(A, top, ceiling), None))
        report.run("cor15", lambda: (ch.corollary_1_5_check(A, ceiling), None))
        report.run("cor12", lambda: _counting(subset_sums.corollary_1_2_check(A, ceiling)))
        report.run(
            "representable",
            lambda: (True, {"integers": subset_sums.representable_integers(A, ceiling), "m": top}),
        )
        report.run(
            f"unit_weights[m={top}]",
            lambda: (True, {"tuple": search.find_unit_weight_representation(A, top, ceiling)}),
        )
        sorted_A = A.canonical()
        report.run(f"thm12[m={top}]", lambda: _extremal(sorted_A, top, ceiling))
        _tail_checks(report, sorted_A, low, top, ceiling)
        report.run("newman_znam", lambda: (extremal.newman_znam_check(sorted_A, ceiling), None))
        report.run("classical", lambda: _classical(sorted_A, ceiling))
    report.timing_ms = (time.perf_counter() - start) * 1000
    return report


def _counting(result: subset_sums.CountingCheck):
    return result.holds, {"m": result.m, "rows": result.rows, "counterexample": result.counterexample}


def _extremal(A: System, m: int, ceiling: int):
    r = extremal.theorem_1_2_check(A, m, ceiling)
    return True, {"density": r.density, "bound": r.bound, "equality": r.equality,
                  "extremal_form": r.extremal_form}


def _classical(A: System, ceiling: int):
    r = extremal.classical_disjoint_checks(A, ceiling)
    ok = all(v is not False for v in (r.dmnr, r.erdos62))
    return ok, {"dmnr": r.dmnr, "erdos62": r.erdos62}


def _theorem_family(report: Report, W: WeightedSystem, alphas, ceiling: int):
    try:
        table = subset_sums.build_sum_table(W)
    except ResourceCeiling as exc:
        report.add("thm11", "error", str(exc))
        return
    chosen = alphas if alphas is not None else subset_sums.relevant_alphas(W, table)
    for alpha in chosen:
        report.run(
            f"thm11[alpha={format_rational(Fraction(alpha))}]",
            lambda: (True, dichotomy_detail(subset_sums.theorem_1_1_report(W, alpha, table, ceiling))),
        )
    if all(w == 1 for w in W.weights):
        report.run("cor11", lambda: _counting(subset_sums.corollary_1_1_check(W.system, ceiling)))


def _tail_checks(report: Report, A: System, low: int, top: int, ceiling: int):
    try:
        l = extremal.tail_block(A)
    except PreconditionFailed as exc:
        report.add("cor14", "skipped", str(exc))
        report.add("dual_variant", "skipped", str(exc))
        return
    moduli = A.moduli
    nk, below = moduli[-1], moduli[-l - 1]
    rs = [r for r in range(0, l + 1) if r * below < nk]
    if low >= 1:
        for r in rs:
            report.run(f"cor14[m={low},r={r}]", lambda: _alts(subset_sums.corollary_1_4_check(A, low, r, ceiling)))
    else:
        report.add("cor14", "skipped", "not a cover")
    r_max = (nk - 1) // below
    for r in range(0, r_max + 1):
        report.run(f"dual_variant[m={top},r={r}]", lambda: _alts(extremal.dual_variant_check(A, top, r, ceiling)))


def _alts(result):
    return True, {"alt1": result.alt1, "alt2": result.alt2, "l": result.l, "r": result.r}
