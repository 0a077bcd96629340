import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from resgaps.arith.models import render_rational
from resgaps.catalog.models import Catalog, SurfaceCase
from resgaps.errors import VerificationMismatch
from resgaps.fibers.models import FiberConfig, root_sort_key
from resgaps.fibers.utils import bounds, extremes
from resgaps.forms.utils import A4_FORM, check_290_critical, is_universal
from resgaps.gaps.models import Status
from resgaps.gaps.utils import closed_form_r1, decide, one_gap_class
from resgaps.lattice.models import RootE
from resgaps.lattice.utils import minimal_vector, parse_lattice, summands
from resgaps.verify import goldens
from resgaps.verify.schemas import TargetReport, VerifyCell, VerifyRecord

logger = logging.getLogger(__name__)


def _text(value) -> str:
    if isinstance(value, Fraction):
        return render_rational(value)
    if isinstance(value, (tuple, list)):
        return ",".join(_text(x) for x in value)
    return str(value)


def _cell(key, field: str, expected, actual, printed=None) -> VerifyCell:
    expected, actual = _text(expected), _text(actual)
    printed = _text(printed) if printed is not None else None
    return VerifyCell(
        key=str(key),
        field=field,
        expected=expected,
        actual=actual,
        passed=expected == actual,
        printed=printed if printed != expected else None,
    )


def _interval(lo: Fraction, hi: Fraction, right_open: bool) -> str:
    return f"[{_text(lo)},{_text(hi)}{')' if right_open else ']'}"


def _report(target: str, cells: List[VerifyCell]) -> TargetReport:
    failed = [cell for cell in cells if not cell.passed]
    for cell in failed:
        logger.error(f"verify {target}: {cell.key} {cell.field} expected {cell.expected}, got {cell.actual}")
    errata = [
        f"{cell.key} {cell.field}: printed {cell.printed}, recomputed {cell.expected}"
        for cell in cells
        if cell.printed is not None
    ]
    return TargetReport(
        target=target,
        cells=cells,
        passed=len(cells) - len(failed),
        failed=len(failed),
        errata=errata,
    )


def _case(catalog: Catalog, case_id: int, cells: List[VerifyCell]) -> Optional[SurfaceCase]:
    case = catalog.cases.get(case_id)
    if case is None:
        cells.append(_cell(case_id, "row", "present", "missing"))
    return case


def verify_table2(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    """Extreme contributions per root lattice and the worked bounds example."""
    cells = []
    for label, expected in goldens.TABLE2.items():
        cells.append(_cell(label, "extremes", expected, extremes(parse_lattice(label))))
    fibers, c_max, c_min = goldens.TABLE2_EXAMPLE
    found = bounds(FiberConfig.parse(fibers))
    cells.append(_cell(fibers, "c_max,c_min", (c_max, c_min), (found.c_max, found.c_min)))
    return _report("table2", cells)


def _bounds_rows(target: str, catalog: Catalog, rows: Dict) -> TargetReport:
    cells = []
    for case_id, (t, torsion, c_max, c_min, delta) in rows.items():
        case = _case(catalog, case_id, cells)
        if case is None:
            continue
        golden_t = tuple(sorted(summands(parse_lattice(t)), key=root_sort_key))
        cells.append(_cell(case_id, "T", [r.label for r in golden_t], [r.label for r in case.t_multiset]))
        cells.append(_cell(case_id, "torsion", torsion, str(case.torsion)))
        cells.append(_cell(case_id, "c_max,c_min,delta", (c_max, c_min, delta), tuple(case.bounds)))
    return _report(target, cells)


def verify_table3(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    return _bounds_rows("table3", catalog, goldens.TABLE3)


def verify_table4(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    return _bounds_rows("table4", catalog, goldens.TABLE4)


def verify_table5(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    """Shipped representations of the critical integers, then an independent 290 check."""
    cells = [_cell(n, "q(x)", n, A4_FORM(x)) for n, x in goldens.TABLE5.items()]
    report = check_290_critical(A4_FORM, budget)
    missing = [n for n, witness in report.items() if witness is None]
    cells.append(_cell("290", "universal", True, is_universal(report)))
    if missing:
        cells.append(_cell("290", "missing", "", missing))
    return _report("table5", cells)


def _first_gaps(statuses: Sequence[Status]) -> tuple:
    return tuple(k for k, status in enumerate(statuses, start=1) if status is Status.GAP)[:2]


def verify_table9(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    """Torsion-free rank-1 cases: decide against the closed form, then the first gaps."""
    cells = []
    top = goldens.TABLE9_MAX_K
    for case_id, (expected, printed) in goldens.TABLE9.items():
        case = _case(catalog, case_id, cells)
        if case is None:
            continue
        statuses = [decide(case, k, budget).status for k in range(1, top + 1)]
        closed = [Status.GAP if closed_form_r1(case, k) else Status.REALIZED for k in range(1, top + 1)]
        disagree = [k for k, (a, b) in enumerate(zip(statuses, closed), start=1) if a is not b]
        cells.append(_cell(case_id, f"decide = closed form for k <= {top}", [], disagree))
        cells.append(_cell(case_id, "first gaps", expected, _first_gaps(statuses), printed=printed))
    return _report("table9", cells)


def verify_table10(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    """μ, the interval I for k = 1 and the perfect squares listed in it."""
    cells = []
    for case_id, (mu, (lo, hi, right_open), roots, printed) in goldens.TABLE10.items():
        case = _case(catalog, case_id, cells)
        if case is None:
            continue
        found_mu = minimal_vector(case.free_gram).norm
        cells.append(_cell(case_id, "mu", mu, found_mu))
        c_max, c_min, delta = case.bounds
        low, high = (4 - c_max) / found_mu, (4 - c_min) / found_mu
        cells.append(_cell(
            case_id,
            "I",
            _interval(lo, hi, right_open),
            _interval(low, high, delta == 2),
            printed=_interval(printed[0], printed[1], right_open),
        ))

        def inside(n: int) -> bool:
            return low <= n * n <= high and not (delta == 2 and n * n == high)

        first = next(
            (n for n in range(1, roots[-1] + 1) if inside(n) and (n * n * found_mu).denominator != 1),
            None,
        )
        cells.append(_cell(case_id, "first square root", roots[0], first))
        cells.append(_cell(case_id, "listed squares in I", True, all(inside(n) for n in roots)))
    return _report("table10", cells)


def verify_theorem_r5(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    """Every k up to the bound is realized on the cases of rank >= 5."""
    cells = []
    top = goldens.THEOREM_R5_MAX_K
    for case_id in goldens.THEOREM_R5_CASES:
        case = _case(catalog, case_id, cells)
        if case is None:
            continue
        cells.append(_cell(case_id, "rank >= 5", True, case.rank >= 5))
        missed = [k for k in range(top + 1) if decide(case, k, budget).status is not Status.REALIZED]
        cells.append(_cell(case_id, f"unrealized k <= {top}", [], missed))
    return _report("theorem-r5", cells)


def verify_one_gap(catalog: Catalog, budget: Optional[int] = None) -> TargetReport:
    """1 is a gap iff r = 0, or r = 1 and the only reducible fiber is III*."""
    cells = []
    for row in one_gap_class(catalog, budget=budget):
        case = catalog.cases[row.case_id]
        expected = case.rank == 0 or (case.rank == 1 and case.t_multiset == (RootE(7),))
        cells.append(_cell(row.case_id, f"has 1-gap ({row.method})", expected, row.has_1_gap))
        if case.rank == 0:
            cells.append(_cell(row.case_id, "decide k=1", Status.GAP.value, decide(case, 1, budget).status.value))
    return _report("one-gap", cells)


TARGETS: Dict[str, Callable[..., TargetReport]] = {
    "table2": verify_table2,
    "table3": verify_table3,
    "table4": verify_table4,
    "table5": verify_table5,
    "table9": verify_table9,
    "table10": verify_table10,
    "theorem-r5": verify_theorem_r5,
    "one-gap": verify_one_gap,
}


def verify(catalog: Catalog, target: str = "all", budget: Optional[int] = None) -> VerifyRecord:
    """Run one target (or all of them) and collect the reports."""
    if target != "all" and target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)} or all")
    names = list(TARGETS) if target == "all" else [target]
    reports = []
    for name in names:
        report = TARGETS[name](catalog, budget)
        logger.info(f"verify {name}: {report.passed} passed, {report.failed} failed")
        reports.append(report)
    return VerifyRecord(
        inputs={"target": target},
        status="pass" if all(r.failed == 0 for r in reports) else "fail",
        reports=reports,
    )


def ensure_passed(record: VerifyRecord) -> None:
    """Raises VerificationMismatch if any cell of the record failed."""
    failed = [f"{r.target} ({r.failed})" for r in record.reports if r.failed]
    if failed:
        raise VerificationMismatch(f"verification failed: {', '.join(failed)}")
