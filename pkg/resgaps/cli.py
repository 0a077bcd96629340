"""Command-line front end: analyze, gaps, verify, density and represent.

Reports go to stdout (text, or JSON records with --json), diagnostics to
stderr. The exit status is 0 on success and otherwise the exit code of the
ResgapsError that stopped the command.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel

from resgaps.catalog.models import Catalog
from resgaps.catalog.schemas import CaseAnalysis
from resgaps.catalog.utils import analyze_case, analyze_fibers, load_catalog, lookup
from resgaps.config import config
from resgaps.errors import ParseError, ResgapsError
from resgaps.forms.schemas import RepresentationRecord
from resgaps.forms.utils import build_qx, parse_form, represent_record
from resgaps.gaps.schemas import DensityRecord, GapScanRecord, VerdictOut
from resgaps.gaps.utils import DENSITY_METHODS, gap_density, scan
from resgaps.verify.schemas import VerifyRecord
from resgaps.verify.utils import TARGETS, ensure_passed, verify

logger = logging.getLogger("resgaps")


def _matrix(rows: Optional[List[List[str]]]) -> str:
    if rows is None:
        return "-"
    return "[" + ",".join("[" + ",".join(row) + "]" for row in rows) + "]"


def _show_analysis(record: CaseAnalysis) -> List[str]:
    lines = []
    if record.case_id is not None:
        lines.append(f"case      {record.case_id}")
    if record.fibers:
        lines.append(f"fibers    {record.fibers}")
    lines += [
        f"T         {record.T}",
        f"rank      {record.rank if record.rank is not None else '-'}",
        f"torsion   {record.torsion or '-'}",
        f"mu        {record.mu or '-'}",
        f"c_max     {record.c_max}",
        f"c_min     {record.c_min}",
        f"delta     {record.delta}",
        f"E(K)^0    {_matrix(record.narrow_gram)}",
        f"det       {record.narrow_det or '-'}",
        f"Q_X       {_matrix(record.q_x)}",
    ]
    if len(record.matches) > 1:
        lines.append(f"matches   {', '.join(str(i) for i in record.matches)}")
    return lines


def _show_verdict(verdict: VerdictOut) -> str:
    line = f"k={verdict.k:<5} {verdict.status:<9}"
    if verdict.witness is not None:
        w = verdict.witness
        line += f" {w.route:<9} P=({','.join(str(x) for x in w.coords)}) h={w.height} with {w.partner}"
    elif verdict.certificate is not None:
        line += f" {verdict.certificate.reason}"
    elif verdict.reason:
        line += f" {verdict.reason}"
    return line


def _show_gaps(record: GapScanRecord) -> List[str]:
    lines = [_show_verdict(v) for v in record.verdicts]
    counts = ", ".join(f"{name} {count}" for name, count in record.summary.items())
    lines.append(f"case {record.case_id}: {counts}")
    lines.append(f"gaps: {', '.join(str(k) for k in record.gaps) or 'none'}")
    return lines


def _show_density(record: DensityRecord) -> List[str]:
    return [
        f"case {record.case_id}, k in 1..{record.n} ({record.method})",
        f"gaps      {record.gap_count}",
        f"unknown   {record.unknown_count}",
        f"density   {record.density} = {record.density_decimal}",
    ]


def _show_verify(record: VerifyRecord) -> List[str]:
    lines = []
    for report in record.reports:
        lines.append(f"{report.target}: {report.passed} passed, {report.failed} failed")
        for cell in report.cells:
            if not cell.passed:
                lines.append(f"  FAIL {cell.key} {cell.field}: expected {cell.expected}, got {cell.actual}")
        for erratum in report.errata:
            lines.append(f"  erratum {erratum}")
    lines.append(record.status.upper())
    return lines


def _show_represent(record: RepresentationRecord) -> List[str]:
    form = _matrix(record.form) + (f"/{record.divisor}" if record.divisor != 1 else "")
    if record.witness is None:
        return [f"{record.target} is not represented by {form}"]
    return [f"{record.target} = Q({','.join(str(x) for x in record.witness)}) for Q = {form}"]


def _emit(record: BaseModel, as_json: bool, show) -> None:
    if as_json:
        print(record.model_dump_json(indent=2))
    else:
        print("\n".join(show(record)))


def cmd_analyze(args, catalog: Catalog) -> int:
    if args.fibers:
        record = analyze_fibers(catalog, args.fibers)
    else:
        record = analyze_case(lookup(catalog, args.case))
    _emit(record, args.json, _show_analysis)
    return 0


def cmd_gaps(args, catalog: Catalog) -> int:
    case = lookup(catalog, args.case)
    verdicts = scan(case, args.max, args.budget)
    record = GapScanRecord.from_verdicts(case.id, verdicts, {"case": str(case.id), "max": str(args.max)})
    _emit(record, args.json, _show_gaps)
    return 0


def cmd_verify(args, catalog: Catalog) -> int:
    record = verify(catalog, args.target, args.budget)
    _emit(record, args.json, _show_verify)
    ensure_passed(record)
    return 0


def cmd_density(args, catalog: Catalog) -> int:
    case = lookup(catalog, args.case)
    report = gap_density(case, args.max, args.method, args.budget)
    inputs = {"case": str(case.id), "max": str(args.max), "method": args.method}
    _emit(DensityRecord.from_report(report, inputs), args.json, _show_density)
    return 0


def cmd_represent(args, catalog: Catalog) -> int:
    if args.form:
        try:
            text = Path(args.form).read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"cannot read form file {args.form}: {e}")
        form = parse_form(text)
        inputs = {"form": args.form, "target": str(args.target)}
        record = represent_record(form, args.target, inputs=inputs, budget=args.budget)
    else:
        case = lookup(catalog, args.case)
        inputs = {"case": str(case.id), "target": str(args.target)}
        record = represent_record(build_qx(case), args.target, case_id=case.id, inputs=inputs, budget=args.budget)
    _emit(record, args.json, _show_represent)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resgaps",
        description="Gap numbers of rational elliptic surfaces, in exact arithmetic.",
    )
    parser.add_argument("--catalog", default=None, help="Catalog file (default: RESGAPS_CATALOG or the embedded one)")
    parser.add_argument("--json", action="store_true", help="Print JSON records instead of text")
    parser.add_argument("--budget", type=int, default=None, help="Enumeration node budget (default: RESGAPS_VECTOR_BUDGET)")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="Logging level (default: %(default)s)")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="T, rank, torsion, bounds, narrow Gram and Q_X")
    source = analyze.add_mutually_exclusive_group(required=True)
    source.add_argument("--case", type=int, help="Catalog id")
    source.add_argument("--fibers", help="Kodaira configuration, e.g. I4,IV,III,I1")
    analyze.set_defaults(handler=cmd_analyze)

    gaps = commands.add_parser("gaps", help="Verdict for every k in 0..max")
    gaps.add_argument("--case", type=int, required=True)
    gaps.add_argument("--max", type=int, default=10)
    gaps.set_defaults(handler=cmd_gaps)

    check = commands.add_parser("verify", help="Recompute a reference table and compare")
    check.add_argument("--target", choices=list(TARGETS) + ["all"], default="all")
    check.set_defaults(handler=cmd_verify)

    density = commands.add_parser("density", help="Proportion of gap numbers among 1..max")
    density.add_argument("--case", type=int, required=True)
    density.add_argument("--max", type=int, default=1000)
    density.add_argument("--method", choices=DENSITY_METHODS, default="auto")
    density.set_defaults(handler=cmd_density)

    represent = commands.add_parser("represent", help="Represent an integer by Q_X or by a form from a file")
    form_source = represent.add_mutually_exclusive_group(required=True)
    form_source.add_argument("--case", type=int, help="Catalog id, uses its Q_X")
    form_source.add_argument("--form", help="File holding a Gram matrix in lattice text")
    represent.add_argument("--target", type=int, required=True)
    represent.set_defaults(handler=cmd_represent)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        catalog = load_catalog(args.catalog)
        return args.handler(args, catalog)
    except ResgapsError as e:
        logger.error(str(e))
        return e.exit_code
    except ValueError as e:
        logger.error(str(e))
        return ParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
