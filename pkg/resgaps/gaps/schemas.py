from typing import Dict, List, Optional

from pydantic import BaseModel

from resgaps.arith.models import render_decimal, render_rational
from resgaps.gaps.models import DensityReport, GapVerdict, OneGapRow, SearchWindow, Status, WitnessTrace


class WitnessOut(BaseModel):
    route: str
    coords: List[int]
    height: str
    partner: str
    p_dot_o: Optional[int] = None
    contributions: List[str] = []
    torsion: bool = False
    frame: Optional[str] = None

    @classmethod
    def from_trace(cls, trace: WitnessTrace) -> "WitnessOut":
        return cls(
            route=trace.route.value,
            coords=list(trace.coords),
            height=render_rational(trace.height),
            partner=trace.partner,
            p_dot_o=trace.p_dot_o,
            contributions=[render_rational(c) for c in trace.contributions],
            torsion=trace.torsion,
            frame=trace.frame,
        )


class WindowOut(BaseModel):
    label: str
    lower: str
    upper: str
    upper_open: bool
    found: int

    @classmethod
    def from_window(cls, window: SearchWindow) -> "WindowOut":
        return cls(
            label=window.label,
            lower=render_rational(window.lower),
            upper=render_rational(window.upper),
            upper_open=window.upper_open,
            found=window.found,
        )


class CertificateOut(BaseModel):
    windows: List[WindowOut]
    reason: str


class VerdictOut(BaseModel):
    k: int
    status: str
    witness: Optional[WitnessOut] = None
    certificate: Optional[CertificateOut] = None
    reason: Optional[str] = None

    @classmethod
    def from_verdict(cls, verdict: GapVerdict) -> "VerdictOut":
        certificate = None
        if verdict.certificate is not None:
            certificate = CertificateOut(
                windows=[WindowOut.from_window(w) for w in verdict.certificate.windows],
                reason=verdict.certificate.reason,
            )
        return cls(
            k=verdict.k,
            status=verdict.status.value,
            witness=WitnessOut.from_trace(verdict.witness) if verdict.witness else None,
            certificate=certificate,
            reason=verdict.reason,
        )


class GapScanRecord(BaseModel):
    command: str = "gaps"
    case_id: int
    inputs: Dict[str, str]
    status: str = "ok"
    verdicts: List[VerdictOut]
    summary: Dict[str, int]
    gaps: List[int]

    @classmethod
    def from_verdicts(cls, case_id: int, verdicts: List[GapVerdict], inputs: Dict[str, str]) -> "GapScanRecord":
        return cls(
            case_id=case_id,
            inputs=inputs,
            verdicts=[VerdictOut.from_verdict(v) for v in verdicts],
            summary={status.value: sum(v.status is status for v in verdicts) for status in Status},
            gaps=[v.k for v in verdicts if v.status is Status.GAP],
        )


class DensityRecord(BaseModel):
    command: str = "density"
    case_id: int
    inputs: Dict[str, str]
    status: str = "ok"
    method: str
    n: int
    gap_count: int
    unknown_count: int
    density: str
    density_decimal: str
    unknown: List[int]

    @classmethod
    def from_report(cls, report: DensityReport, inputs: Dict[str, str]) -> "DensityRecord":
        return cls(
            case_id=report.case_id,
            inputs=inputs,
            method=report.method,
            n=report.n,
            gap_count=report.gap_count,
            unknown_count=report.unknown_count,
            density=render_rational(report.density),
            density_decimal=render_decimal(report.density),
            unknown=list(report.unknown),
        )


class OneGapOut(BaseModel):
    case_id: int
    has_1_gap: Optional[bool]
    method: str

    @classmethod
    def from_row(cls, row: OneGapRow) -> "OneGapOut":
        return cls(case_id=row.case_id, has_1_gap=row.has_1_gap, method=row.method)
