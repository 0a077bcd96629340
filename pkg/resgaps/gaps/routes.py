import logging
from typing import List

from fastapi import APIRouter, Depends, HTTPException, Query

from resgaps.catalog.models import Catalog
from resgaps.catalog.utils import lookup
from resgaps.database import get_catalog
from resgaps.errors import ResgapsError
from resgaps.gaps.schemas import DensityRecord, GapScanRecord, OneGapOut
from resgaps.gaps.utils import DENSITY_METHODS, gap_density, one_gap_class, scan

router = APIRouter()

logger = logging.getLogger(__name__)


@router.get("/one-gap", response_model=List[OneGapOut])
async def one_gap(catalog: Catalog = Depends(get_catalog)):
    """
    For every case, whether 1 is a gap number and how k = 1 was settled.
    """
    try:
        rows = one_gap_class(catalog)
    except ResgapsError as e:
        logger.error(f"One-gap classification failed: {e}")
        raise HTTPException(status_code=e.status_code, detail=str(e))
    return [OneGapOut.from_row(row) for row in rows]


@router.get("/{case_id}", response_model=GapScanRecord)
async def scan_gaps(
    case_id: int,
    max: int = Query(10, ge=0, le=1000),
    catalog: Catalog = Depends(get_catalog),
):
    """
    Verdict for every k in 0..max, with witnesses and gap certificates.
    """
    try:
        verdicts = scan(lookup(catalog, case_id), max)
    except ResgapsError as e:
        logger.error(f"Gap scan of case {case_id} failed: {e}")
        raise HTTPException(status_code=e.status_code, detail=str(e))
    return GapScanRecord.from_verdicts(case_id, verdicts, {"case": str(case_id), "max": str(max)})


@router.get("/{case_id}/density", response_model=DensityRecord)
async def density(
    case_id: int,
    max: int = Query(100, ge=1, le=100000),
    method: str = Query("auto"),
    catalog: Catalog = Depends(get_catalog),
):
    """
    Proportion of gap numbers among 1..max.
    """
    if method not in DENSITY_METHODS:
        raise HTTPException(status_code=422, detail=f"method must be one of {', '.join(DENSITY_METHODS)}")
    try:
        report = gap_density(lookup(catalog, case_id), max, method)
    except ResgapsError as e:
        logger.error(f"Density of case {case_id} failed: {e}")
        raise HTTPException(status_code=e.status_code, detail=str(e))
    inputs = {"case": str(case_id), "max": str(max), "method": method}
    return DensityRecord.from_report(report, inputs)
