import logging
from typing import List

from fastapi import APIRouter, Depends, HTTPException, Query

from resgaps.catalog.models import Catalog
from resgaps.catalog.schemas import CaseAnalysis, CaseSummary
from resgaps.catalog.utils import analyze_case, analyze_fibers, lookup, summarize_case
from resgaps.database import get_catalog
from resgaps.errors import ResgapsError

router = APIRouter()

logger = logging.getLogger(__name__)


@router.get("/cases", response_model=List[CaseSummary])
async def list_cases(catalog: Catalog = Depends(get_catalog)):
    """
    Summaries of every catalog case, ordered by id.
    """
    return [summarize_case(case) for case in catalog]


@router.get("/cases/{case_id}", response_model=CaseAnalysis)
async def get_case(case_id: int, catalog: Catalog = Depends(get_catalog)):
    """
    Full analysis of one case: T, rank, torsion, mu, bounds, narrow Gram and Q_X.
    """
    try:
        return analyze_case(lookup(catalog, case_id))
    except ResgapsError as e:
        logger.error(f"Case {case_id}: {e}")
        raise HTTPException(status_code=e.status_code, detail=str(e))


@router.get("/lookup", response_model=CaseAnalysis)
async def lookup_fibers(
    fibers: str = Query(..., description="Comma-separated Kodaira symbols, e.g. I4,IV,III,I1"),
    catalog: Catalog = Depends(get_catalog),
):
    """
    Bounds of a fiber configuration and the catalog cases with the same T.
    """
    try:
        return analyze_fibers(catalog, fibers)
    except ResgapsError as e:
        logger.error(f"Fibers {fibers}: {e}")
        raise HTTPException(status_code=e.status_code, detail=str(e))
