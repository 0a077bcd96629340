import logging

from fastapi import APIRouter, Depends, HTTPException, Query

from resgaps.catalog.models import Catalog
from resgaps.catalog.utils import lookup
from resgaps.database import get_catalog
from resgaps.errors import ResgapsError
from resgaps.forms.schemas import RepresentationRecord
from resgaps.forms.utils import build_qx, represent_record

router = APIRouter()

logger = logging.getLogger(__name__)


@router.get("/{case_id}/represent", response_model=RepresentationRecord)
async def represent(
    case_id: int,
    target: int = Query(..., ge=0),
    catalog: Catalog = Depends(get_catalog),
):
    """
    Search for x with Q_X(x) = target; an empty witness means no such x exists.
    """
    try:
        form = build_qx(lookup(catalog, case_id))
        return represent_record(form, target, case_id=case_id)
    except ResgapsError as e:
        logger.error(f"Representation for case {case_id} failed: {e}")
        raise HTTPException(status_code=e.status_code, detail=str(e))
