"""
Constructions API router.
"""

import logging

from fastapi import APIRouter, HTTPException, Query

from ..config import get_settings
from ..exceptions import ConstructionError
from ..models import ConstructionCheckResponse, ConstructParams
from ..xconstruct import build_extremal, counting_check, verify_structure

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/check", response_model=ConstructionCheckResponse)
def check_construction(
    k: int = Query(..., ge=1, description="Half the target Mad, rounded up"),
    r: int = Query(..., ge=3, description="Number of parts"),
):
    """
    Counting report for (k, r), plus the structural checks when the graph is small enough to build.

    Raises:
        HTTPException: 500 if the counting inequality fails under its hypothesis
    """
    try:
        counting = counting_check(k, r)
    except ConstructionError as e:
        logger.error(f"Counting check failed: {str(e)}")
        raise HTTPException(status_code=500, detail=str(e))

    params = ConstructParams(k=k, r=r)
    if r * params.copy_size > get_settings().construct_max_vertices:
        return ConstructionCheckResponse(counting=counting)
    graph, _, layout = build_extremal(params)
    report = verify_structure(graph, layout)
    return ConstructionCheckResponse(counting=counting, structure=report.checks, structure_passed=report.passed)
