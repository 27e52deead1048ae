"""
Runs API router.

Read access to the run log.
"""

import logging
from typing import List, Optional

from fastapi import APIRouter, HTTPException, Query

from ..database import get_run_stats, get_runs
from ..models import RunRecord, RunStats

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/", response_model=List[RunRecord])
def list_runs(
    limit: int = Query(50, ge=1, le=500, description="Number of runs to return"),
    offset: int = Query(0, ge=0, description="Number of runs to skip"),
    success: Optional[bool] = Query(None, description="Only successful or only failed runs"),
):
    """
    Retrieve logged runs, newest first.

    Returns:
        List[RunRecord]: Matching runs
    """
    try:
        return get_runs(limit=limit, offset=offset, success=success)
    except Exception as e:
        logger.error(f"Failed to get runs: {str(e)}")
        raise HTTPException(status_code=500, detail="Failed to retrieve runs")


@router.get("/stats", response_model=RunStats)
def run_stats():
    try:
        return get_run_stats()
    except Exception as e:
        logger.error(f"Failed to get run stats: {str(e)}")
        raise HTTPException(status_code=500, detail="Failed to retrieve run statistics")
