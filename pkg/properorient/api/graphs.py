"""
Graphs API router.

Verification, Mad, bounded orientations, the orient3 pipeline and the exact
proper orientation number. Malformed input maps to 400, a failed pipeline
invariant to 500 carrying the invariant id.
"""

import logging
import time

from fastapi import APIRouter, HTTPException
from pydantic import ValidationError

from ..density import ceil_half_mad, exact_mad
from ..database import log_run
from ..exactchi import chi_orient_with_witness
from ..exceptions import (
    CapExceededError,
    GraphFormatError,
    InvariantViolation,
    OrientationMismatchError,
    PartitionError,
)
from ..graph import parse_graph, parse_orientation, serialize_orientation, verify_proper
from ..hakimi import orient_bounded
from ..models import (
    ChiRequest,
    ChiResponse,
    GraphRequest,
    HakimiRequest,
    HakimiResponse,
    MadResponse,
    Orient3Request,
    Orient3Response,
    ProperReport,
    RunRecord,
    VerifyRequest,
)
from .. import orient3

router = APIRouter()
logger = logging.getLogger(__name__)

INPUT_ERRORS = (GraphFormatError, PartitionError, OrientationMismatchError, CapExceededError, ValidationError)


def _bad_input(e: Exception) -> HTTPException:
    logger.error(f"Rejected request: {str(e)}")
    return HTTPException(status_code=400, detail=str(e))


@router.post("/verify", response_model=ProperReport)
def verify_endpoint(request: VerifyRequest):
    """
    Check an orientation for properness.

    Returns:
        ProperReport: Out-degrees, violations and the bound check
    """
    try:
        graph, _ = parse_graph(request.graph_text)
        orientation = parse_orientation(request.orientation_text, graph)
        return verify_proper(graph, orientation, bound=request.bound)
    except INPUT_ERRORS as e:
        raise _bad_input(e)


@router.post("/mad", response_model=MadResponse)
def mad_endpoint(request: GraphRequest):
    try:
        graph, _ = parse_graph(request.graph_text)
    except INPUT_ERRORS as e:
        raise _bad_input(e)
    mad, certificate = exact_mad(graph)
    return MadResponse(mad=str(mad), k=ceil_half_mad(graph), certificate=certificate)


@router.post("/hakimi", response_model=HakimiResponse)
def hakimi_endpoint(request: HakimiRequest):
    """
    Orientation with out-degree at most k, or the dense set that rules it out.
    Infeasibility is a normal answer, not an error.
    """
    try:
        graph, _ = parse_graph(request.graph_text)
    except INPUT_ERRORS as e:
        raise _bad_input(e)
    k = request.k if request.k is not None else ceil_half_mad(graph)
    result = orient_bounded(graph, k)
    if not result.feasible:
        return HakimiResponse(k=k, feasible=False, certificate=result.certificate)
    return HakimiResponse(k=k, feasible=True, orientation_text=serialize_orientation(graph, result.orientation))


@router.post("/orient3", response_model=Orient3Response)
def orient3_endpoint(request: Orient3Request):
    """
    Run the six-step pipeline and log the run.

    Raises:
        HTTPException: 400 for bad input, 500 if an invariant fails
    """
    started = time.time()
    try:
        graph, partition = parse_graph(request.graph_text)
        orientation, trace = orient3.run(graph, partition, cap=request.cap)
    except INPUT_ERRORS as e:
        raise _bad_input(e)
    except InvariantViolation as e:
        logger.error(f"orient3 invariant {e.invariant_id} failed: {e.detail}")
        log_run(RunRecord(command="orient3", source="api", n=graph.n, m=graph.m, success=False,
                          error_message=str(e), execution_time_seconds=round(time.time() - started, 3)))
        raise HTTPException(status_code=500, detail=f"invariant {e.invariant_id} failed: {e.detail}")

    log_run(RunRecord(command="orient3", source="api", n=graph.n, m=graph.m, k=trace.k, bound=trace.bound,
                      max_outdeg=trace.max_outdeg, success=True,
                      execution_time_seconds=round(time.time() - started, 3)))
    return Orient3Response(
        k=trace.k,
        bound=trace.bound,
        max_outdeg=trace.max_outdeg,
        orientation_text=serialize_orientation(graph, orientation),
        trace=trace.lines(),
    )


@router.post("/chi", response_model=ChiResponse)
def chi_endpoint(request: ChiRequest):
    try:
        graph, _ = parse_graph(request.graph_text)
        result = chi_orient_with_witness(graph, max_k=request.max_k)
    except INPUT_ERRORS as e:
        raise _bad_input(e)
    if result is None:
        return ChiResponse()
    value, witness = result
    return ChiResponse(chi_orient=value, orientation_text=serialize_orientation(graph, witness))
