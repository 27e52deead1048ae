"""
FastAPI main application module.

Exposes the graph operations, the extremal construction checks and the run
log over HTTP.
"""

import logging

from fastapi import FastAPI

from .api.constructions import router as constructions_router
from .api.graphs import router as graphs_router
from .api.runs import router as runs_router
from .config import configure_logging
from .database import initialize_database, validate_database_schema

logger = logging.getLogger(__name__)

app = FastAPI(
    title="properorient API",
    description="Proper orientations of 3-partite graphs with out-degree at most ceil(Mad/2)+7",
    version="1.0.0"
)

# Include API routers
app.include_router(graphs_router, prefix="/api/graphs", tags=["graphs"])
app.include_router(constructions_router, prefix="/api/constructions", tags=["constructions"])
app.include_router(runs_router, prefix="/api/runs", tags=["runs"])


@app.on_event("startup")
async def startup_event():
    """
    Initialize application on startup.
    Ensure the run log exists and is properly configured.
    """
    configure_logging()
    if not validate_database_schema():
        logger.warning("Run log schema missing - initializing")
        if not initialize_database():
            logger.warning("Run log unavailable - runs will not be recorded")
    logger.info("properorient service started")


@app.on_event("shutdown")
async def shutdown_event():
    logger.info("properorient service shutting down")


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="127.0.0.1", port=8002)
