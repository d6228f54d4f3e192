# File path: cctree/main.py
import logging

from fastapi import FastAPI

from cctree import __version__
from cctree.api.v1.router import api_router
from cctree.core.config import settings

# Configure logging
logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

# Create FastAPI application
app = FastAPI(
    title=settings.APP_NAME,
    version=__version__,
    openapi_url=f"{settings.API_V1_PREFIX}/openapi.json",
)

# Include API router
app.include_router(api_router, prefix=settings.API_V1_PREFIX)


@app.on_event("startup")
def startup_event():
    logger.info("Starting %s %s", settings.APP_NAME, __version__)


@app.get("/")
def root():
    return {
        "name": settings.APP_NAME,
        "version": __version__,
        "trees": f"{settings.API_V1_PREFIX}/trees",
        "changes": f"{settings.API_V1_PREFIX}/changes",
    }
