"""
BMW Square API

FastAPI service over the exact BMW / symmetric-square library: restricted tableaux,
the tableau bijection, path-model relations, link invariants and braid images.

This is the HTTP entry point; `python -m app.cli` is the command-line one.
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from contextlib import asynccontextmanager
import logging

from app.core.config import load_env_file, settings
from app.controllers.algebra_controller import router as algebra_router
from app.controllers.diagrams_controller import router as diagrams_router
from app.controllers.images_controller import router as images_router
from app.controllers.invariants_controller import router as invariants_router
from app.controllers.tableaux_controller import router as tableaux_router
from app.controllers.verify_controller import router as verify_router

logger = logging.getLogger(__name__)

# the server reads .env; the CLI does not
load_env_file()


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Handle application startup and shutdown"""
    logger.info(f"BMW Square API started. Settings: {settings.as_dict()}")

    yield

    from app.services.websocket_manager import websocket_manager

    logger.info("BMW Square API shutting down - closing verification streams...")
    await websocket_manager.close_all()

    logger.info("BMW Square API shutdown complete")


# Create FastAPI application
app = FastAPI(
    title="BMW Square API",
    description="Exact computations for specialized BMW algebras realized inside symmetric squares of Temperley-Lieb algebras",
    version="1.0.0",
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(diagrams_router)
app.include_router(tableaux_router)
app.include_router(algebra_router)
app.include_router(invariants_router)
app.include_router(images_router)
app.include_router(verify_router)


@app.get("/")
async def root():
    """Root endpoint"""
    return {
        "message": "BMW Square API",
        "version": "1.0.0",
        "docs": "/docs",
        "health": "/health"
    }


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "main:app",
        host=settings.host,
        port=settings.port,
        log_level=settings.log_level.lower()
    )
