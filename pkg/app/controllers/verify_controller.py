import asyncio
import logging
from datetime import datetime

from fastapi import APIRouter, Query, WebSocket, WebSocketDisconnect

from app.controllers.errors import http_errors
from app.core.config import settings
from app.models import HealthResponse, VerificationReport
from app.services.verification import iter_suites, verify_all
from app.services.websocket_manager import websocket_manager

router = APIRouter(tags=["verification"])
logger = logging.getLogger(__name__)


@router.get("/health", response_model=HealthResponse)
async def health() -> HealthResponse:
    return HealthResponse(timestamp=datetime.now(), settings=settings.as_dict())


@router.get("/verify", response_model=VerificationReport)
def verify(quick: bool = Query(True, description="Quick sizes instead of the full acceptance sizes")) -> VerificationReport:
    """Run every acceptance suite and return the report"""
    with http_errors("run the acceptance suites"):
        return verify_all(quick)


@router.websocket("/verify/stream")
async def stream_verification(websocket: WebSocket, quick: bool = True):
    """WebSocket endpoint that runs the acceptance suites and streams one event per suite"""
    run_id = await websocket_manager.open_run(websocket, quick)
    try:
        suites = iter_suites(quick)
        while True:
            result = await asyncio.to_thread(next, suites, None)
            if result is None:
                break
            await websocket_manager.publish_suite(run_id, result)
        await websocket_manager.finish_run(run_id)
        await websocket.close()
    except WebSocketDisconnect:
        logger.info(f"Client left verification run {run_id}")
    except Exception as e:
        # Log WebSocket errors but don't expose internal details
        logger.error(f"Verification run {run_id} failed: {e}")
        await websocket_manager.finish_run(run_id, "verification failed")
    finally:
        websocket_manager.leave(websocket, run_id)
