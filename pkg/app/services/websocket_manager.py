import json
import logging
import time
import uuid
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Optional

from fastapi import WebSocket
from app.models import StreamEvent, SuiteResult

logger = logging.getLogger(__name__)


@dataclass
class RunStream:
    """One streamed verify-all run and the sockets following it"""
    run_id: str
    quick: bool
    sockets: List[WebSocket] = field(default_factory=list)
    passed: int = 0
    failed: List[int] = field(default_factory=list)
    started: float = field(default_factory=time.monotonic)

    @property
    def success(self) -> bool:
        return not self.failed


class WebSocketManager:
    """Streams acceptance-suite results of running verifications to their sockets"""

    def __init__(self):
        self.runs: Dict[str, RunStream] = {}

    async def open_run(self, websocket: WebSocket, quick: bool) -> str:
        """Accept the socket, register a new run for it and announce the start"""
        await websocket.accept()
        run = RunStream(uuid.uuid4().hex[:12], quick, [websocket])
        self.runs[run.run_id] = run
        logger.debug(f"Verification run {run.run_id} opened (quick={quick}); {len(self.runs)} active")
        await self._publish(run, "status", {"status": "running", "quick": quick})
        return run.run_id

    async def publish_suite(self, run_id: str, result: SuiteResult):
        run = self.runs.get(run_id)
        if run is None:
            return
        if result.passed:
            run.passed += 1
        else:
            run.failed.append(result.index)
        await self._publish(run, "suite", result.model_dump(mode="json"))

    async def finish_run(self, run_id: str, error: Optional[str] = None) -> bool:
        """Send the completion event with the run's tally; returns overall success"""
        run = self.runs.get(run_id)
        if run is None:
            return False
        success = run.success and error is None
        await self._publish(run, "complete", {
            "success": success,
            "passed": run.passed,
            "failed": run.failed,
            "elapsed": round(time.monotonic() - run.started, 3),
            "error": error,
        })
        return success

    def leave(self, websocket: WebSocket, run_id: str):
        """Drop a socket; the run is forgotten once nobody follows it"""
        run = self.runs.get(run_id)
        if run is None:
            return
        if websocket in run.sockets:
            run.sockets.remove(websocket)
        if not run.sockets:
            del self.runs[run_id]
        logger.debug(f"Socket left run {run_id}; {len(self.runs)} active")

    async def close_all(self):
        for run in list(self.runs.values()):
            for ws in run.sockets[:]:
                try:
                    await ws.close()
                except Exception:
                    pass
        self.runs.clear()

    async def _publish(self, run: RunStream, event_type: str, payload: dict):
        event = StreamEvent(
            event_type=event_type,
            data={"run_id": run.run_id, "timestamp": datetime.now().isoformat(), **payload},
        )
        message = json.dumps(event.model_dump(mode="json"), default=str)
        for ws in run.sockets[:]:
            try:
                await ws.send_text(message)
            except Exception:
                self.leave(ws, run.run_id)


# Global WebSocket manager instance
websocket_manager = WebSocketManager()
