import asyncio
import json

from app.models import SuiteResult
from app.services.websocket_manager import WebSocketManager


class FakeSocket:
    def __init__(self, broken=False):
        self.accepted = False
        self.closed = False
        self.broken = broken
        self.sent = []

    async def accept(self):
        self.accepted = True

    async def send_text(self, message):
        if self.broken:
            raise RuntimeError("gone")
        self.sent.append(json.loads(message))

    async def close(self):
        self.closed = True


def _suite(index, passed):
    return SuiteResult(index=index, name=f"suite {index}", passed=passed, detail="", elapsed_seconds=0.0)


def test_run_tally_and_completion():
    manager, ws = WebSocketManager(), FakeSocket()

    async def scenario():
        run_id = await manager.open_run(ws, quick=True)
        await manager.publish_suite(run_id, _suite(1, True))
        await manager.publish_suite(run_id, _suite(2, False))
        success = await manager.finish_run(run_id)
        manager.leave(ws, run_id)
        return run_id, success

    run_id, success = asyncio.run(scenario())
    assert ws.accepted
    assert not success
    assert [e["event_type"] for e in ws.sent] == ["status", "suite", "suite", "complete"]
    assert all(e["data"]["run_id"] == run_id for e in ws.sent)
    assert ws.sent[0]["data"]["quick"] is True
    complete = ws.sent[-1]["data"]
    assert (complete["passed"], complete["failed"], complete["success"]) == (1, [2], False)
    assert manager.runs == {}


def test_error_marks_run_failed():
    manager, ws = WebSocketManager(), FakeSocket()

    async def scenario():
        run_id = await manager.open_run(ws, quick=False)
        await manager.publish_suite(run_id, _suite(1, True))
        return await manager.finish_run(run_id, "boom")

    assert asyncio.run(scenario()) is False
    assert ws.sent[-1]["data"]["error"] == "boom"


def test_broken_socket_drops_the_run():
    manager, ws = WebSocketManager(), FakeSocket(broken=True)

    async def scenario():
        run_id = await manager.open_run(ws, quick=True)
        await manager.publish_suite(run_id, _suite(1, True))
        return run_id, await manager.finish_run(run_id)

    run_id, success = asyncio.run(scenario())
    assert run_id not in manager.runs
    assert success is False


def test_close_all():
    manager, ws = WebSocketManager(), FakeSocket()

    async def scenario():
        await manager.open_run(ws, quick=True)
        await manager.close_all()

    asyncio.run(scenario())
    assert ws.closed
    assert manager.runs == {}
