#!/usr/bin/env python3
"""Verification Stream Logger - follow a verify-all run over WebSocket"""
import asyncio
import json
import sys
from datetime import datetime

import websockets

from shared_config import get_environment, websocket_url


def format_time(timestamp):
    if timestamp:
        try:
            return datetime.fromisoformat(timestamp.replace('Z', '+00:00')).strftime("%H:%M:%S")
        except ValueError:
            return timestamp[:8]
    return datetime.now().strftime("%H:%M:%S")


def handle_message(data):
    """Render one stream event; returns False once the run is complete"""
    event_type = data.get("event_type", "unknown")
    event_data = data.get("data", {})
    time_str = format_time(event_data.get("timestamp", ""))

    if event_type == "status":
        status = event_data.get("status", "unknown")
        sizes = "quick" if event_data.get("quick", True) else "full"
        print(f"[{time_str}] ⚡ Status: {status.upper()} ({sizes} sizes)")

    elif event_type == "suite":
        icon = "✅" if event_data.get("passed") else "❌"
        print(
            f"[{time_str}] {icon} Suite {event_data.get('index')}: {event_data.get('name')} "
            f"({event_data.get('elapsed_seconds', 0):.1f}s) - {event_data.get('detail')}"
        )

    elif event_type == "complete":
        if event_data.get("success"):
            print(f"[{time_str}] 🎉 All suites passed!")
        else:
            print(f"[{time_str}] 💥 Verification failed! Suites: {event_data.get('failed', [])}")
            if event_data.get("error"):
                print(f"[{time_str}] ❌ Error: {event_data['error']}")
        print(f"[{time_str}] {event_data.get('passed', 0)} passed in {event_data.get('elapsed', 0)}s")
        print("\n" + "=" * 60)
        return False

    else:
        print(f"[{time_str}] 📥 {event_type}: {event_data}")
    return True


async def stream_verification(config, quick):
    uri = websocket_url(config, f"/verify/stream?quick={'true' if quick else 'false'}")
    print(f"📡 URI: {uri}")
    print("=" * 60)

    try:
        async with websockets.connect(uri) as websocket:
            print("✅ Connected! Streaming suite results...\n")
            while True:
                try:
                    message = await websocket.recv()
                except websockets.exceptions.ConnectionClosed:
                    print("\n🔌 WebSocket connection closed by server")
                    break
                try:
                    data = json.loads(message)
                except json.JSONDecodeError as e:
                    print(f"❌ Failed to parse JSON: {e}")
                    continue
                if not handle_message(data):
                    break
    except websockets.exceptions.InvalidURI:
        print(f"❌ Invalid WebSocket URI: {uri}")
    except ConnectionRefusedError:
        print("❌ Connection refused. Is the server running?")


def show_help():
    print("""
Verification Stream Logger

Usage:
  python verify_stream_logger.py [--env local|docker] [--full]

Runs verify-all on the server (quick sizes unless --full) and prints one line
per acceptance suite. BMWSQ_URL overrides the server URL.
    """)


def main():
    if any(arg in sys.argv for arg in ('help', '--help', '-h')):
        show_help()
        return
    _, config = get_environment()
    try:
        asyncio.run(stream_verification(config, quick='--full' not in sys.argv))
    except KeyboardInterrupt:
        print("\n⏹️ Disconnected by user")


if __name__ == "__main__":
    main()
