"""Live session server: landmark ingest and telemetry over WebSocket.

One producer connects on /produce and streams frame messages; any
number of observers connect on /observe and receive the command stream
plus state snapshots (on every event and at a fixed interval). All
engine access happens on one asyncio loop, so producer frames, wall
ticks, and telemetry never race. Slow observers get stale snapshots
dropped from a bounded queue instead of stalling the pipeline.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import signal
import time

from websockets.asyncio.server import serve as ws_serve
from websockets.exceptions import ConnectionClosed

from .engine import SessionEngine
from .errors import ProtocolViolation
from .pipeline import CommandEvent
from .session import decode_wire_message, encode_event

SNAPSHOT_INTERVAL_S = 0.1     # >=10 Hz toward observers
WALL_TICK_INTERVAL_S = 0.05
_OBSERVER_QUEUE_SIZE = 64

CLOSE_POLICY_VIOLATION = 1008
CLOSE_TRY_AGAIN = 1013


class LiveSession:
    def __init__(self, engine: SessionEngine):
        self.engine = engine
        self.producer = None
        self.observer_queues: set[asyncio.Queue] = set()
        self._started = time.monotonic()
        engine.observers.append(self._on_event)

    # -- engine-side hooks --------------------------------------------------

    def wall_ms(self) -> int:
        return int((time.monotonic() - self._started) * 1000)

    def _on_event(self, event):
        if isinstance(event, CommandEvent):
            self._broadcast(encode_event(event))
        self._broadcast_snapshot()

    def _broadcast_snapshot(self):
        self._broadcast(json.dumps(self.engine.snapshot(), separators=(",", ":")))

    def _broadcast(self, text: str):
        for queue in self.observer_queues:
            if queue.full():
                try:
                    queue.get_nowait()  # drop the oldest snapshot
                except asyncio.QueueEmpty:
                    pass
            queue.put_nowait(text)

    # -- connection handlers --------------------------------------------------

    async def handle(self, websocket):
        path = websocket.request.path
        if path == "/produce":
            await self._handle_producer(websocket)
        elif path == "/observe":
            await self._handle_observer(websocket)
        else:
            await websocket.close(CLOSE_POLICY_VIOLATION, "ProtocolViolation:unknown_path")

    async def _handle_producer(self, websocket):
        if self.producer is not None:
            await websocket.close(CLOSE_TRY_AGAIN, "Busy")
            return
        self.producer = websocket
        try:
            async for message in websocket:
                try:
                    frame = decode_wire_message(message)
                except ProtocolViolation as exc:
                    await websocket.close(CLOSE_POLICY_VIOLATION,
                                          f"ProtocolViolation:{exc.reason}"[:123])
                    return
                self.engine.handle_frame(frame)
        except ConnectionClosed:
            pass
        finally:
            self.producer = None

    async def _handle_observer(self, websocket):
        queue: asyncio.Queue = asyncio.Queue(maxsize=_OBSERVER_QUEUE_SIZE)
        self.observer_queues.add(queue)
        queue.put_nowait(json.dumps(self.engine.snapshot(), separators=(",", ":")))
        closed = asyncio.ensure_future(websocket.wait_closed())
        try:
            while not closed.done():
                getter = asyncio.ensure_future(queue.get())
                await asyncio.wait({getter, closed}, return_when=asyncio.FIRST_COMPLETED)
                if not getter.done():
                    getter.cancel()
                    return
                try:
                    await websocket.send(getter.result())
                except ConnectionClosed:
                    return
        finally:
            closed.cancel()
            self.observer_queues.discard(queue)

    # -- background tasks -----------------------------------------------------

    async def _ticker(self):
        while True:
            await asyncio.sleep(WALL_TICK_INTERVAL_S)
            self.engine.advance_to(self.wall_ms())

    async def _snapshotter(self):
        while True:
            await asyncio.sleep(SNAPSHOT_INTERVAL_S)
            self._broadcast_snapshot()


async def run_server(engine: SessionEngine, host: str, port: int,
                     ready: asyncio.Event | None = None,
                     bound_port: list | None = None,
                     handle_signals: bool = False):
    """Serve until cancelled (or signalled, when handle_signals is set).

    SIGINT/SIGTERM set a stop event rather than unwinding the loop with
    KeyboardInterrupt, so open connections close with a proper handshake
    and the recorder flushes. `ready`/`bound_port` support
    ephemeral-port tests.
    """
    session = LiveSession(engine)
    stop = asyncio.Event()
    loop = asyncio.get_running_loop()
    installed = []
    if handle_signals:
        for sig in (signal.SIGINT, signal.SIGTERM):
            with contextlib.suppress(NotImplementedError, RuntimeError):
                loop.add_signal_handler(sig, stop.set)
                installed.append(sig)
    async with ws_serve(session.handle, host, port) as server:
        if bound_port is not None:
            bound_port.append(server.sockets[0].getsockname()[1])
        if ready is not None:
            ready.set()
        ticker = asyncio.create_task(session._ticker())
        snapshotter = asyncio.create_task(session._snapshotter())
        try:
            await stop.wait()
        except asyncio.CancelledError:
            pass
        finally:
            ticker.cancel()
            snapshotter.cancel()
            for sig in installed:
                loop.remove_signal_handler(sig)
            engine.advance_to(session.wall_ms())
