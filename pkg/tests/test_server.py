import asyncio
import json

import websockets

from gesturequad.engine import SessionEngine
from gesturequad.server import run_server
from gesturequad.session import encode_event
from gesturequad.skeleton import body_pose_frame


async def _start(engine):
    ready = asyncio.Event()
    bound = []
    task = asyncio.create_task(run_server(engine, "127.0.0.1", 0,
                                          ready=ready, bound_port=bound))
    await asyncio.wait_for(ready.wait(), timeout=5)
    return task, bound[0]


async def _stop(task):
    task.cancel()
    try:
        await task
    except asyncio.CancelledError:
        pass


def test_producer_frame_reaches_observer(config, course):
    async def main():
        engine = SessionEngine(mode="body", config=config, course=course)
        task, port = await _start(engine)
        try:
            async with websockets.connect(f"ws://127.0.0.1:{port}/observe") as observer:
                first = json.loads(await asyncio.wait_for(observer.recv(), 5))
                assert first["type"] == "state"
                assert first["gesture"] == "Neutral"
                async with websockets.connect(f"ws://127.0.0.1:{port}/produce") as producer:
                    await producer.send(encode_event(body_pose_frame("TPose", timestamp_ms=1)))
                    # a state snapshot reflecting the frame arrives promptly
                    for _ in range(10):
                        snap = json.loads(await asyncio.wait_for(observer.recv(), 5))
                        if snap.get("gesture") == "TPose":
                            break
                    else:
                        raise AssertionError("no snapshot with the classified gesture")
        finally:
            await _stop(task)
    asyncio.run(main())


def test_second_producer_rejected_busy(config, course):
    async def main():
        engine = SessionEngine(mode="body", config=config, course=course)
        task, port = await _start(engine)
        try:
            async with websockets.connect(f"ws://127.0.0.1:{port}/produce"):
                second = await websockets.connect(f"ws://127.0.0.1:{port}/produce")
                with __import__("pytest").raises(websockets.exceptions.ConnectionClosed):
                    await asyncio.wait_for(second.recv(), 5)
                assert second.close_reason == "Busy"
        finally:
            await _stop(task)
    asyncio.run(main())


def test_malformed_message_closes_connection_but_session_survives(config, course):
    async def main():
        engine = SessionEngine(mode="body", config=config, course=course)
        task, port = await _start(engine)
        try:
            bad = await websockets.connect(f"ws://127.0.0.1:{port}/produce")
            await bad.send("{not json")
            with __import__("pytest").raises(websockets.exceptions.ConnectionClosed):
                await asyncio.wait_for(bad.recv(), 5)
            assert (bad.close_reason or "").startswith("ProtocolViolation")

            # the slot is free again and the session still works
            async with websockets.connect(f"ws://127.0.0.1:{port}/produce") as producer:
                await producer.send(encode_event(body_pose_frame("rest", timestamp_ms=10)))
                await asyncio.sleep(0.05)
            assert engine.last_frame_ms >= 10
        finally:
            await _stop(task)
    asyncio.run(main())


def test_non_frame_message_is_protocol_violation(config, course):
    async def main():
        engine = SessionEngine(mode="body", config=config, course=course)
        task, port = await _start(engine)
        try:
            producer = await websockets.connect(f"ws://127.0.0.1:{port}/produce")
            await producer.send(json.dumps({"type": "command", "action": "GoForward",
                                            "t_ms": 1, "gesture": "PointUp"}))
            with __import__("pytest").raises(websockets.exceptions.ConnectionClosed):
                await asyncio.wait_for(producer.recv(), 5)
            assert (producer.close_reason or "").startswith("ProtocolViolation")
        finally:
            await _stop(task)
    asyncio.run(main())


def test_unknown_path_rejected(config, course):
    async def main():
        engine = SessionEngine(mode="body", config=config, course=course)
        task, port = await _start(engine)
        try:
            conn = await websockets.connect(f"ws://127.0.0.1:{port}/other")
            with __import__("pytest").raises(websockets.exceptions.ConnectionClosed):
                await asyncio.wait_for(conn.recv(), 5)
        finally:
            await _stop(task)
    asyncio.run(main())


def test_abrupt_producer_disconnect_leaves_log_valid(config, course, tmp_path):
    # a console vanishing mid-session must not corrupt the recording
    from gesturequad.session import SessionHeader, SessionWriter, read_session

    record = tmp_path / "live.session"
    writer = SessionWriter(record, SessionHeader(session_id="s", mode="body",
                                                 config_hash=config.hash,
                                                 created_at="1970-01-01T00:00:00Z"))

    async def main():
        engine = SessionEngine(mode="body", config=config, course=course,
                               writer=writer)
        task, port = await _start(engine)
        try:
            producer = await websockets.connect(f"ws://127.0.0.1:{port}/produce")
            for i in range(3):
                await producer.send(encode_event(body_pose_frame("TPose", timestamp_ms=i * 33)))
            await asyncio.sleep(0.05)
            # abrupt teardown: no close handshake
            producer.transport.abort()
            await asyncio.sleep(0.1)
            # session still accepts a new producer afterwards
            async with websockets.connect(f"ws://127.0.0.1:{port}/produce") as again:
                await again.send(encode_event(body_pose_frame("rest", timestamp_ms=500)))
                await asyncio.sleep(0.05)
        finally:
            await _stop(task)

    asyncio.run(main())
    writer.close()
    header, events = read_session(record)  # parses cleanly end to end
    assert header.mode == "body"
    assert len(events) >= 4


def _scripted_frames(config, n_commands=2):
    from gesturequad.gestures import RobotCommand
    from gesturequad.scripting import scripted_frames
    frames, _ = scripted_frames([RobotCommand.GO_FORWARD] * n_commands, config, "body")
    return frames


def test_observer_load_does_not_perturb_commands(config, course):
    frames = _scripted_frames(config)

    async def run_with_observers(observer_count):
        engine = SessionEngine(mode="body", config=config, course=course)
        task, port = await _start(engine)
        observers = []
        try:
            for _ in range(observer_count):
                observers.append(await websockets.connect(
                    f"ws://127.0.0.1:{port}/observe"))
            async with websockets.connect(f"ws://127.0.0.1:{port}/produce") as producer:
                for frame in frames:
                    await producer.send(encode_event(frame))
                await asyncio.sleep(0.1)
        finally:
            for obs in observers:
                await obs.close()
            await _stop(task)
        return engine.command_log

    silent = asyncio.run(run_with_observers(0))
    loaded = asyncio.run(run_with_observers(3))
    assert silent == loaded
    assert len(silent) == 2
