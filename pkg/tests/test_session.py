import json

import pytest

from gesturequad.engine import replay
from gesturequad.errors import CorruptRecord, OrderViolation
from gesturequad.gestures import RobotCommand
from gesturequad.scripting import write_scripted_session
from gesturequad.session import (GestureEvent, SessionHeader, SessionWriter,
                                 decode_event, encode_event, read_session,
                                 validate_session)
from gesturequad.skeleton import body_pose_frame

HEADER = SessionHeader(session_id="t", mode="body", config_hash="0" * 64,
                       created_at="1970-01-01T00:00:00Z")


def test_record_appends_in_order(tmp_path):
    path = tmp_path / "s.session"
    with SessionWriter(path, HEADER) as writer:
        writer.record(body_pose_frame("rest", timestamp_ms=10))
        writer.record(body_pose_frame("TPose", timestamp_ms=20))
    header, events = read_session(path)
    assert header == HEADER
    assert [e.timestamp_ms for e in events] == [10, 20]


def test_out_of_order_rejected(tmp_path):
    path = tmp_path / "s.session"
    with SessionWriter(path, HEADER) as writer:
        writer.record(body_pose_frame("rest", timestamp_ms=100))
        with pytest.raises(OrderViolation):
            writer.record(body_pose_frame("rest", timestamp_ms=99))


def test_empty_session_is_valid(tmp_path):
    path = tmp_path / "s.session"
    SessionWriter(path, HEADER).close()
    header, events = read_session(path)
    assert header.session_id == "t"
    assert events == []


def test_truncated_file_reports_line(tmp_path):
    path = tmp_path / "s.session"
    with SessionWriter(path, HEADER) as writer:
        writer.record(body_pose_frame("rest", timestamp_ms=10))
    text = path.read_text()
    path.write_text(text[:-40])  # chop the tail of the last record
    with pytest.raises(CorruptRecord) as err:
        read_session(path)
    assert err.value.line_number == 2


def test_missing_header_rejected(tmp_path):
    path = tmp_path / "s.session"
    path.write_text(encode_event(body_pose_frame("rest", timestamp_ms=1)) + "\n")
    with pytest.raises(CorruptRecord) as err:
        read_session(path)
    assert err.value.line_number == 1


def test_unknown_record_type_rejected(tmp_path):
    path = tmp_path / "s.session"
    with SessionWriter(path, HEADER) as writer:
        writer.record(body_pose_frame("rest", timestamp_ms=10))
    with open(path, "a") as fh:
        fh.write(json.dumps({"type": "mystery", "t_ms": 11}) + "\n")
    with pytest.raises(CorruptRecord) as err:
        read_session(path)
    assert err.value.line_number == 3


def test_event_codec_round_trip_for_derived_events():
    from gesturequad.gestures import body_gesture
    from gesturequad.pipeline import CommandEvent
    from gesturequad.session import CourseEvent, RobotStateEvent
    from gesturequad.sim import CourseStatus, RobotState

    events = [
        GestureEvent(t_ms=5, gesture=body_gesture("TPose")),
        CommandEvent(timestamp_ms=6, command=RobotCommand.LAY_DOWN,
                     source_gesture=body_gesture("TPose")),
        RobotStateEvent(t_ms=7, state=RobotState(x=1.25, y=-0.5, heading=30.0)),
        CourseEvent(t_ms=8, status=CourseStatus(2, False, 1234)),
    ]
    for event in events:
        line = encode_event(event)
        assert decode_event(line) == event
        assert encode_event(decode_event(line)) == line


def command_lines(path):
    return [line for line in open(path) if '"type":"command"' in line]


def test_replay_twice_is_byte_identical(tmp_path, config, course):
    source = tmp_path / "src.session"
    write_scripted_session(source, [RobotCommand.GO_FORWARD, RobotCommand.ROTATE_CCW],
                           config, kind="body")
    out1, out2 = tmp_path / "r1.session", tmp_path / "r2.session"
    replay(source, config, course, record_path=out1)
    replay(source, config, course, record_path=out2)
    assert out1.read_bytes() == out2.read_bytes()
    assert command_lines(out1) == command_lines(out2)
    assert len(command_lines(out1)) == 2


def test_record_then_replay_reproduces_derived_events(tmp_path, config, course):
    source = tmp_path / "src.session"
    write_scripted_session(source, [RobotCommand.GO_FORWARD] * 3, config, kind="body")
    first = tmp_path / "first.session"
    replay(source, config, course, record_path=first)
    second = tmp_path / "second.session"
    replay(first, config, course, record_path=second)

    def derived(path):
        return [line for line in open(path)
                if any(k in line for k in
                       ('"type":"gesture"', '"type":"command"', '"type":"robot_state"'))]

    assert derived(first) == derived(second)


def test_replay_at_other_dt_changes_nothing_dispatched(tmp_path, config, course):
    source = tmp_path / "src.session"
    write_scripted_session(source, [RobotCommand.GO_FORWARD] * 4, config, kind="body")
    engines = [replay(source, config, course, dt_ms=dt) for dt in (1, 16, 100)]
    logs = [e.command_log for e in engines]
    assert logs[0] == logs[1] == logs[2]


def test_validate_session_passes_for_recorded_run(tmp_path, config, course):
    source = tmp_path / "src.session"
    write_scripted_session(source, [RobotCommand.GO_FORWARD] * 2, config, kind="body")
    out = tmp_path / "out.session"
    replay(source, config, course, record_path=out)
    validate_session(out, stable_frames=config.pipeline.stable_frames)


def test_validate_session_detects_unsupported_command(tmp_path):
    path = tmp_path / "bad.session"
    with SessionWriter(path, HEADER) as writer:
        from gesturequad.gestures import body_gesture
        from gesturequad.pipeline import CommandEvent
        writer.record(GestureEvent(t_ms=1, gesture=body_gesture("TPose")))
        writer.record(CommandEvent(timestamp_ms=2, command=RobotCommand.LAY_DOWN,
                                   source_gesture=body_gesture("TPose")))
    with pytest.raises(CorruptRecord):
        validate_session(path, stable_frames=5)
