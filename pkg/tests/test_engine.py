import dataclasses

from gesturequad.config import GestureConfig
from gesturequad.engine import SessionEngine, replay
from gesturequad.gestures import RobotCommand
from gesturequad.pipeline import Phase
from gesturequad.scripting import ZIGZAG_COMMANDS, write_scripted_session
from gesturequad.session import read_session
from gesturequad.skeleton import body_pose_frame, hand_pose_frame


def test_zigzag_replay_completes(tmp_path, config, course):
    source = tmp_path / "zigzag.session"
    write_scripted_session(source, ZIGZAG_COMMANDS, config, kind="body")
    engine = replay(source, config, course)
    summary = engine.summary()
    assert summary["completed"]
    assert summary["command_count"] == len(ZIGZAG_COMMANDS)
    assert sum(summary["per_gesture"].values()) == summary["command_count"]


def test_course_elapsed_independent_of_tick_size(tmp_path, config, course):
    source = tmp_path / "zigzag.session"
    write_scripted_session(source, ZIGZAG_COMMANDS, config, kind="body")
    elapsed = {}
    for dt in (1, 16, 100):
        engine = replay(source, config, course, dt_ms=dt)
        assert engine.summary()["completed"]
        elapsed[dt] = engine.summary()["elapsed_ms"]
    assert abs(elapsed[1] - elapsed[16]) <= 16
    assert abs(elapsed[1] - elapsed[100]) <= 100
    assert abs(elapsed[16] - elapsed[100]) <= 100


def test_hand_mode_session(tmp_path, config, course):
    source = tmp_path / "hand.session"
    commands = [RobotCommand.GO_FORWARD, RobotCommand.TURN_AROUND]
    write_scripted_session(source, commands, config, kind="hand")
    engine = replay(source, config, course)
    assert engine.summary()["command_count"] == 2
    assert engine.robot.heading == 180.0


def test_invalid_posture_command_is_ignored_and_cooled_down(config, course):
    # LayDown twice: the second is dispatched but the sim refuses it.
    logged = []
    engine = SessionEngine(mode="body", config=config, course=course,
                           log=logged.append)
    t = 0
    for _ in range(config.pipeline.stable_frames):
        engine.handle_frame(body_pose_frame("TPose", timestamp_ms=t))
        t += 33
    assert engine.robot.motion is not None
    # let the lay-down motion and cooldown pass
    engine.advance_to(t + 4000)
    assert engine.robot.posture == "lying"
    t += 4000
    for _ in range(config.pipeline.stable_frames):
        engine.handle_frame(body_pose_frame("TPose", timestamp_ms=t))
        t += 33
    assert logged and "LayDown" in logged[0]
    assert engine.robot.posture == "lying"
    assert engine.robot.motion is None
    assert engine.pipeline_state.phase is Phase.COOLDOWN
    assert engine.summary()["command_count"] == 2  # dispatched, then ignored


def test_frame_timestamps_normalized_monotone(config, course):
    engine = SessionEngine(mode="body", config=config, course=course)
    engine.handle_frame(body_pose_frame("rest", timestamp_ms=100))
    engine.handle_frame(body_pose_frame("rest", timestamp_ms=100))  # duplicate
    engine.handle_frame(body_pose_frame("rest", timestamp_ms=50))   # stale
    assert engine.last_frame_ms == 102


def test_wrong_frame_type_for_mode_is_neutral(config, course):
    engine = SessionEngine(mode="body", config=config, course=course)
    gesture = engine.handle_frame(hand_pose_frame("PointUp", timestamp_ms=10))
    assert gesture.is_neutral and gesture.kind == "body"


def test_snapshot_wire_shape(config, course):
    engine = SessionEngine(mode="body", config=config, course=course)
    engine.handle_frame(body_pose_frame("TPose", timestamp_ms=5))
    snap = engine.snapshot()
    assert snap["type"] == "state"
    assert set(snap["robot"]) == {"x", "y", "heading", "posture"}
    assert snap["gesture"] == "TPose"
    assert snap["phase"] in ("idle", "executing", "cooldown")
    assert set(snap["course"]) == {"next", "elapsed_ms", "completed"}
    assert isinstance(snap["cooldown_ms"], int)


def test_auto_face_user_in_session(tmp_path, config, course):
    motion = dataclasses.replace(config.motion, auto_face_user=True,
                                 user_anchor=(-1.0, 0.0))
    cfg = GestureConfig(body_poses=config.body_poses,
                        vis_threshold=config.vis_threshold, hand=config.hand,
                        pipeline=config.pipeline, motion=motion)
    source = tmp_path / "face.session"
    write_scripted_session(source, [RobotCommand.GO_FORWARD], cfg, kind="body")
    engine = replay(source, cfg, course)
    # after stepping to (0.5, 0), the robot turns back toward the anchor
    assert engine.robot.x == 0.5
    assert engine.robot.heading == 180.0


def test_replay_warns_on_config_hash_mismatch(tmp_path, config, course):
    source = tmp_path / "s.session"
    write_scripted_session(source, [RobotCommand.GO_FORWARD], config, kind="body")
    text = source.read_text().replace(config.hash, "f" * 64)
    source.write_text(text)
    warnings = []
    replay(source, config, course, log=warnings.append)
    assert any("hash mismatch" in w for w in warnings)


def test_replay_records_course_events(tmp_path, config, course):
    source = tmp_path / "zigzag.session"
    write_scripted_session(source, ZIGZAG_COMMANDS, config, kind="body")
    out = tmp_path / "out.session"
    replay(source, config, course, record_path=out)
    _, events = read_session(out)
    from gesturequad.session import CourseEvent
    captures = [e for e in events if isinstance(e, CourseEvent)]
    assert len(captures) == len(course.waypoints)
    assert captures[-1].status.completed
