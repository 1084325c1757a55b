import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gesturequad.errors import IllegalTransition
from gesturequad.gestures import (HAND_NEUTRAL, RobotCommand,
                                  body_gesture, hand_gesture)
from gesturequad.pipeline import (Phase, PipelineParams, PipelineState,
                                  effective_phase, motion_complete, step)

PARAMS = PipelineParams(stable_frames=5, cooldown_ms=2000)


def drive(state, gestures, start_ms=0, period=33, params=PARAMS):
    events = []
    t = start_ms
    for gesture in gestures:
        state, event = step(state, gesture, t, params)
        if event:
            events.append(event)
        t += period
    return state, events, t


def test_five_stable_frames_dispatch():
    state = PipelineState(mode="hand")
    state, events, _ = drive(state, [hand_gesture("PointUp")] * 5)
    assert [e.command for e in events] == [RobotCommand.GO_FORWARD]
    assert state.phase is Phase.EXECUTING
    assert events[0].timestamp_ms == 4 * 33
    assert events[0].source_gesture == hand_gesture("PointUp")


def test_fewer_than_k_frames_never_dispatch():
    state = PipelineState(mode="hand")
    state, events, _ = drive(state, [hand_gesture("PointUp")] * 4)
    assert events == []
    assert state.stable_count == 4


def test_gesture_change_resets_counter():
    state = PipelineState(mode="hand")
    stream = [hand_gesture("PointUp")] * 4 + [hand_gesture("PalmOut")] + \
             [hand_gesture("PointUp")] * 4
    state, events, _ = drive(state, stream)
    assert events == []


def test_alternating_gesture_neutral_never_dispatches():
    state = PipelineState(mode="hand")
    stream = [hand_gesture("PointUp"), HAND_NEUTRAL] * 50
    _, events, _ = drive(state, stream)
    assert events == []


def test_gestures_ignored_while_executing():
    state = PipelineState(mode="hand")
    state, events, t = drive(state, [hand_gesture("PointUp")] * 5)
    assert len(events) == 1
    state, more, t = drive(state, [hand_gesture("PalmOut")] * 20, start_ms=t)
    assert more == []
    assert state.phase is Phase.EXECUTING


def test_cooldown_blocks_until_deadline():
    state = PipelineState(mode="body")
    state, events, t = drive(state, [body_gesture("TPose")] * 5)
    state = motion_complete(state, 10_000, PARAMS)
    assert state.phase is Phase.COOLDOWN
    assert state.cooldown_deadline_ms == 12_000
    # stable stream entirely inside the cooldown: no emission
    state, events, _ = drive(state, [body_gesture("TPose")] * 20,
                             start_ms=10_100, period=25)
    assert events == []
    # after the deadline the same stream dispatches again
    state, events, _ = drive(state, [body_gesture("TPose")] * 5, start_ms=12_000)
    assert [e.command for e in events] == [RobotCommand.LAY_DOWN]


def test_motion_complete_requires_executing():
    with pytest.raises(IllegalTransition):
        motion_complete(PipelineState(mode="body"), 0, PARAMS)


def test_zero_cooldown_is_immediately_idle():
    params = PipelineParams(stable_frames=1, cooldown_ms=0)
    state = PipelineState(mode="hand")
    state, event = step(state, hand_gesture("Fist"), 100, params)
    assert event is not None
    state = motion_complete(state, 200, params)
    state, event = step(state, hand_gesture("Fist"), 200, params)
    assert event is not None and event.timestamp_ms == 200


def test_mode_isolation():
    state = PipelineState(mode="body")
    _, events, _ = drive(state, [hand_gesture("PointUp")] * 50)
    assert events == []
    state = PipelineState(mode="hand")
    _, events, _ = drive(state, [body_gesture("TPose")] * 50)
    assert events == []


def test_wrong_kind_resets_streak():
    state = PipelineState(mode="body")
    stream = [body_gesture("TPose")] * 4 + [hand_gesture("Fist")] + \
             [body_gesture("TPose")] * 4
    _, events, _ = drive(state, stream)
    assert events == []


def test_effective_phase_reports_idle_after_deadline():
    state = PipelineState(mode="body", phase=Phase.COOLDOWN, cooldown_deadline_ms=5000)
    assert effective_phase(state, 4999) is Phase.COOLDOWN
    assert effective_phase(state, 5000) is Phase.IDLE
    assert state.cooldown_remaining_ms(3000) == 2000
    assert state.cooldown_remaining_ms(6000) == 0


def test_replay_determinism():
    stream = ([hand_gesture("PointUp")] * 7 + [HAND_NEUTRAL] * 3 +
              [hand_gesture("Fist")] * 9)

    def run():
        state = PipelineState(mode="hand")
        events = []
        t = 0
        for gesture in stream:
            state, event = step(state, gesture, t, PARAMS)
            if event:
                events.append(event)
                state = motion_complete(state, t + 1500, PARAMS)
            t += 33
        return events

    assert run() == run()


gesture_ids = st.integers(min_value=0, max_value=9)


@given(st.lists(st.tuples(gesture_ids, st.integers(1, 400)), min_size=10, max_size=300),
       st.integers(1, 8), st.integers(0, 4000))
@settings(max_examples=60, deadline=None)
def test_minimum_spacing_property(stream, k, cooldown):
    """Dispatches are always >= motion_duration + cooldown apart."""
    from gesturequad.gestures import HAND_GESTURES
    params = PipelineParams(stable_frames=k, cooldown_ms=cooldown)
    motion_ms = 1500
    state = PipelineState(mode="hand")
    t = 0
    dispatches = []
    pending_complete = None
    for gesture_id, dt in stream:
        t += dt
        if pending_complete is not None and t >= pending_complete:
            state = motion_complete(state, pending_complete, params)
            pending_complete = None
        gesture = HAND_NEUTRAL if gesture_id == 9 else hand_gesture(HAND_GESTURES[gesture_id])
        state, event = step(state, gesture, t, params)
        if event:
            dispatches.append(event.timestamp_ms)
            pending_complete = event.timestamp_ms + motion_ms
    for first, second in zip(dispatches, dispatches[1:]):
        assert second - first >= motion_ms + cooldown
