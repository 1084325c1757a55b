import pytest

from gesturequad.gestures import (BODY_GESTURES, BODY_NEUTRAL, HAND_GESTURES,
                                  HAND_NEUTRAL, Gesture, RobotCommand,
                                  body_gesture, gesture_for_command,
                                  hand_gesture, map_gesture_to_command)


def test_table_rows():
    # Table values: first row and the T-pose row.
    assert map_gesture_to_command(hand_gesture("PointUp")) is RobotCommand.GO_FORWARD
    assert map_gesture_to_command(body_gesture("HandsOnHips")) is RobotCommand.GO_FORWARD
    assert map_gesture_to_command(body_gesture("TPose")) is RobotCommand.LAY_DOWN
    assert map_gesture_to_command(hand_gesture("FistLeft")) is RobotCommand.LAY_DOWN
    assert map_gesture_to_command(hand_gesture("Fist")) is RobotCommand.TURN_AROUND


def test_neutral_maps_to_none():
    assert map_gesture_to_command(BODY_NEUTRAL) is None
    assert map_gesture_to_command(HAND_NEUTRAL) is None


@pytest.mark.parametrize("kind,names", [("body", BODY_GESTURES), ("hand", HAND_GESTURES)])
def test_mapping_is_bijective_within_kind(kind, names):
    commands = [map_gesture_to_command(Gesture(kind, name)) for name in names]
    assert None not in commands
    assert len(set(commands)) == len(list(RobotCommand)) == 9


@pytest.mark.parametrize("kind", ["body", "hand"])
def test_inverse_mapping_round_trips(kind):
    for command in RobotCommand:
        gesture = gesture_for_command(command, kind)
        assert gesture.kind == kind
        assert map_gesture_to_command(gesture) is command


def test_vocabulary_enforced():
    with pytest.raises(ValueError):
        Gesture("body", "PointUp")
    with pytest.raises(ValueError):
        Gesture("hand", "TPose")
    with pytest.raises(ValueError):
        Gesture("paw", "Fist")
    # Neutral is valid for both kinds
    assert Gesture("body", "Neutral").is_neutral
    assert Gesture("hand", "Neutral").is_neutral
