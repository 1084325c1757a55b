import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gesturequad.landmarks import (BODY_INDEX, BODY_LANDMARK_COUNT,
                                   HAND_LANDMARK_COUNT, BodyFrame, HandFrame,
                                   Landmark, unmirror)
from gesturequad.session import decode_event, encode_event


def make_body(overrides=None, mirrored=False, t=0):
    points = [Landmark(0.5, 0.5) for _ in range(BODY_LANDMARK_COUNT)]
    for name, lm in (overrides or {}).items():
        points[BODY_INDEX[name]] = lm
    return BodyFrame(timestamp_ms=t, landmarks=tuple(points), mirrored=mirrored)


def test_frame_size_enforced():
    with pytest.raises(ValueError):
        BodyFrame(0, tuple(Landmark(0, 0) for _ in range(32)))
    with pytest.raises(ValueError):
        HandFrame(0, tuple(Landmark(0, 0) for _ in range(20)))


def test_landmark_validation():
    with pytest.raises(ValueError):
        Landmark(math.nan, 0.5)
    with pytest.raises(ValueError):
        Landmark(0.5, 0.5, visibility=1.5)


def test_unmirror_reflects_and_swaps():
    frame = make_body({"left_wrist": Landmark(0.2, 0.4, 0.1, 0.9),
                       "right_wrist": Landmark(0.2, 0.6, 0.2, 0.8)}, mirrored=True)
    out = unmirror(frame)
    assert not out.mirrored
    # both wrists sat at x=0.2, so either accessor now reads x=0.8
    assert out.left_wrist.x == pytest.approx(0.8)
    assert out.right_wrist.x == pytest.approx(0.8)
    # naming swapped: the old left wrist's y/z/visibility are now on the right
    assert out.right_wrist.y == 0.4 and out.right_wrist.z == 0.1 and out.right_wrist.visibility == 0.9
    assert out.left_wrist.y == 0.6 and out.left_wrist.z == 0.2


def test_unmirror_identity_when_not_mirrored():
    frame = make_body({"left_wrist": Landmark(0.2, 0.4)})
    assert unmirror(frame) is frame


def test_unmirror_idempotent():
    frame = make_body({"left_wrist": Landmark(0.25, 0.4)}, mirrored=True, t=7)
    once = unmirror(frame)
    assert unmirror(once) is once
    assert once.timestamp_ms == 7


def test_unmirror_hand_flips_handedness():
    points = tuple(Landmark(0.3, 0.5) for _ in range(HAND_LANDMARK_COUNT))
    frame = HandFrame(0, points, handedness="left", mirrored=True)
    out = unmirror(frame)
    assert out.handedness == "right"
    assert out.wrist.x == pytest.approx(0.7)
    assert not out.mirrored


coords = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
visibilities = st.floats(min_value=0.0, max_value=1.0)
landmarks = st.builds(Landmark, x=coords, y=coords,
                      z=st.one_of(st.none(), st.floats(-2, 2)), visibility=visibilities)


@given(st.lists(landmarks, min_size=33, max_size=33),
       st.booleans(), st.integers(0, 10**9))
@settings(max_examples=25, deadline=None)
def test_body_frame_codec_round_trip(points, mirrored, t):
    frame = BodyFrame(t, tuple(points), mirrored=mirrored)
    line = encode_event(frame)
    decoded = decode_event(line)
    assert decoded == frame
    assert encode_event(decoded) == line  # canonical form is a fixed point


@given(st.lists(landmarks, min_size=21, max_size=21),
       st.sampled_from(["left", "right"]), st.booleans(), st.integers(0, 10**9))
@settings(max_examples=25, deadline=None)
def test_hand_frame_codec_round_trip(points, handedness, mirrored, t):
    frame = HandFrame(t, tuple(points), handedness=handedness, mirrored=mirrored)
    line = encode_event(frame)
    decoded = decode_event(line)
    assert decoded == frame
    assert encode_event(decoded) == line


@given(st.lists(landmarks, min_size=33, max_size=33))
@settings(max_examples=20, deadline=None)
def test_unmirror_preserves_everything_but_x(points):
    frame = BodyFrame(0, tuple(points), mirrored=True)
    out = unmirror(frame)

    def key(lm):
        return (lm.y, lm.z is not None, lm.z or 0.0, lm.visibility)

    assert sorted(map(key, frame.landmarks)) == sorted(map(key, out.landmarks))
    assert sorted(round(1.0 - lm.x, 12) for lm in frame.landmarks) == \
        sorted(round(lm.x, 12) for lm in out.landmarks)
