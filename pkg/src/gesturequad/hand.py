"""Hand pose classification from fingertip/knuckle keypoint comparisons.

Finger states come from plain coordinate comparisons along the finger
chain (remember y grows downward, so "up" is decreasing y); the nine
gestures are combinations of those states plus, for fists, the
orientation of the wrist-to-middle-knuckle direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MissingKeypoint
from .gestures import HAND_NEUTRAL, Gesture, hand_gesture
from .landmarks import FINGERS, HandFrame, Landmark


@dataclass(frozen=True)
class HandParams:
    """Tunable predicate parameters (GestureConfig `hand` section)."""

    # Fist orientation sectors: |angle - cardinal| < half width. Strict
    # comparison keeps the three sectors disjoint at the 45-degree seams.
    fist_sector_half_width_deg: float = 45.0
    # Extra margin each comparison must clear, as a fraction of the hand
    # bounding-box diagonal; 0 disables it.
    hysteresis_margin: float = 0.0


DEFAULT_HAND_PARAMS = HandParams()

STATE_EXTENDED_UP = "extended_up"
STATE_EXTENDED_LEFT = "extended_left"
STATE_EXTENDED_RIGHT = "extended_right"
STATE_FOLDED = "folded"
STATE_OTHER = "other"


def _require(landmark: Landmark, name: str) -> Landmark:
    if landmark is None or landmark.visibility <= 0.0:
        raise MissingKeypoint(f"landmark {name} absent")
    return landmark


def _bbox_diag(frame: HandFrame) -> float:
    xs = [lm.x for lm in frame.landmarks]
    ys = [lm.y for lm in frame.landmarks]
    return math.hypot(max(xs) - min(xs), max(ys) - min(ys))


def finger_state(frame: HandFrame, finger: str, params: HandParams = DEFAULT_HAND_PARAMS) -> str:
    """One of extended_up/left/right, folded, or other.

    Extension is checked before folding, so a finger that somehow
    satisfied both would count as extended; on physical hands the two
    cannot hold at once.
    """
    if finger not in FINGERS:
        raise KeyError(finger)
    mcp, pip_, _dip, tip = frame.finger_joints(finger)
    wrist = frame.wrist
    for lm, name in ((mcp, f"{finger} mcp"), (pip_, f"{finger} pip"),
                     (tip, f"{finger} tip"), (wrist, "wrist")):
        _require(lm, name)
    margin = params.hysteresis_margin * _bbox_diag(frame) if params.hysteresis_margin > 0 else 0.0

    if tip.y + margin < pip_.y and pip_.y + margin < mcp.y:
        return STATE_EXTENDED_UP
    if tip.x + margin < pip_.x and pip_.x + margin < mcp.x:
        return STATE_EXTENDED_LEFT
    if tip.x > pip_.x + margin and pip_.x > mcp.x + margin:
        return STATE_EXTENDED_RIGHT
    tip_d = math.hypot(tip.x - wrist.x, tip.y - wrist.y)
    pip_d = math.hypot(pip_.x - wrist.x, pip_.y - wrist.y)
    if tip_d + margin < pip_d:
        return STATE_FOLDED
    return STATE_OTHER


def _fist_sector(frame: HandFrame, params: HandParams) -> str | None:
    """'up'/'left'/'right' when the wrist->middle-MCP direction falls in
    that sector; None otherwise (including a downward fist)."""
    wrist = frame.wrist
    mcp = frame.finger_joints("middle")[0]
    dx, dy = mcp.x - wrist.x, mcp.y - wrist.y
    if math.hypot(dx, dy) < 1e-12:
        return None
    theta = math.degrees(math.atan2(dy, dx))
    for sector, center in (("up", -90.0), ("left", 180.0), ("right", 0.0)):
        diff = (theta - center + 180.0) % 360.0 - 180.0
        if abs(diff) < params.fist_sector_half_width_deg:
            return sector
    return None


def hand_gesture_candidates(frame: HandFrame, params: HandParams = DEFAULT_HAND_PARAMS) -> list[Gesture]:
    """All gesture predicates that hold for the frame.

    The predicates are mutually exclusive by construction (each pair
    demands conflicting states of some finger, or disjoint fist
    sectors), so the list has at most one element; returning the full
    list keeps that claim testable.
    """
    try:
        states = {f: finger_state(frame, f, params) for f in FINGERS}
    except MissingKeypoint:
        return []
    index, middle, ring, pinky = (states[f] for f in ("index", "middle", "ring", "pinky"))
    fingers4 = (index, middle, ring, pinky)
    rest_folded = all(s == STATE_FOLDED for s in (middle, ring, pinky))

    candidates = []
    if index == STATE_EXTENDED_UP and rest_folded:
        candidates.append(hand_gesture("PointUp"))
    if all(s == STATE_EXTENDED_UP for s in fingers4) and states["thumb"] != STATE_FOLDED:
        candidates.append(hand_gesture("PalmOut"))
    if index == STATE_EXTENDED_LEFT and rest_folded:
        candidates.append(hand_gesture("PointLeft"))
    if index == STATE_EXTENDED_RIGHT and rest_folded:
        candidates.append(hand_gesture("PointRight"))
    if all(s == STATE_EXTENDED_LEFT for s in fingers4):
        candidates.append(hand_gesture("SidewaysLeft"))
    if all(s == STATE_EXTENDED_RIGHT for s in fingers4):
        candidates.append(hand_gesture("SidewaysRight"))
    if all(s == STATE_FOLDED for s in fingers4):
        sector = _fist_sector(frame, params)
        if sector == "up":
            candidates.append(hand_gesture("Fist"))
        elif sector == "left":
            candidates.append(hand_gesture("FistLeft"))
        elif sector == "right":
            candidates.append(hand_gesture("FistRight"))
    return candidates


def classify_hand(frame: HandFrame, params: HandParams = DEFAULT_HAND_PARAMS) -> Gesture:
    """The gesture whose predicate fires, or Neutral (also on missing keypoints)."""
    candidates = hand_gesture_candidates(frame, params)
    return candidates[0] if candidates else HAND_NEUTRAL
