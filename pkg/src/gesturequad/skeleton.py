"""Synthetic stick-figure generators for body and hand frames.

These produce canonical, unmirrored frames for each gesture in the
vocabulary. They serve two purposes: deriving the default body-pose
bounds (canonical angle +/-25 degrees, widened if separation or noise
stability fails) and providing ground-truth fixtures for tests and
scripted sessions.

The figure stands facing the camera, so the person's left side sits at
larger image x. Arms are parameterized by the image-plane direction of
the upper arm and forearm, in degrees under the atan2(dy,dx) convention
(y grows downward: 90 points down, 270 points up).
"""

from __future__ import annotations

import math

import numpy as np

from .landmarks import (BODY_INDEX, BODY_LANDMARK_COUNT, HAND_INDEX,
                        HAND_LANDMARK_COUNT, BodyFrame, HandFrame, Landmark)

# Torso geometry in normalized image coordinates.
_HEAD = (0.5, 0.19)
_SHOULDER_Y = 0.34
_HIP_Y = 0.59
_SHOULDER_HALF = 0.08
_HIP_HALF = _SHOULDER_HALF  # hips directly below shoulders: clean angles
_UPPER_ARM = 0.15
_FOREARM = 0.15
_THIGH = 0.16
_SHIN = 0.16

# (left upper arm, left forearm, right upper arm, right forearm)
# direction angles for each canonical pose. "rest" is the neutral
# arms-hanging figure that must classify as no gesture.
ARM_DIRECTIONS = {
    "rest": (90.0, 90.0, 90.0, 90.0),
    "HandsOnHips": (60.0, 120.0, 120.0, 60.0),
    "HandsOnHead": (315.0, 225.0, 225.0, 315.0),
    "LeftArmBent": (0.0, 270.0, 90.0, 90.0),
    "RightArmBent": (90.0, 90.0, 180.0, 270.0),
    "LeftArmOut": (0.0, 0.0, 90.0, 90.0),
    "RightArmOut": (90.0, 90.0, 180.0, 180.0),
    "TPose": (0.0, 0.0, 180.0, 180.0),
    "ArmsElevated": (270.0, 270.0, 270.0, 270.0),
    "BothArmsBent": (0.0, 270.0, 180.0, 270.0),
}


def _offset(point, direction_deg, length):
    rad = math.radians(direction_deg)
    return (point[0] + length * math.cos(rad), point[1] + length * math.sin(rad))


def body_pose_points(pose: str) -> list[tuple[float, float]]:
    """All 33 landmark positions for a canonical pose (or "rest")."""
    l_up, l_fore, r_up, r_fore = ARM_DIRECTIONS[pose]
    hx, hy = _HEAD
    points = [(0.0, 0.0)] * BODY_LANDMARK_COUNT

    points[BODY_INDEX["nose"]] = (hx, hy + 0.01)
    for side, sign in (("left", 1.0), ("right", -1.0)):
        points[BODY_INDEX[f"{side}_eye_inner"]] = (hx + sign * 0.01, hy - 0.02)
        points[BODY_INDEX[f"{side}_eye"]] = (hx + sign * 0.02, hy - 0.02)
        points[BODY_INDEX[f"{side}_eye_outer"]] = (hx + sign * 0.03, hy - 0.02)
        points[BODY_INDEX[f"{side}_ear"]] = (hx + sign * 0.04, hy - 0.005)
        points[BODY_INDEX[f"mouth_{side}"]] = (hx + sign * 0.01, hy + 0.04)

    for side, sign, arm in (("left", 1.0, (l_up, l_fore)), ("right", -1.0, (r_up, r_fore))):
        shoulder = (0.5 + sign * _SHOULDER_HALF, _SHOULDER_Y)
        hip = (0.5 + sign * _HIP_HALF, _HIP_Y)
        elbow = _offset(shoulder, arm[0], _UPPER_ARM)
        wrist = _offset(elbow, arm[1], _FOREARM)
        hand_tip = _offset(wrist, arm[1], 0.03)
        knee = (hip[0], hip[1] + _THIGH)
        ankle = (knee[0], knee[1] + _SHIN)
        points[BODY_INDEX[f"{side}_shoulder"]] = shoulder
        points[BODY_INDEX[f"{side}_elbow"]] = elbow
        points[BODY_INDEX[f"{side}_wrist"]] = wrist
        points[BODY_INDEX[f"{side}_pinky"]] = hand_tip
        points[BODY_INDEX[f"{side}_index"]] = hand_tip
        points[BODY_INDEX[f"{side}_thumb"]] = (wrist[0], wrist[1] - 0.01)
        points[BODY_INDEX[f"{side}_hip"]] = hip
        points[BODY_INDEX[f"{side}_knee"]] = knee
        points[BODY_INDEX[f"{side}_ankle"]] = ankle
        points[BODY_INDEX[f"{side}_heel"]] = (ankle[0], ankle[1] + 0.02)
        points[BODY_INDEX[f"{side}_foot_index"]] = (ankle[0] + sign * 0.03, ankle[1] + 0.02)
    return points


def body_pose_frame(pose: str, timestamp_ms: int = 0) -> BodyFrame:
    landmarks = tuple(Landmark(x, y, 0.0, 1.0) for x, y in body_pose_points(pose))
    return BodyFrame(timestamp_ms=timestamp_ms, landmarks=landmarks, mirrored=False)


def perturbed_body_frame(pose: str, rng: np.random.Generator,
                         amplitude: float = 0.02, timestamp_ms: int = 0) -> BodyFrame:
    """Canonical pose with uniform +/-amplitude noise on every coordinate."""
    points = body_pose_points(pose)
    noise = rng.uniform(-amplitude, amplitude, size=(len(points), 2))
    landmarks = tuple(
        Landmark(min(max(x + dx, 0.0), 1.0), min(max(y + dy, 0.0), 1.0), 0.0, 1.0)
        for (x, y), (dx, dy) in zip(points, noise)
    )
    return BodyFrame(timestamp_ms=timestamp_ms, landmarks=landmarks, mirrored=False)


# ---------------------------------------------------------------------------
# Hand fixtures

_WRIST = (0.5, 0.8)
# Finger x lanes, ordered thumb..pinky for an upright right hand.
_LANES = {"thumb": 0.40, "index": 0.45, "middle": 0.49, "ring": 0.53, "pinky": 0.57}


def _chain(start, direction_deg, lengths):
    out = []
    p = start
    for L in lengths:
        p = _offset(p, direction_deg, L)
        out.append(p)
    return out


def _upright_joints(finger: str, state: str) -> list[tuple[float, float]]:
    """(mcp,pip,dip,tip) for a finger of an upright hand in the given state."""
    x = _LANES[finger]
    mcp = (x, 0.62)
    if state == "extended":
        return [mcp, (x, 0.54), (x, 0.48), (x, 0.42)]
    # folded: tip curls back toward the palm, ending nearer the wrist
    return [mcp, (x, 0.55), (x + 0.01, 0.61), (x + 0.01, 0.70)]


def hand_pose_points(pose: str) -> list[tuple[float, float]]:
    """All 21 landmark positions for a canonical hand gesture."""
    points = [(0.0, 0.0)] * HAND_LANDMARK_COUNT

    if pose in ("PointUp", "PalmOut"):
        points[0] = _WRIST
        for finger in ("index", "middle", "ring", "pinky"):
            state = "extended" if (pose == "PalmOut" or finger == "index") else "folded"
            joints = _upright_joints(finger, state)
            for j, p in zip(range(1, 5), joints):
                points[HAND_INDEX[f"{finger}_{('mcp', 'pip', 'dip', 'tip')[j - 1]}"]] = p
        # thumb out to the side: never folded
        points[HAND_INDEX["thumb_cmc"]] = (0.42, 0.74)
        points[HAND_INDEX["thumb_mcp"]] = (0.39, 0.69)
        points[HAND_INDEX["thumb_ip"]] = (0.37, 0.64)
        points[HAND_INDEX["thumb_tip"]] = (0.35, 0.59)
        return points

    if pose in ("PointLeft", "PointRight", "SidewaysLeft", "SidewaysRight"):
        sign = -1.0 if "Left" in pose else 1.0
        sideways = pose.startswith("Sideways")
        points[0] = (0.5, 0.8)
        rows = {"index": 0.62, "middle": 0.66, "ring": 0.70, "pinky": 0.74}
        for finger, y in rows.items():
            mcp_x = 0.5 + sign * 0.10
            if sideways or finger == "index":
                chain = [(mcp_x, y), (mcp_x + sign * 0.08, y),
                         (mcp_x + sign * 0.14, y), (mcp_x + sign * 0.20, y)]
            else:
                # folded: curl back toward the wrist
                chain = [(mcp_x, y), (mcp_x + sign * 0.06, y),
                         (mcp_x + sign * 0.01, y + 0.02), (mcp_x - sign * 0.04, y + 0.03)]
            for name, p in zip(("mcp", "pip", "dip", "tip"), chain):
                points[HAND_INDEX[f"{finger}_{name}"]] = p
        thumb = _chain((0.5, 0.76), 270.0 if sideways else (90.0 + sign * 45.0), [0.04, 0.04, 0.04, 0.04])
        for name, p in zip(("cmc", "mcp", "ip", "tip"), thumb):
            points[HAND_INDEX[f"thumb_{name}"]] = p
        return points

    if pose in ("Fist", "FistLeft", "FistRight", "Neutral"):
        # "Neutral" is a downward fist: all fingers folded but in no
        # orientation sector, so no gesture predicate fires.
        direction = {"Fist": 270.0, "FistLeft": 180.0, "FistRight": 0.0, "Neutral": 90.0}[pose]
        wrist = {"Fist": (0.5, 0.8), "FistLeft": (0.62, 0.6),
                 "FistRight": (0.38, 0.6), "Neutral": (0.5, 0.55)}[pose]
        points[0] = wrist
        perp = direction + 90.0
        for i, finger in enumerate(("index", "middle", "ring", "pinky")):
            base = _offset(wrist, direction, 0.18)
            mcp = _offset(base, perp, (i - 1.5) * 0.035)
            pip_ = _offset(mcp, direction, 0.05)
            dip = _offset(pip_, direction + 150.0, 0.05)
            tip = _offset(dip, direction + 180.0, 0.06)
            for name, p in zip(("mcp", "pip", "dip", "tip"), (mcp, pip_, dip, tip)):
                points[HAND_INDEX[f"{finger}_{name}"]] = p
        thumb = _chain(_offset(wrist, direction, 0.05), perp, [0.03, 0.03, 0.03, 0.03])
        for name, p in zip(("cmc", "mcp", "ip", "tip"), thumb):
            points[HAND_INDEX[f"thumb_{name}"]] = p
        return points

    raise KeyError(pose)


def hand_pose_frame(pose: str, timestamp_ms: int = 0, handedness: str = "right") -> HandFrame:
    landmarks = tuple(Landmark(x, y, 0.0, 1.0) for x, y in hand_pose_points(pose))
    return HandFrame(timestamp_ms=timestamp_ms, landmarks=landmarks,
                     handedness=handedness, mirrored=False)
