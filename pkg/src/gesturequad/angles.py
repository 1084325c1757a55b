"""Joint angles from body landmarks.

Each of the eight tracked joints (two shoulders, elbows, hips, knees)
gets the signed angle between its two limb vectors, measured
counterclockwise in the image plane and normalized to [0,360). The
signed convention is what lets interval bounds tell a left-bent limb
from a right-bent one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateVector
from .landmarks import BodyFrame

ANGLE_NAMES = (
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_hip", "right_hip",
    "left_knee", "right_knee",
)

# vertex, first ray endpoint, second ray endpoint (landmark names)
_JOINT_OPERANDS = {
    "left_shoulder": ("left_shoulder", "left_elbow", "left_hip"),
    "right_shoulder": ("right_shoulder", "right_elbow", "right_hip"),
    "left_elbow": ("left_elbow", "left_shoulder", "left_wrist"),
    "right_elbow": ("right_elbow", "right_shoulder", "right_wrist"),
    "left_hip": ("left_hip", "left_shoulder", "left_knee"),
    "right_hip": ("right_hip", "right_shoulder", "right_knee"),
    "left_knee": ("left_knee", "left_hip", "left_ankle"),
    "right_knee": ("right_knee", "right_hip", "right_ankle"),
}

_EPS = 1e-12

DEFAULT_VIS_THRESHOLD = 0.5


def joint_angle(vertex, p1, p2) -> float:
    """Signed CCW angle in degrees from vector vertex->p1 to vertex->p2.

    Points are (x, y) pairs; the result is normalized to [0,360).
    Raises DegenerateVector when either vector has zero length.
    """
    ax, ay = p1[0] - vertex[0], p1[1] - vertex[1]
    bx, by = p2[0] - vertex[0], p2[1] - vertex[1]
    if math.hypot(ax, ay) < _EPS or math.hypot(bx, by) < _EPS:
        raise DegenerateVector("zero-length joint vector")
    cross = ax * by - ay * bx
    dot = ax * bx + ay * by
    return math.degrees(math.atan2(cross, dot)) % 360.0


@dataclass(frozen=True)
class AngleVector:
    """The eight joint angles of one frame; None marks an unavailable joint."""

    left_shoulder: float | None = None
    right_shoulder: float | None = None
    left_elbow: float | None = None
    right_elbow: float | None = None
    left_hip: float | None = None
    right_hip: float | None = None
    left_knee: float | None = None
    right_knee: float | None = None

    def get(self, name: str) -> float | None:
        if name not in ANGLE_NAMES:
            raise KeyError(name)
        return getattr(self, name)

    def available(self, name: str) -> bool:
        return self.get(name) is not None

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in ANGLE_NAMES}


def compute_angles(frame: BodyFrame, vis_threshold: float = DEFAULT_VIS_THRESHOLD) -> AngleVector:
    """All eight joint angles for an unmirrored frame.

    A joint is unavailable when any of its three landmarks falls below
    the visibility threshold or the landmarks coincide.
    """
    values = {}
    for angle_name, (vertex, p1, p2) in _JOINT_OPERANDS.items():
        lms = (frame[vertex], frame[p1], frame[p2])
        if any(lm.visibility < vis_threshold for lm in lms):
            values[angle_name] = None
            continue
        try:
            values[angle_name] = joint_angle(lms[0].point, lms[1].point, lms[2].point)
        except DegenerateVector:
            values[angle_name] = None
    return AngleVector(**values)
