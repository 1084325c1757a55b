"""Landmark frames for body and hand skeletons.

Coordinates follow the image convention delivered by capture devices:
x grows rightward, y grows downward, both nominally normalized to [0,1].
"up" therefore always means decreasing y. z is a unitless relative depth
that is carried through but never used for classification.

The landmark index order is a protocol constant (see the name lists
below); producers on the wire must emit landmarks in exactly this order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

# Body landmark indices (33-point model order, fixed protocol constant).
BODY_LANDMARK_NAMES = (
    "nose",
    "left_eye_inner", "left_eye", "left_eye_outer",
    "right_eye_inner", "right_eye", "right_eye_outer",
    "left_ear", "right_ear",
    "mouth_left", "mouth_right",
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
    "left_pinky", "right_pinky",
    "left_index", "right_index",
    "left_thumb", "right_thumb",
    "left_hip", "right_hip",
    "left_knee", "right_knee",
    "left_ankle", "right_ankle",
    "left_heel", "right_heel",
    "left_foot_index", "right_foot_index",
)
BODY_INDEX = {name: i for i, name in enumerate(BODY_LANDMARK_NAMES)}
BODY_LANDMARK_COUNT = 33

# Index pairs that swap when a frame is reflected left<->right.
_BODY_MIRROR_PAIRS = tuple(
    (BODY_INDEX["left_" + stem], BODY_INDEX["right_" + stem])
    for stem in (
        "eye_inner", "eye", "eye_outer", "ear", "shoulder", "elbow", "wrist",
        "pinky", "index", "thumb", "hip", "knee", "ankle", "heel", "foot_index",
    )
) + ((BODY_INDEX["mouth_left"], BODY_INDEX["mouth_right"]),)

# Hand landmark indices (21-point model order, fixed protocol constant).
HAND_LANDMARK_NAMES = (
    "wrist",
    "thumb_cmc", "thumb_mcp", "thumb_ip", "thumb_tip",
    "index_mcp", "index_pip", "index_dip", "index_tip",
    "middle_mcp", "middle_pip", "middle_dip", "middle_tip",
    "ring_mcp", "ring_pip", "ring_dip", "ring_tip",
    "pinky_mcp", "pinky_pip", "pinky_dip", "pinky_tip",
)
HAND_INDEX = {name: i for i, name in enumerate(HAND_LANDMARK_NAMES)}
HAND_LANDMARK_COUNT = 21

FINGERS = ("thumb", "index", "middle", "ring", "pinky")

# Per finger: indices filling the (mcp, pip, dip, tip) accessor slots.
# The thumb has no PIP/DIP; its CMC/MCP/IP/TIP chain fills the slots
# positionally.
FINGER_JOINTS = {
    "thumb": (1, 2, 3, 4),
    "index": (5, 6, 7, 8),
    "middle": (9, 10, 11, 12),
    "ring": (13, 14, 15, 16),
    "pinky": (17, 18, 19, 20),
}


@dataclass(frozen=True)
class Landmark:
    x: float
    y: float
    z: float | None = None
    visibility: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("landmark coordinates must be finite")
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError("visibility must be in [0,1]")

    @property
    def point(self) -> tuple[float, float]:
        return (self.x, self.y)

    def reflected(self) -> "Landmark":
        return replace(self, x=1.0 - self.x)


def _check_landmarks(landmarks, expected: int):
    landmarks = tuple(landmarks)
    if len(landmarks) != expected:
        raise ValueError(f"expected {expected} landmarks, got {len(landmarks)}")
    return landmarks


@dataclass(frozen=True)
class BodyFrame:
    """One timestamped 33-point body skeleton."""

    timestamp_ms: int
    landmarks: tuple[Landmark, ...]
    mirrored: bool = False

    def __post_init__(self):
        object.__setattr__(self, "landmarks", _check_landmarks(self.landmarks, BODY_LANDMARK_COUNT))

    def __getitem__(self, name: str) -> Landmark:
        return self.landmarks[BODY_INDEX[name]]

    @property
    def nose(self) -> Landmark:
        return self.landmarks[BODY_INDEX["nose"]]

    @property
    def left_shoulder(self) -> Landmark:
        return self.landmarks[BODY_INDEX["left_shoulder"]]

    @property
    def right_shoulder(self) -> Landmark:
        return self.landmarks[BODY_INDEX["right_shoulder"]]

    @property
    def left_elbow(self) -> Landmark:
        return self.landmarks[BODY_INDEX["left_elbow"]]

    @property
    def right_elbow(self) -> Landmark:
        return self.landmarks[BODY_INDEX["right_elbow"]]

    @property
    def left_wrist(self) -> Landmark:
        return self.landmarks[BODY_INDEX["left_wrist"]]

    @property
    def right_wrist(self) -> Landmark:
        return self.landmarks[BODY_INDEX["right_wrist"]]

    @property
    def left_hip(self) -> Landmark:
        return self.landmarks[BODY_INDEX["left_hip"]]

    @property
    def right_hip(self) -> Landmark:
        return self.landmarks[BODY_INDEX["right_hip"]]

    @property
    def left_knee(self) -> Landmark:
        return self.landmarks[BODY_INDEX["left_knee"]]

    @property
    def right_knee(self) -> Landmark:
        return self.landmarks[BODY_INDEX["right_knee"]]

    @property
    def left_ankle(self) -> Landmark:
        return self.landmarks[BODY_INDEX["left_ankle"]]

    @property
    def right_ankle(self) -> Landmark:
        return self.landmarks[BODY_INDEX["right_ankle"]]


@dataclass(frozen=True)
class HandFrame:
    """One timestamped 21-point hand skeleton."""

    timestamp_ms: int
    landmarks: tuple[Landmark, ...]
    handedness: str = "right"
    mirrored: bool = False

    def __post_init__(self):
        object.__setattr__(self, "landmarks", _check_landmarks(self.landmarks, HAND_LANDMARK_COUNT))
        if self.handedness not in ("left", "right"):
            raise ValueError(f"handedness must be 'left' or 'right', got {self.handedness!r}")

    def __getitem__(self, name: str) -> Landmark:
        return self.landmarks[HAND_INDEX[name]]

    @property
    def wrist(self) -> Landmark:
        return self.landmarks[0]

    def finger_joints(self, finger: str) -> tuple[Landmark, Landmark, Landmark, Landmark]:
        """(mcp, pip, dip, tip) landmarks; the thumb maps CMC/MCP/IP/TIP."""
        i_mcp, i_pip, i_dip, i_tip = FINGER_JOINTS[finger]
        lm = self.landmarks
        return lm[i_mcp], lm[i_pip], lm[i_dip], lm[i_tip]


def unmirror(frame):
    """Return the egocentric (unmirrored) equivalent of ``frame``.

    For a mirrored frame every x becomes 1-x, left/right accessor naming
    is swapped (handedness flipped for hands), and the flag is cleared.
    Unmirrored frames pass through untouched, so the operation is
    idempotent. y, z, visibility and the timestamp are preserved.
    """
    if not frame.mirrored:
        return frame
    reflected = [lm.reflected() for lm in frame.landmarks]
    if isinstance(frame, BodyFrame):
        for a, b in _BODY_MIRROR_PAIRS:
            reflected[a], reflected[b] = reflected[b], reflected[a]
        return BodyFrame(frame.timestamp_ms, tuple(reflected), mirrored=False)
    flipped = "left" if frame.handedness == "right" else "right"
    return HandFrame(frame.timestamp_ms, tuple(reflected), handedness=flipped, mirrored=False)
