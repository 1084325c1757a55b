"""Body pose classification by angle-interval membership."""

from __future__ import annotations

from dataclasses import dataclass, field

from .angles import ANGLE_NAMES, AngleVector
from .gestures import BODY_GESTURES, BODY_NEUTRAL, Gesture, body_gesture


@dataclass(frozen=True)
class AngleInterval:
    """Closed interval of degrees; wrap=True means it crosses 0."""

    lo: float
    hi: float
    wrap: bool = False

    def __post_init__(self):
        if not (0.0 <= self.lo < 360.0 and 0.0 <= self.hi < 360.0):
            raise ValueError(f"interval bounds must be in [0,360), got [{self.lo},{self.hi}]")
        if not self.wrap and self.lo > self.hi:
            raise ValueError(f"non-wrap interval needs lo <= hi, got [{self.lo},{self.hi}]")

    def contains(self, angle: float) -> bool:
        if self.wrap:
            return angle >= self.lo or angle <= self.hi
        return self.lo <= angle <= self.hi

    @classmethod
    def around(cls, center: float, half_width: float) -> "AngleInterval":
        """Interval center +/- half_width, wrapping at 0 when needed."""
        lo = (center - half_width) % 360.0
        hi = (center + half_width) % 360.0
        return cls(lo, hi, wrap=lo > hi)


@dataclass(frozen=True)
class BodyPoseDefinition:
    """One named pose: interval constraints per angle, wildcard elsewhere."""

    name: str
    constraints: dict = field(default_factory=dict)  # angle name -> AngleInterval
    priority: int = 0

    def __post_init__(self):
        if self.name not in BODY_GESTURES:
            raise ValueError(f"{self.name!r} is not a body gesture")
        if not self.constraints:
            raise ValueError(f"pose {self.name} needs at least one constraint")
        for angle_name in self.constraints:
            if angle_name not in ANGLE_NAMES:
                raise ValueError(f"unknown angle {angle_name!r} in pose {self.name}")


def matches(definition: BodyPoseDefinition, angles: AngleVector) -> bool:
    """True iff every constrained angle is available and inside its interval."""
    for angle_name, interval in definition.constraints.items():
        value = angles.get(angle_name)
        if value is None or not interval.contains(value):
            return False
    return True


def classify_body(angles: AngleVector, definitions) -> Gesture:
    """Highest-priority matching pose, or Neutral when none matches."""
    best = None
    for definition in definitions:
        if matches(definition, angles):
            if best is None or definition.priority > best.priority:
                best = definition
    return body_gesture(best.name) if best else BODY_NEUTRAL
