"""Planar kinematic simulator for the quadruped, plus the timed course.

Commands map to discrete motion primitives (a fixed step, strafe, or
rotation) executed over a fixed duration; there are no dynamics. The
robot footprint matches the real platform's 0.588 x 0.22 m base and is
exported for renderers and the telemetry wire format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import InvalidPosture
from .gestures import RobotCommand

# Physical footprint (length, width, height) in meters.
ROBOT_DIMENSIONS = (0.588, 0.22, 0.29)

POSTURE_STANDING = "standing"
POSTURE_LYING = "lying"

LOCOMOTION_COMMANDS = frozenset({
    RobotCommand.GO_FORWARD, RobotCommand.GO_BACKWARD,
    RobotCommand.ROTATE_CCW, RobotCommand.ROTATE_CW,
    RobotCommand.STRAFE_LEFT, RobotCommand.STRAFE_RIGHT,
    RobotCommand.TURN_AROUND,
})


@dataclass(frozen=True)
class MotionProfile:
    step_distance: float = 0.5        # m per forward/backward command
    strafe_distance: float = 0.3      # m per strafe command
    rotate_angle: float = 30.0        # degrees per rotate command
    motion_duration: float = 1.5      # s per locomotion command
    posture_duration: float = 1.0     # s per stand/lay command
    auto_face_user: bool = False
    user_anchor: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if min(self.step_distance, self.strafe_distance, self.motion_duration,
               self.posture_duration) <= 0:
            raise ValueError("distances and durations must be positive")
        if not 0.0 < self.rotate_angle <= 180.0:
            raise ValueError("rotate_angle must be in (0,180]")

    def duration_for(self, command: RobotCommand) -> float:
        return self.motion_duration if command in LOCOMOTION_COMMANDS else self.posture_duration


@dataclass(frozen=True)
class Arena:
    x_min: float = -1.0
    x_max: float = 8.0
    y_min: float = -3.0
    y_max: float = 3.0

    def clamp(self, x: float, y: float) -> tuple[float, float]:
        return (min(max(x, self.x_min), self.x_max),
                min(max(y, self.y_min), self.y_max))


DEFAULT_ARENA = Arena()


@dataclass(frozen=True)
class ActiveMotion:
    command: RobotCommand
    progress: float            # fraction in [0,1]
    duration_s: float
    origin: "RobotState"
    target: "RobotState"


@dataclass(frozen=True)
class RobotState:
    x: float = 0.0
    y: float = 0.0
    heading: float = 0.0       # degrees [0,360), 0 = +x axis, CCW positive
    posture: str = POSTURE_STANDING
    motion: ActiveMotion | None = None

    def __post_init__(self):
        object.__setattr__(self, "heading", self.heading % 360.0)
        if self.posture not in (POSTURE_STANDING, POSTURE_LYING):
            raise ValueError(f"unknown posture {self.posture!r}")

    @property
    def idle(self) -> bool:
        return self.motion is None


def apply(state: RobotState, command: RobotCommand, profile: MotionProfile,
          arena: Arena = DEFAULT_ARENA) -> RobotState:
    """Terminal pose after executing one command instantly.

    Raises InvalidPosture when the command is not legal in the current
    posture (locomotion while lying, StandUp while standing, ...).
    """
    if not state.idle:
        raise InvalidPosture("robot is already moving")
    if command in LOCOMOTION_COMMANDS and state.posture != POSTURE_STANDING:
        raise InvalidPosture(f"{command.value} requires standing")
    if command is RobotCommand.STAND_UP and state.posture != POSTURE_LYING:
        raise InvalidPosture("StandUp requires lying")
    if command is RobotCommand.LAY_DOWN and state.posture != POSTURE_STANDING:
        raise InvalidPosture("LayDown requires standing")

    x, y, heading, posture = state.x, state.y, state.heading, state.posture
    if command is RobotCommand.GO_FORWARD or command is RobotCommand.GO_BACKWARD:
        sign = 1.0 if command is RobotCommand.GO_FORWARD else -1.0
        rad = math.radians(heading)
        x += sign * profile.step_distance * math.cos(rad)
        y += sign * profile.step_distance * math.sin(rad)
    elif command is RobotCommand.STRAFE_LEFT or command is RobotCommand.STRAFE_RIGHT:
        offset = 90.0 if command is RobotCommand.STRAFE_LEFT else -90.0
        rad = math.radians(heading + offset)
        x += profile.strafe_distance * math.cos(rad)
        y += profile.strafe_distance * math.sin(rad)
    elif command is RobotCommand.ROTATE_CCW:
        heading += profile.rotate_angle
    elif command is RobotCommand.ROTATE_CW:
        heading -= profile.rotate_angle
    elif command is RobotCommand.TURN_AROUND:
        heading += 180.0
    elif command is RobotCommand.LAY_DOWN:
        posture = POSTURE_LYING
    elif command is RobotCommand.STAND_UP:
        posture = POSTURE_STANDING

    x, y = arena.clamp(x, y)
    return RobotState(x=x, y=y, heading=heading, posture=posture)


def _lerp_heading(a: float, b: float, t: float) -> float:
    delta = (b - a + 180.0) % 360.0 - 180.0
    return (a + delta * t) % 360.0


def start_motion(state: RobotState, command: RobotCommand, profile: MotionProfile,
                 arena: Arena = DEFAULT_ARENA) -> RobotState:
    """Begin executing a command; pose then interpolates under tick()."""
    target = apply(state, command, profile, arena)
    if profile.auto_face_user and command in LOCOMOTION_COMMANDS:
        ax, ay = profile.user_anchor
        face = math.degrees(math.atan2(ay - target.y, ax - target.x)) % 360.0
        target = replace(target, heading=face)
    motion = ActiveMotion(command=command, progress=0.0,
                          duration_s=profile.duration_for(command),
                          origin=replace(state, motion=None), target=target)
    return replace(state, motion=motion)


def tick(state: RobotState, dt_s: float) -> tuple[RobotState, bool]:
    """Advance an active motion by dt seconds.

    Returns (state, completed); completed is True on the tick where
    progress reaches 1.0 and the terminal pose is adopted. Idle states
    pass through unchanged.
    """
    if dt_s <= 0:
        raise ValueError("dt must be positive")
    motion = state.motion
    if motion is None:
        return state, False
    progress = min(1.0, motion.progress + dt_s / motion.duration_s)
    if progress >= 1.0:
        return replace(motion.target, motion=None), True
    origin, target = motion.origin, motion.target
    x = origin.x + (target.x - origin.x) * progress
    y = origin.y + (target.y - origin.y) * progress
    heading = _lerp_heading(origin.heading, target.heading, progress)
    return replace(state, x=x, y=y, heading=heading,
                   motion=replace(motion, progress=progress)), False


@dataclass(frozen=True)
class Course:
    waypoints: tuple[tuple[float, float], ...]
    capture_radius: float = 0.3
    start: RobotState = field(default_factory=RobotState)
    arena: Arena = DEFAULT_ARENA

    def __post_init__(self):
        object.__setattr__(self, "waypoints", tuple((float(x), float(y)) for x, y in self.waypoints))
        if len(self.waypoints) < 2:
            raise ValueError("a course needs at least two waypoints")
        if self.capture_radius <= 0:
            raise ValueError("capture_radius must be positive")


# Four waypoints alternating +/-1 m laterally over 6 m of forward travel.
DEFAULT_COURSE = Course(
    waypoints=((1.5, 1.0), (3.0, -1.0), (4.5, 1.0), (6.0, -1.0)),
    capture_radius=0.3,
    start=RobotState(x=0.0, y=0.0, heading=0.0),
)


@dataclass(frozen=True)
class CourseStatus:
    next_waypoint_index: int
    completed: bool
    elapsed_ms: int


class CourseTracker:
    """Ordered waypoint capture with a first-command-to-completion timer."""

    def __init__(self, course: Course):
        self.course = course
        self.next_index = 0
        self.first_command_ms: int | None = None
        self.completed_ms: int | None = None

    @property
    def completed(self) -> bool:
        return self.next_index >= len(self.course.waypoints)

    def note_command(self, now_ms: int):
        if self.first_command_ms is None:
            self.first_command_ms = now_ms

    def course_step(self, state: RobotState, now_ms: int) -> CourseStatus:
        """Capture the next waypoint(s) the robot currently sits inside."""
        while not self.completed:
            wx, wy = self.course.waypoints[self.next_index]
            if math.hypot(state.x - wx, state.y - wy) > self.course.capture_radius:
                break
            self.next_index += 1
            if self.completed:
                self.completed_ms = now_ms
        return self.status(now_ms)

    def status(self, now_ms: int) -> CourseStatus:
        if self.first_command_ms is None:
            elapsed = 0
        elif self.completed_ms is not None:
            elapsed = self.completed_ms - self.first_command_ms
        else:
            elapsed = now_ms - self.first_command_ms
        return CourseStatus(next_waypoint_index=self.next_index,
                            completed=self.completed, elapsed_ms=elapsed)
