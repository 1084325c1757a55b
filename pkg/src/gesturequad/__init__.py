"""Gesture-driven control of a simulated quadruped robot.

Classifies body poses (eight joint angles against configurable bounds)
and hand poses (fingertip/knuckle comparisons) from streamed skeleton
landmarks, debounces them into robot commands, drives a planar
simulator over a timed waypoint course, and ships the questionnaire
analytics used to evaluate the two control styles.
"""

__version__ = "0.1.0"

from .angles import AngleVector, compute_angles, joint_angle
from .body import AngleInterval, BodyPoseDefinition, classify_body, matches
from .config import GestureConfig, default_config, default_course, derive_default_config
from .gestures import Gesture, RobotCommand, map_gesture_to_command
from .hand import classify_hand, finger_state
from .landmarks import BodyFrame, HandFrame, Landmark, unmirror
from .pipeline import CommandEvent, PipelineParams, PipelineState, motion_complete, step
from .sim import Course, CourseTracker, MotionProfile, RobotState, apply, tick

__all__ = [
    "AngleInterval", "AngleVector", "BodyFrame", "BodyPoseDefinition",
    "CommandEvent", "Course", "CourseTracker", "Gesture", "GestureConfig",
    "HandFrame", "Landmark", "MotionProfile", "PipelineParams",
    "PipelineState", "RobotCommand", "RobotState", "apply", "classify_body",
    "classify_hand", "compute_angles", "default_config", "default_course",
    "derive_default_config", "finger_state", "joint_angle",
    "map_gesture_to_command", "matches", "motion_complete", "step", "tick",
    "unmirror", "__version__",
]
