"""Gesture configuration: the pose-bound file format and its derivation.

A single YAML document configures everything a session needs: body pose
definitions (named angle intervals plus priority), hand predicate
parameters, pipeline debounce settings, and the motion profile. Its
content hash is recorded in session files so replays can detect a
mismatched configuration.

Default body bounds are derived, not invented: each canonical synthetic
skeleton's angles widened by +/-25 degrees, grown in 5-degree steps for
any pose that fails the separation or noise-stability checks.
"""

from __future__ import annotations

import hashlib
import importlib.resources
import json
from dataclasses import dataclass, field

import numpy as np
import yaml

from . import skeleton
from .angles import ANGLE_NAMES, compute_angles
from .body import AngleInterval, BodyPoseDefinition, classify_body
from .errors import ConfigError
from .gestures import BODY_GESTURES
from .hand import HandParams
from .pipeline import PipelineParams
from .sim import Arena, Course, MotionProfile, RobotState

# Compound poses outrank the single-limb poses they subsume.
DEFAULT_PRIORITIES = {
    "TPose": 100,
    "ArmsElevated": 95,
    "BothArmsBent": 90,
    "HandsOnHead": 85,
    "HandsOnHips": 80,
    "LeftArmOut": 50,
    "RightArmOut": 45,
    "LeftArmBent": 40,
    "RightArmBent": 35,
}

# Legs carry no signal for the nine upper-body gestures.
_CONSTRAINED_ANGLES = ("left_shoulder", "right_shoulder", "left_elbow", "right_elbow")

DEFAULT_HALF_WIDTH = 25.0
_WIDEN_STEP = 5.0
_MAX_HALF_WIDTH = 40.0
_NOISE_TRIALS = 1000
_NOISE_AMPLITUDE = 0.02
_STABILITY_TARGET = 0.95


@dataclass(frozen=True)
class GestureConfig:
    body_poses: tuple[BodyPoseDefinition, ...]
    vis_threshold: float = 0.5
    hand: HandParams = field(default_factory=HandParams)
    pipeline: PipelineParams = field(default_factory=PipelineParams)
    motion: MotionProfile = field(default_factory=MotionProfile)

    def __post_init__(self):
        names = [d.name for d in self.body_poses]
        missing = set(BODY_GESTURES) - set(names)
        if missing:
            raise ConfigError(f"missing body poses: {sorted(missing)}")
        priorities = [d.priority for d in self.body_poses]
        if len(set(priorities)) != len(priorities):
            raise ConfigError("pose priorities must be unique")

    def pose(self, name: str) -> BodyPoseDefinition:
        for d in self.body_poses:
            if d.name == name:
                return d
        raise KeyError(name)

    def to_dict(self) -> dict:
        poses = {}
        for d in sorted(self.body_poses, key=lambda d: d.name):
            angles = {}
            for angle_name in ANGLE_NAMES:
                iv = d.constraints.get(angle_name)
                if iv is not None:
                    entry = {"lo": round(iv.lo, 6), "hi": round(iv.hi, 6)}
                    if iv.wrap:
                        entry["wrap"] = True
                    angles[angle_name] = entry
            poses[d.name] = {"priority": d.priority, "angles": angles}
        return {
            "version": 1,
            "body": {"vis_threshold": self.vis_threshold, "poses": poses},
            "hand": {
                "fist_sector_half_width_deg": self.hand.fist_sector_half_width_deg,
                "hysteresis_margin": self.hand.hysteresis_margin,
            },
            "pipeline": {
                "stable_frames": self.pipeline.stable_frames,
                "cooldown_ms": self.pipeline.cooldown_ms,
            },
            "motion": {
                "step_distance": self.motion.step_distance,
                "strafe_distance": self.motion.strafe_distance,
                "rotate_angle": self.motion.rotate_angle,
                "motion_duration": self.motion.motion_duration,
                "posture_duration": self.motion.posture_duration,
                "auto_face_user": self.motion.auto_face_user,
                "user_anchor": list(self.motion.user_anchor),
            },
        }

    @property
    def hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def dump(self, path):
        with open(path, "w") as fh:
            yaml.safe_dump(self.to_dict(), fh, sort_keys=False)


def _interval_from_dict(raw, context: str) -> AngleInterval:
    try:
        lo, hi = float(raw["lo"]), float(raw["hi"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{context}: bad interval {raw!r}") from exc
    wrap = bool(raw.get("wrap", lo > hi))
    try:
        return AngleInterval(lo, hi, wrap=wrap)
    except ValueError as exc:
        raise ConfigError(f"{context}: {exc}") from exc


def config_from_dict(raw: dict) -> GestureConfig:
    try:
        body = raw["body"]
        pose_map = body["poses"]
    except (KeyError, TypeError) as exc:
        raise ConfigError("config needs a body.poses map") from exc
    poses = []
    for name, spec in pose_map.items():
        angles = spec.get("angles", {})
        constraints = {a: _interval_from_dict(iv, f"pose {name}, angle {a}")
                       for a, iv in angles.items()}
        try:
            poses.append(BodyPoseDefinition(name=name, constraints=constraints,
                                            priority=int(spec["priority"])))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"pose {name}: {exc}") from exc

    hand_raw = raw.get("hand", {})
    pipeline_raw = raw.get("pipeline", {})
    motion_raw = dict(raw.get("motion", {}))
    if "user_anchor" in motion_raw:
        motion_raw["user_anchor"] = tuple(motion_raw["user_anchor"])
    try:
        return GestureConfig(
            body_poses=tuple(poses),
            vis_threshold=float(body.get("vis_threshold", 0.5)),
            hand=HandParams(**hand_raw),
            pipeline=PipelineParams(**pipeline_raw),
            motion=MotionProfile(**motion_raw),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> GestureConfig:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: not a mapping")
    return config_from_dict(raw)


def default_config() -> GestureConfig:
    """The bundled configuration (output of derive_default_config)."""
    data = importlib.resources.files("gesturequad.data").joinpath("default_config.yaml")
    raw = yaml.safe_load(data.read_text())
    return config_from_dict(raw)


def course_from_dict(raw: dict) -> Course:
    try:
        start_raw = raw.get("start", {})
        start = RobotState(x=float(start_raw.get("x", 0.0)),
                           y=float(start_raw.get("y", 0.0)),
                           heading=float(start_raw.get("heading", 0.0)),
                           posture=str(start_raw.get("posture", "standing")))
        arena_raw = raw.get("arena")
        arena = Arena(**{k: float(v) for k, v in arena_raw.items()}) if arena_raw else Arena()
        return Course(waypoints=tuple((float(x), float(y)) for x, y in raw["waypoints"]),
                      capture_radius=float(raw.get("capture_radius", 0.3)),
                      start=start, arena=arena)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad course: {exc}") from exc


def load_course(path) -> Course:
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: not a mapping")
    return course_from_dict(raw)


def default_course() -> Course:
    data = importlib.resources.files("gesturequad.data").joinpath("default_course.yaml")
    return course_from_dict(yaml.safe_load(data.read_text()))


def canonical_pose_angles() -> dict:
    """Angle signature of each canonical skeleton (and the rest figure)."""
    signatures = {}
    for pose in list(BODY_GESTURES) + ["rest"]:
        angles = compute_angles(skeleton.body_pose_frame(pose))
        signatures[pose] = {name: angles.get(name) for name in _CONSTRAINED_ANGLES}
    return signatures


def _build_poses(half_widths: dict) -> tuple[BodyPoseDefinition, ...]:
    signatures = canonical_pose_angles()
    poses = []
    for name in BODY_GESTURES:
        constraints = {
            angle: AngleInterval.around(signatures[name][angle], half_widths[name])
            for angle in _CONSTRAINED_ANGLES
        }
        poses.append(BodyPoseDefinition(name=name, constraints=constraints,
                                        priority=DEFAULT_PRIORITIES[name]))
    return tuple(poses)


def _separation_ok(poses) -> bool:
    signatures = canonical_pose_angles()
    for name in BODY_GESTURES:
        angles = compute_angles(skeleton.body_pose_frame(name))
        matching = [d.name for d in poses
                    if all(d.constraints[a].contains(signatures[name][a])
                           for a in _CONSTRAINED_ANGLES)]
        if matching != [name]:
            return False
        if classify_body(angles, poses).name != name:
            return False
    rest = compute_angles(skeleton.body_pose_frame("rest"))
    return classify_body(rest, poses).is_neutral


def _stability(poses, seed: int) -> dict:
    rates = {}
    for name in BODY_GESTURES:
        rng = np.random.default_rng([seed, BODY_GESTURES.index(name)])
        hits = 0
        for _ in range(_NOISE_TRIALS):
            frame = skeleton.perturbed_body_frame(name, rng, _NOISE_AMPLITUDE)
            if classify_body(compute_angles(frame), poses).name == name:
                hits += 1
        rates[name] = hits / _NOISE_TRIALS
    return rates


def derive_default_config(seed: int = 0) -> GestureConfig:
    """Derive default body bounds from the canonical skeletons.

    Starts every pose at +/-25 degrees and widens failing poses in
    5-degree steps until the canonical separation and >=95% noise
    stability both hold.
    """
    half_widths = {name: DEFAULT_HALF_WIDTH for name in BODY_GESTURES}
    while True:
        poses = _build_poses(half_widths)
        if not _separation_ok(poses):
            raise ConfigError("canonical pose separation failed; generator geometry is broken")
        rates = _stability(poses, seed)
        weak = [name for name, rate in rates.items() if rate < _STABILITY_TARGET]
        if not weak:
            return GestureConfig(body_poses=poses)
        for name in weak:
            if half_widths[name] >= _MAX_HALF_WIDTH:
                raise ConfigError(f"pose {name} unstable even at +/-{_MAX_HALF_WIDTH} degrees")
            half_widths[name] += _WIDEN_STEP
