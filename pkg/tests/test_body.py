import numpy as np
import pytest

from gesturequad.angles import AngleVector, compute_angles
from gesturequad.body import AngleInterval, BodyPoseDefinition, classify_body, matches
from gesturequad.config import (DEFAULT_PRIORITIES, canonical_pose_angles,
                                config_from_dict, derive_default_config)
from gesturequad.errors import ConfigError
from gesturequad.gestures import BODY_GESTURES
from gesturequad.skeleton import body_pose_frame, perturbed_body_frame


def test_interval_membership():
    iv = AngleInterval(160.0, 200.0)
    assert iv.contains(180.0)
    assert iv.contains(160.0) and iv.contains(200.0)
    assert not iv.contains(159.9)


def test_wrap_interval_membership():
    iv = AngleInterval(350.0, 10.0, wrap=True)
    assert iv.contains(5.0)
    assert iv.contains(355.0)
    assert not iv.contains(180.0)


def test_interval_validation():
    with pytest.raises(ValueError):
        AngleInterval(200.0, 100.0, wrap=False)
    with pytest.raises(ValueError):
        AngleInterval(-5.0, 10.0)
    assert AngleInterval.around(10.0, 25.0).wrap  # crosses zero


def test_matches_requires_availability():
    definition = BodyPoseDefinition("TPose",
                                    {"left_elbow": AngleInterval(160.0, 200.0)},
                                    priority=1)
    assert matches(definition, AngleVector(left_elbow=180.0))
    assert not matches(definition, AngleVector())  # unavailable


def test_unconstrained_angles_are_wildcards():
    definition = BodyPoseDefinition("TPose",
                                    {"left_elbow": AngleInterval(160.0, 200.0)},
                                    priority=1)
    assert matches(definition, AngleVector(left_elbow=170.0, right_knee=33.0))


def test_canonical_skeletons_classify_to_their_pose(config):
    for name in BODY_GESTURES:
        angles = compute_angles(body_pose_frame(name), config.vis_threshold)
        assert classify_body(angles, config.body_poses).name == name


def test_exactly_one_definition_matches_each_canonical(config):
    for name in BODY_GESTURES:
        angles = compute_angles(body_pose_frame(name), config.vis_threshold)
        matching = [d.name for d in config.body_poses if matches(d, angles)]
        assert matching == [name]


def test_rest_pose_is_neutral(config):
    angles = compute_angles(body_pose_frame("rest"), config.vis_threshold)
    assert classify_body(angles, config.body_poses).is_neutral


def test_noise_stability(config):
    # +/-2% image-width noise on every landmark, 1000 trials per pose.
    for pose_index, name in enumerate(BODY_GESTURES):
        rng = np.random.default_rng([0, pose_index])
        hits = sum(
            classify_body(compute_angles(perturbed_body_frame(name, rng)),
                          config.body_poses).name == name
            for _ in range(1000))
        assert hits >= 950, f"{name}: only {hits}/1000 stable"


def test_priority_breaks_ties():
    # Bounds widened so a perfect T-pose satisfies both definitions.
    wide = {
        "left_shoulder": AngleInterval(0.0, 180.0),
        "right_shoulder": AngleInterval(180.0, 359.0),
        "left_elbow": AngleInterval(90.0, 270.0),
        "right_elbow": AngleInterval(90.0, 270.0),
    }
    low = BodyPoseDefinition("LeftArmOut", dict(wide), priority=50)
    high = BodyPoseDefinition("TPose", dict(wide), priority=100)
    angles = AngleVector(left_shoulder=90.0, right_shoulder=270.0,
                         left_elbow=180.0, right_elbow=180.0)
    assert matches(low, angles) and matches(high, angles)
    assert classify_body(angles, [low, high]).name == "TPose"
    assert classify_body(angles, [high, low]).name == "TPose"  # order-free


def test_compound_poses_outrank_single_limb():
    assert DEFAULT_PRIORITIES["TPose"] > DEFAULT_PRIORITIES["LeftArmOut"]
    assert DEFAULT_PRIORITIES["TPose"] > DEFAULT_PRIORITIES["RightArmOut"]
    assert DEFAULT_PRIORITIES["BothArmsBent"] > DEFAULT_PRIORITIES["LeftArmBent"]
    assert DEFAULT_PRIORITIES["BothArmsBent"] > DEFAULT_PRIORITIES["RightArmBent"]


def test_determinism(config):
    angles = compute_angles(body_pose_frame("HandsOnHead"))
    first = classify_body(angles, config.body_poses)
    assert all(classify_body(angles, config.body_poses) == first for _ in range(10))


def test_widening_never_unmatches(config):
    # Monotonicity: growing every interval keeps the canonical matches.
    signatures = canonical_pose_angles()
    for name in BODY_GESTURES:
        original = config.pose(name)
        widened = BodyPoseDefinition(
            name,
            {a: AngleInterval.around((iv.lo + ((iv.hi - iv.lo) % 360.0) / 2.0) % 360.0,
                                     ((iv.hi - iv.lo) % 360.0) / 2.0 + 10.0)
             for a, iv in original.constraints.items()},
            priority=original.priority)
        angles = AngleVector(**signatures[name])
        assert matches(original, angles)
        assert matches(widened, angles)


def test_derivation_matches_bundled_config(config):
    assert derive_default_config(seed=0).to_dict() == config.to_dict()
    assert derive_default_config(seed=0).hash == config.hash


def test_config_validation_rejects_incomplete():
    raw = config_from_dict  # keep flake quiet
    data = {"body": {"poses": {"TPose": {"priority": 1, "angles":
                                         {"left_elbow": {"lo": 10.0, "hi": 20.0}}}}}}
    with pytest.raises(ConfigError):
        raw(data)  # 8 poses missing


def test_config_rejects_duplicate_priorities(config):
    data = config.to_dict()
    poses = data["body"]["poses"]
    names = list(poses)
    poses[names[0]]["priority"] = poses[names[1]]["priority"]
    with pytest.raises(ConfigError):
        config_from_dict(data)
