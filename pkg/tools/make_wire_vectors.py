#!/usr/bin/env python3
"""Generate wire-protocol test vectors for the browser console.

Emits frontend/src/wire-vectors.json: canonical frame messages encoded
by the server-side codec, plus a telemetry snapshot. The console's
vitest suite checks that its own message builders produce structurally
identical JSON, so the two codebases cannot drift apart silently.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gesturequad.config import default_config, default_course
from gesturequad.engine import SessionEngine
from gesturequad.session import decode_wire_message, encode_event
from gesturequad.skeleton import body_pose_frame, body_pose_points, hand_pose_frame, hand_pose_points

body = body_pose_frame("TPose", timestamp_ms=5)
hand = hand_pose_frame("PointUp", timestamp_ms=9, handedness="right")

engine = SessionEngine(mode="body", config=default_config(), course=default_course())
engine.handle_frame(body_pose_frame("TPose", timestamp_ms=5))
snapshot = engine.snapshot()

vectors = {
    "body_frame": {
        "points": [[x, y] for x, y in body_pose_points("TPose")],
        "t_ms": 5,
        "mirrored": False,
        "expected": json.loads(encode_event(body)),
    },
    "hand_frame": {
        "points": [[x, y] for x, y in hand_pose_points("PointUp")],
        "t_ms": 9,
        "mirrored": False,
        "handedness": "right",
        "expected": json.loads(encode_event(hand)),
    },
    "state_message": snapshot,
    "rejected_by_server": [
        {"type": "body_frame", "t_ms": 1, "mirrored": False, "landmarks": []},
        {"type": "command", "action": "GoForward", "t_ms": 1, "gesture": "PointUp"},
        {"type": "mystery"},
    ],
}

# sanity: the server really does accept the frame vectors and reject the rest
for key in ("body_frame", "hand_frame"):
    decode_wire_message(json.dumps(vectors[key]["expected"]))
for bad in vectors["rejected_by_server"]:
    try:
        decode_wire_message(json.dumps(bad))
    except Exception:
        continue
    raise SystemExit(f"expected server to reject {bad}")

out = pathlib.Path(__file__).resolve().parents[1] / "frontend" / "src" / "wire-vectors.json"
out.write_text(json.dumps(vectors, indent=1) + "\n")
print(f"wrote {out}")
