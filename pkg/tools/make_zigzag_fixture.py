#!/usr/bin/env python3
"""Regenerate fixtures/zigzag_body.session from the bundled config.

The file is a scripted producer stream (body frames only) whose
command sequence completes the default zigzag course. Deterministic:
rerunning this script must reproduce the committed fixture byte for
byte; tests enforce that.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from gesturequad.config import default_config
from gesturequad.scripting import ZIGZAG_COMMANDS, write_scripted_session

out = pathlib.Path(__file__).resolve().parents[1] / "fixtures" / "zigzag_body.session"
out.parent.mkdir(exist_ok=True)
dispatch_ms = write_scripted_session(out, ZIGZAG_COMMANDS, default_config(),
                                     kind="body", session_id="zigzag-body-fixture")
print(f"wrote {out} ({len(ZIGZAG_COMMANDS)} commands, "
      f"first dispatch {dispatch_ms[0]} ms, last {dispatch_ms[-1]} ms)")
