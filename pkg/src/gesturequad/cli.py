"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 runtime error. Module errors
surface as single-line `error[Code]: message` diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import asyncio
import datetime
import functools
import http.server
import json
import os
import sys
import threading
import time
import uuid

from . import __version__
from .config import (default_config, default_course, derive_default_config,
                     load_config, load_course)
from .engine import DEFAULT_DT_MS, SessionEngine, replay
from .errors import GestureQuadError
from .server import run_server
from .session import SessionHeader, SessionWriter
from .ueq import (compare, format_mmss, load_item_map, load_responses,
                  load_times, score, time_stats)

CONFIG_ENV_VAR = "GESTUREQUAD_CONFIG"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _resolve_config(path):
    """Search order: explicit flag, GESTUREQUAD_CONFIG, bundled default."""
    if path:
        return load_config(path)
    env = os.environ.get(CONFIG_ENV_VAR)
    if env:
        return load_config(env)
    return default_config()


def _resolve_course(path):
    return load_course(path) if path else default_course()


def _print_summary(session_id: str, summary: dict, out=None):
    out = out or sys.stdout
    print(f"session    : {session_id}", file=out)
    print(f"mode       : {summary['mode']}", file=out)
    print(f"completed  : {'yes' if summary['completed'] else 'no'}", file=out)
    print(f"elapsed    : {format_mmss(summary['elapsed_ms'] / 1000)}", file=out)
    print(f"commands   : {summary['command_count']}", file=out)
    for gesture, count in summary["per_gesture"].items():
        print(f"  {gesture:<14} {count}", file=out)


def _cmd_serve(args) -> int:
    config = _resolve_config(args.config)
    course = _resolve_course(args.course)
    session_id = uuid.uuid4().hex[:12]
    writer = None
    if args.record:
        created = datetime.datetime.now(datetime.timezone.utc) \
            .isoformat(timespec="seconds").replace("+00:00", "Z")
        writer = SessionWriter(args.record, SessionHeader(
            session_id=session_id, mode=args.mode,
            config_hash=config.hash, created_at=created))
    engine = SessionEngine(mode=args.mode, config=config, course=course,
                           dt_ms=args.dt, writer=writer,
                           log=lambda msg: print(msg, file=sys.stderr))
    if args.console:
        _serve_console(args.console, args.host, args.console_port or args.port + 1)
    print(f"serving on ws://{args.host}:{args.port} (mode={args.mode}, "
          f"session={session_id})", file=sys.stderr)
    try:
        asyncio.run(run_server(engine, args.host, args.port, handle_signals=True))
    except KeyboardInterrupt:
        pass
    finally:
        if writer is not None:
            writer.close()
    _print_summary(session_id, engine.summary())
    return 0


def _serve_console(directory, host, port):
    handler = functools.partial(http.server.SimpleHTTPRequestHandler,
                                directory=directory)
    httpd = http.server.ThreadingHTTPServer((host, port), handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    print(f"console at http://{host}:{port}/", file=sys.stderr)


def _cmd_replay(args) -> int:
    config = _resolve_config(args.config)
    course = _resolve_course(args.course)
    pacer = None
    if not args.max_speed:
        start = time.monotonic()

        def pacer(t_ms):
            lag = t_ms / 1000 - (time.monotonic() - start)
            if lag > 0:
                time.sleep(lag)
    engine = replay(args.file, config, course, dt_ms=args.dt,
                    record_path=args.record, pacer=pacer,
                    log=lambda msg: print(msg, file=sys.stderr))
    from .session import read_session
    header, _ = read_session(args.file)
    _print_summary(header.session_id, engine.summary())
    return 0


def _cmd_derive_config(args) -> int:
    config = derive_default_config(seed=args.seed)
    config.dump(args.out)
    print(f"wrote {args.out} (hash {config.hash[:12]})", file=sys.stderr)
    return 0


def _cmd_ueq_score(args) -> int:
    item_map = load_item_map(args.map)
    responses = load_responses(args.responses)
    rows = []
    for response in responses:
        scores = score(response, item_map)
        rows.append({"participant_id": response.participant_id,
                     "condition": response.condition,
                     **{s: round(scores.get(s), 4)
                        for s in ("attractiveness", "perspicuity", "efficiency",
                                  "dependability", "stimulation", "novelty",
                                  "pragmatic", "hedonic")}})
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return 0
    headers = list(rows[0].keys())
    widths = {h: max(len(h), *(len(str(r[h])) for r in rows)) for h in headers}
    print("  ".join(h.ljust(widths[h]) for h in headers))
    for r in rows:
        print("  ".join(str(r[h]).ljust(widths[h]) for h in headers))
    return 0


def _cmd_ueq_compare(args) -> int:
    item_map = load_item_map(args.map)
    group_a = [score(r, item_map) for r in load_responses(args.a)]
    group_b = [score(r, item_map) for r in load_responses(args.b)]
    results = compare(group_a, group_b, alpha=args.alpha, student=args.student)
    if args.json:
        json.dump([r.__dict__ for r in results], sys.stdout, indent=2)
        print()
        return 0
    print(f"{'scale':<15} {'mean A':>8} {'mean B':>8} {'t':>8} {'df':>7} "
          f"{'p':>8}  significant")
    for r in results:
        print(f"{r.scale:<15} {r.mean_a:>8.3f} {r.mean_b:>8.3f} {r.t:>8.3f} "
              f"{r.df:>7.2f} {r.p:>8.4f}  {'yes' if r.significant else 'no'}")
    return 0


def _cmd_ueq_times(args) -> int:
    rows = load_times(args.file)
    groups = {}
    for row in rows:
        groups.setdefault(row[args.group_by] or "(all)", []).append(row["seconds"])
    out = []
    for name in sorted(groups):
        stats = time_stats(groups[name])
        out.append({"group": name, "n": len(groups[name]),
                    "mean_s": round(stats.mean, 2), "mean": format_mmss(stats.mean),
                    "median_s": round(stats.median, 2), "median": format_mmss(stats.median),
                    "outliers": list(stats.outliers)})
    if args.json:
        json.dump(out, sys.stdout, indent=2)
        print()
        return 0
    print(f"{'group':<12} {'n':>3} {'mean':>7} {'median':>7}  outliers")
    for r in out:
        outliers = ", ".join(format_mmss(t) for t in r["outliers"]) or "-"
        print(f"{r['group']:<12} {r['n']:>3} {r['mean']:>7} {r['median']:>7}  {outliers}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="gesturequad",
                     description="Gesture-controlled quadruped simulator and evaluation tools")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("serve", help="run the live ingest/telemetry server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--mode", choices=("body", "hand"), default="body")
    p.add_argument("--config", help="gesture config file (default: "
                                    f"${CONFIG_ENV_VAR} or bundled)")
    p.add_argument("--course", help="course file (default: bundled zigzag)")
    p.add_argument("--record", help="write the session log to this file")
    p.add_argument("--console", metavar="DIR", help="serve console assets from DIR")
    p.add_argument("--console-port", type=int)
    p.add_argument("--dt", type=int, default=DEFAULT_DT_MS, help="simulation tick (ms)")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("replay", help="replay a recorded session")
    p.add_argument("file")
    p.add_argument("--max-speed", action="store_true",
                   help="ignore wall time, keep logical time")
    p.add_argument("--config")
    p.add_argument("--course")
    p.add_argument("--record", help="re-record the replayed session")
    p.add_argument("--dt", type=int, default=DEFAULT_DT_MS)
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("derive-config",
                       help="regenerate default pose bounds from canonical skeletons")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_derive_config)

    ueq = sub.add_parser("ueq", help="questionnaire scoring and statistics")
    ueq_sub = ueq.add_subparsers(dest="ueq_command", required=True, parser_class=_Parser)

    p = ueq_sub.add_parser("score", help="per-participant scale scores")
    p.add_argument("--responses", required=True)
    p.add_argument("--map", help="item map CSV (default: bundled standard mapping)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ueq_score)

    p = ueq_sub.add_parser("compare", help="two-group per-scale t-tests")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--map")
    p.add_argument("--student", action="store_true",
                   help="pooled-variance Student's t instead of Welch")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ueq_compare)

    p = ueq_sub.add_parser("times", help="completion-time statistics")
    p.add_argument("--file", required=True)
    p.add_argument("--group-by", choices=("condition", "iteration"),
                   default="condition")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ueq_times)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GestureQuadError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error[IO]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
