"""Command-line interface: ``dispheres reach|plan|classify|verify``.

Exit codes: 0 success (reachable / all checks pass), 1 unreachable pair or
failed check, 2 malformed input, 3 parameter or resource guardrail.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass

from . import SCHEMA
from .core import Dipath, Point, pattern_of
from .errors import (
    DispheresError,
    GuardrailExceeded,
    MalformedInputError,
    NotInGammaError,
    ParameterError,
)
from .planner import classify, explain, plan
from .verify import run_verify

log = logging.getLogger("dispheres")

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED, EXIT_GUARDRAIL = 0, 1, 2, 3

CUBE_EDGES = [
    [list(a), list(b)]
    for a, b in (
        ((0, 0, 0), (1, 0, 0)), ((0, 1, 0), (1, 1, 0)), ((0, 0, 1), (1, 0, 1)), ((0, 1, 1), (1, 1, 1)),
        ((0, 0, 0), (0, 1, 0)), ((1, 0, 0), (1, 1, 0)), ((0, 0, 1), (0, 1, 1)), ((1, 0, 1), (1, 1, 1)),
        ((0, 0, 0), (0, 0, 1)), ((1, 0, 0), (1, 0, 1)), ((0, 1, 0), (0, 1, 1)), ((1, 1, 0), (1, 1, 1)),
    )
]


@dataclass(frozen=True)
class RunConfig:
    n: int
    m: int
    samples: int = 10_000
    seed: int = 0
    format: str = "json"
    verbosity: int = 0

    def validate(self) -> None:
        if self.n < 1:
            raise ParameterError(f"--n must be >= 1, got {self.n}", guardrail="n")
        if self.m < 1:
            raise ParameterError(f"--m must be >= 1, got {self.m}", guardrail="m")
        if self.samples < 1:
            raise ParameterError(f"--samples must be >= 1, got {self.samples}", guardrail="samples")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _parse_pair(args):
    x, y = Point.parse(args.x), Point.parse(args.y)
    if len(x) != len(y):
        raise MalformedInputError(f"points have {len(x)} and {len(y)} coordinates")
    return x, y


def figure_data(path: Dipath) -> dict:
    """Static polyline data for drawing a path on the boundary of the 3-cube."""
    points = []
    for w in path.waypoints:
        if not points or points[-1] != w:
            points.append(w)
    faces = []
    for p, q in zip(points, points[1:]):
        mid = Point._trusted(tuple((a + b) / 2 for a, b in zip(p.coords, q.coords)))
        faces.append(str(pattern_of(mid)))
    return {
        "polyline": [[float(c) for c in w.coords] for w in points],
        "polyline_exact": [w.to_json() for w in points],
        "segment_patterns": faces,
        "cube_edges": CUBE_EDGES,
    }


def cmd_reach(args) -> int:
    x, y = _parse_pair(args)
    verdict = explain(x, y)
    if args.format == "csv":
        w = verdict["witness"]
        _emit(_csv([["reachable", "code", "j", "k"],
                    [str(verdict["reachable"]).lower(), w.get("code", ""), w.get("j", ""), w.get("k", "")]]))
    else:
        _emit(_json({"schema": SCHEMA, "command": "reach", "x": x.to_json(), "y": y.to_json(), **verdict}))
    return EXIT_OK if verdict["reachable"] else EXIT_FAIL


def cmd_classify(args) -> int:
    x, y = _parse_pair(args)
    label = classify(x, y)
    if args.format == "csv":
        _emit(_csv([["label"], [label.value]]))
    else:
        _emit(_json({"schema": SCHEMA, "command": "classify", "label": label.value}))
    return EXIT_OK


def cmd_plan(args) -> int:
    x, y = _parse_pair(args)
    if args.figure and len(x) != 3:
        raise MalformedInputError("--figure draws paths on the 3-cube and needs n = 2")
    label = classify(x, y)
    path = plan(x, y)
    if args.format == "csv":
        rows = [["label", "index", "stage"] + [f"x{i}" for i in range(len(x))]]
        for i, (w, s) in enumerate(zip(path.waypoints, path.stages)):
            rows.append([label.value, i, f"{s.numerator}/{s.denominator}"] + w.to_json())
        _emit(_csv(rows))
    else:
        out = {"schema": SCHEMA, "command": "plan", "label": label.value, "path": path.to_json()}
        if args.figure:
            out["figure"] = figure_data(path)
        _emit(_json(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    config = RunConfig(args.n, args.m, args.samples, args.seed, args.format, args.verbose)
    config.validate()
    log.info("verifying n=%d m=%d samples=%d seed=%d", config.n, config.m, config.samples, config.seed)
    results = run_verify(config.n, config.m, config.samples, config.seed)
    passed = all(r.passed for r in results)
    for r in results:
        log.info("%s %s", "PASS" if r.passed else "FAIL", r.name)
    if config.format == "csv":
        rows = [["check", "passed", "counters"]]
        rows += [[r.name, str(r.passed).lower(), json.dumps(r.counters, sort_keys=True)] for r in results]
        _emit(_csv(rows))
    else:
        _emit(_json({
            "schema": SCHEMA,
            "command": "verify",
            "config": {k: v for k, v in asdict(config).items() if k != "verbosity"},
            "passed": passed,
            "checks": [r.to_json() for r in results],
        }))
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dispheres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("-v", "--verbose", action="count", default=0)

    for name, fn, help_text in (
        ("reach", cmd_reach, "decide whether a dipath joins x to y"),
        ("classify", cmd_classify, "partition piece (A1 or A2) of a reachable pair"),
        ("plan", cmd_plan, "boundary dipath from x to y"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("x", help="comma-separated rationals, e.g. 0,1/2,1")
        p.add_argument("y")
        common(p)
        if name == "plan":
            p.add_argument("--figure", action="store_true", help="add polyline plot data (n = 2)")
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="run the verification pipeline for one grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except (GuardrailExceeded, ParameterError) as exc:
        _report(exc, args)
        return EXIT_GUARDRAIL
    except NotInGammaError as exc:
        _report(exc, args)
        return EXIT_FAIL
    except (DispheresError, TypeError) as exc:
        _report(exc, args)
        return EXIT_MALFORMED


def _report(exc: Exception, args) -> None:
    if isinstance(exc, DispheresError):
        payload = exc.to_json()
    else:
        payload = {"code": MalformedInputError.code, "message": str(exc)}
    sys.stderr.write(f"dispheres: {payload['message']}\n")
    if args.format == "json":
        _emit(_json({"schema": SCHEMA, "command": args.command, "error": payload}))
    else:
        _emit(_csv([["code", "message"], [payload["code"], payload["message"]]]))


if __name__ == "__main__":
    sys.exit(main())
