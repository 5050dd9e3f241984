"""``netshort`` command line.

Exit codes: 0 success, 2 parse or usage error, 3 geometry error, 4 method
needs a path, 5 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import fixtures
from .approx import DEFAULT_BUDGET, approx_optimal_shortcut
from .augment import Candidate, candidate_from_points, diameter_with_segment, insert_segment
from .distance import continuous_diameter, diameter_value
from .errors import NetshortError, ParseError
from .network import Network, as_path, load_network
from .oracle import OracleConfig, grid_shortcut_search
from .pathfast import optimal_fixed_orientation_shortcut, path_diameter_with_shortcut
from .pathsimple import optimal_simple_shortcut
from .svg import render_svg

SNAP = 1e-6
EXIT_IO = 5


class IOFailure(NetshortError):
    exit_code = EXIT_IO


@dataclass
class RunResult:
    command: str
    method: str
    base_diameter: float
    diameter: float
    candidate: dict | None = None
    guarantee: dict | None = None
    timing: float = 0.0
    oracle: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunResult":
        return cls(**json.loads(text))


def candidate_json(net: Network, c: Candidate | None) -> dict | None:
    if c is None:
        return None
    (ax, ay), (bx, by) = c.geometry
    return {
        "p": [ax, ay],
        "q": [bx, by],
        "p_locus": {"edge": c.a.edge, "t": c.a.t},
        "q_locus": {"edge": c.b.edge, "t": c.b.t},
        "length": c.length,
        "crossings": len(c.crossings),
    }


def _parse_segment(text: str) -> tuple[tuple[float, float], tuple[float, float]]:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad --segment {text!r}: {exc}") from exc
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise ParseError("--segment needs four finite numbers x1,y1,x2,y2")
    return (vals[0], vals[1]), (vals[2], vals[3])


def _threads(args) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("NETSHORT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ParseError(f"NETSHORT_THREADS={env!r} is not an integer") from exc
    return None


def _oracle_cfg(args) -> OracleConfig:
    return OracleConfig(endpoint_samples_per_edge=args.oracle_samples, seed=args.seed)


# commands ---------------------------------------------------------------------


def cmd_diam(args) -> RunResult:
    net = load_network(args.input)
    t = time.perf_counter()
    pair = continuous_diameter(net)
    return RunResult(
        "diam", "exact", pair.value, pair.value, timing=time.perf_counter() - t,
        details={"kind": pair.kind, "pair": [list(net.locate(pair.a)), list(net.locate(pair.b))]},
    )


def cmd_augment(args) -> RunResult:
    net = load_network(args.input)
    p, q = _parse_segment(args.segment)
    c = candidate_from_points(net, p, q, SNAP)
    t = time.perf_counter()
    base = diameter_value(net)
    if args.path_fast:
        value = path_diameter_with_shortcut(as_path(net), c)
        method = "path-fast"
    else:
        value = diameter_with_segment(net, c)
        method = "quadratic"
    return RunResult("augment", method, base, value, candidate_json(net, c), timing=time.perf_counter() - t)


def cmd_shortcut(args) -> RunResult:
    net = load_network(args.input)
    t = time.perf_counter()
    guarantee = None
    details: dict = {}
    m = args.method
    if m == "approx":
        res = approx_optimal_shortcut(net, args.epsilon, budget=args.budget, threads=_threads(args))
        cand, value, base = res.candidate, res.diameter, res.guarantee.base_diameter
        guarantee = asdict(res.guarantee)
    elif m == "path-fixed":
        res = optimal_fixed_orientation_shortcut(as_path(net), math.radians(args.angle))
        cand, value, base = res.candidate, res.diameter, res.base_diameter
        details = {"angle_degrees": args.angle, "height": res.height}
    elif m == "path-simple":
        res = optimal_simple_shortcut(as_path(net))
        cand, value, base = res.candidate, res.diameter, res.base_diameter
        details = {"exists": res.exists, "limit": candidate_json(net, res.limit)}
    else:
        res = grid_shortcut_search(net, _oracle_cfg(args))
        cand, value, base = res.candidate, res.diameter, res.base_diameter
        details = {"grid_error": res.error, "evaluated": res.evaluated}
    elapsed = time.perf_counter() - t
    oracle = None
    if args.check_oracle:
        g = grid_shortcut_search(net, _oracle_cfg(args), simple_only=(m == "path-simple"))
        oracle = {
            "diameter": g.diameter,
            "error": g.error,
            "candidate": candidate_json(net, g.candidate),
            "consistent": bool(value <= g.diameter + g.error + 1e-9),
        }
    return RunResult("shortcut", m, base, value, candidate_json(net, cand), guarantee, elapsed, oracle, details)


def cmd_render(args) -> RunResult:
    net = load_network(args.input)
    c = None
    pair_net = net
    if args.segment:
        p, q = _parse_segment(args.segment)
        c = candidate_from_points(net, p, q, SNAP)
        pair_net = insert_segment(net, c).network
    pair = continuous_diameter(pair_net)
    svg = render_svg(net, c, pair, pair_net)
    try:
        Path(args.out).write_text(svg)
    except OSError as exc:
        raise IOFailure(f"cannot write {args.out}: {exc}") from exc
    return RunResult("render", "svg", diameter_value(net), pair.value, candidate_json(net, c),
                     details={"out": str(args.out)})


NAMED = {
    "square": fixtures.unit_square,
    "straight": lambda: fixtures.straight_path().network,
    "vpath": lambda: fixtures.v_path().network,
    "upath": lambda: fixtures.u_path().network,
    "lpath": lambda: fixtures.l_path().network,
    "spath": lambda: fixtures.s_path().network,
}


def cmd_fixture(args) -> str:
    if args.name == "spikes":
        fx = fixtures.gen_spike_fixture(args.spikes, args.span)
        net = fx.path.network
        meta = {"fixture": "spikes", "spikes": args.spikes, "span": args.span,
                "segment": [list(fx.candidate.geometry.a), list(fx.candidate.geometry.b)]}
    else:
        net = NAMED[args.name]()
        meta = {"fixture": args.name}
    text = json.dumps(net.to_json(meta), indent=2) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise IOFailure(f"cannot write {args.out}: {exc}") from exc
        return ""
    return text


# argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netshort", description="Continuous diameter and shortcuts of plane networks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, input_=True):
        if input_:
            p.add_argument("input", help="network JSON file")
        p.add_argument("--quiet", action="store_true", help="print only the diameter")
        p.add_argument("--seed", type=int, default=0)
        return p

    common(sub.add_parser("diam", help="continuous diameter and diametral pair"))
    p = common(sub.add_parser("augment", help="diameter after inserting a segment"))
    p.add_argument("--segment", required=True, metavar="X1,Y1,X2,Y2")
    p.add_argument("--path-fast", action="store_true", help="chain sweep for path inputs")
    p = common(sub.add_parser("shortcut", help="search for a diameter-minimizing segment"))
    p.add_argument("--method", choices=["approx", "path-fixed", "path-simple", "oracle"], default="approx")
    p.add_argument("--epsilon", type=float, default=None, help="subdivision step for approx")
    p.add_argument("--angle", type=float, default=0.0, help="segment direction in degrees for path-fixed")
    p.add_argument("--check-oracle", action="store_true", help="append a grid search cross-check")
    p.add_argument("--oracle-samples", type=int, default=50, help="grid endpoints per edge")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max vertices for approx")
    p = common(sub.add_parser("render", help="write an SVG drawing"))
    p.add_argument("--segment", metavar="X1,Y1,X2,Y2")
    p.add_argument("--out", required=True)
    p = common(sub.add_parser("fixture", help="emit a fixture network as JSON"), input_=False)
    p.add_argument("--name", choices=["spikes", *NAMED], default="spikes")
    p.add_argument("--spikes", type=int, default=8)
    p.add_argument("--span", type=float, default=16.0)
    p.add_argument("--out")
    return ap


COMMANDS = {"diam": cmd_diam, "augment": cmd_augment, "shortcut": cmd_shortcut, "render": cmd_render}


def _glue_values(argv: list[str]) -> list[str]:
    """Let ``--segment -1,2,3,4`` through: argparse would read the negative
    coordinates as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--segment":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--segment={nxt}")
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        if args.command == "fixture":
            sys.stdout.write(cmd_fixture(args))
            return 0
        result = COMMANDS[args.command](args)
    except NetshortError as exc:
        print(f"netshort: error: {exc}", file=sys.stderr)
        return exc.exit_code
    print(repr(result.diameter) if args.quiet else result.to_json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
