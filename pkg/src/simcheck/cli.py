"""Command-line front end.

Exit codes: 0 when the condition holds (or the command succeeded), 1 when it
does not hold, 2 on bad input or solver failure.
"""

import argparse
import csv
import json
import sys
import time
from decimal import Decimal
from fractions import Fraction

from . import __version__
from .attack import find_attack_channel
from .errors import NotSimulatable, SimcheckError
from .fixtures import erasure_pmf
from .lp import EPS_LP
from .pmf import EPS_PMF, pmf_from_dict
from .simulatability import EPS_VERDICT, Direction, check_simulatability, system_for

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def load_pmf(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh, parse_float=Decimal)
        return pmf_from_dict(data)
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _tolerances(args):
    return {"pmf": EPS_PMF, "lp": EPS_LP, "rank": args.tol_rank,
            "verdict": args.tol_verdict if args.tol_verdict is not None else EPS_VERDICT}


def _emit(obj, stream=None):
    stream = stream or sys.stdout
    json.dump(obj, stream, indent=2)
    stream.write("\n")


def _error(message):
    print(f"error: {message}", file=sys.stderr)
    report = {"version": __version__, "holds": None, "error": message}
    _emit(report)
    return EXIT_ERROR


def cmd_check(args):
    try:
        pmf = load_pmf(args.input)
        start = time.perf_counter()
        verdict = check_simulatability(
            pmf, Direction(args.direction),
            reduction=False if args.full_lp else None,
            rank_tol=args.tol_rank,
            verdict_tol=args.tol_verdict if args.tol_verdict is not None else EPS_VERDICT,
            early_stop=args.early_stop)
        total = time.perf_counter() - start
    except (InputError, SimcheckError, ValueError) as exc:
        return _error(str(exc))
    timings = dict(verdict.trace.get("timings", {}))
    timings["total"] = total
    report = {
        "version": __version__,
        "direction": verdict.direction.value,
        "holds": verdict.holds,
        "reason": verdict.reason.value,
        "rank_a": verdict.rank_a,
        "rank_aug": verdict.rank_aug,
        "h_star": verdict.h_star,
        "h_star_sign": verdict.h_star_sign,
        "m": verdict.m,
        "n": verdict.n,
        "reduction_used": verdict.trace.get("reduction_used", False),
        "iterations": verdict.trace.get("iterations", 0),
        "timings": timings,
        "tolerances": _tolerances(args),
        "seed": args.seed,
    }
    _emit(report)
    return EXIT_HOLDS if verdict.holds else EXIT_FAILS


def _parse_cost(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"cost must be a comma-separated list of numbers, got {text!r}") from None


def cmd_attack(args):
    try:
        pmf = load_pmf(args.input)
        system = system_for(pmf, Direction(args.direction))
        cost = _parse_cost(args.cost) if args.cost is not None else None
        result = find_attack_channel(system, cost)
    except NotSimulatable as exc:
        report = {"version": __version__, "direction": args.direction, "holds": False,
                  "error": "NotSimulatable", "certificate": exc.certificate.tolist()}
        _emit(report)
        return EXIT_FAILS
    except (InputError, SimcheckError, ValueError) as exc:
        return _error(str(exc))
    labels_in = pmf.z_labels
    labels_out = pmf.x_labels if args.direction == "y" else pmf.y_labels
    report = {
        "version": __version__,
        "direction": args.direction,
        "holds": True,
        "rows": list(labels_in),
        "cols": list(labels_out),
        "channel": result.channel.probs.tolist(),
        "objective": result.objective,
        "cost": result.cost.tolist(),
        "tolerances": _tolerances(args),
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit(report, fh)
    _emit(report)
    return EXIT_HOLDS


def parse_values(text):
    """``"0.1,0.2"`` or the inclusive range ``"start:stop:step"``, as exact fractions."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (Fraction(part) for part in text.split(":"))
            if step <= 0:
                raise ValueError("step must be positive")
            out, v = [], start
            while v <= stop:
                out.append(v)
                v += step
            return out
        return [Fraction(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad parameter list {text!r}: {exc}") from None


def _fmt(v):
    return format(float(v), ".10g")


def cmd_sweep(args):
    try:
        with open(args.template, encoding="utf-8") as fh:
            template = json.load(fh)
        if template.get("family", "binary_erasure") != "binary_erasure":
            raise InputError(f"unknown template family {template.get('family')!r}")
        alpha_spec = args.alpha if args.alpha is not None else template.get("alpha")
        gamma_spec = args.gamma if args.gamma is not None else template.get("gamma")
        if alpha_spec is None or gamma_spec is None:
            raise InputError("alpha and gamma values are required (template or flags)")
        alphas = parse_values(str(alpha_spec))
        gammas = parse_values(str(gamma_spec))
        for v in alphas + gammas:
            if not 0 < v < 1:
                raise InputError(f"parameter {_fmt(v)} is outside (0, 1)")
        direction = Direction(template.get("direction", args.direction))
    except (OSError, json.JSONDecodeError, InputError, ValueError, AttributeError) as exc:
        return _error(str(exc))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["alpha", "gamma", "holds"])
    try:
        for a in alphas:
            for g in gammas:
                verdict = check_simulatability(
                    erasure_pmf(a, g), direction,
                    reduction=False if args.full_lp else None,
                    rank_tol=args.tol_rank,
                    verdict_tol=args.tol_verdict if args.tol_verdict is not None else EPS_VERDICT)
                writer.writerow([_fmt(a), _fmt(g), str(verdict.holds).lower()])
    except SimcheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_HOLDS


def build_parser():
    parser = argparse.ArgumentParser(prog="simcheck", description="Simulatability checks for finite joint PMFs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--direction", choices=["y", "x"], default="y",
                        help="y: Sim_Y(Z->X) (default); x: Sim_X(Z->Y)")
    common.add_argument("--full-lp", action="store_true", help="skip the null-space size reduction")
    common.add_argument("--tol-rank", type=float, default=None,
                        help="relative singular-value cutoff (default max(m,n)*eps)")
    common.add_argument("--tol-verdict", type=float, default=None, help=f"h* sign threshold (default {EPS_VERDICT})")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide the simulatability condition")
    p.add_argument("input", help="PMF JSON file")
    p.add_argument("--early-stop", action="store_true", help="stop the LP at the first negative objective")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("attack", parents=[common], help="construct a simulation channel")
    p.add_argument("input", help="PMF JSON file")
    p.add_argument("--cost", help="comma-separated positive cost vector of length |Z||X|")
    p.add_argument("--output", "-o", help="also write the channel report to this file")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("sweep", parents=[common], help="verdict grid for the binary erasure family")
    p.add_argument("template", help="sweep template JSON")
    p.add_argument("--alpha", help="values: a,b,c or start:stop:step")
    p.add_argument("--gamma", help="values: a,b,c or start:stop:step")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
