"""Command-line front end.

Exit codes: 0 on success, 1 when a verification tolerance is violated,
2 for usage errors (bad flags, out-of-domain values).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import analytic as an
from . import fock, metrology, scan
from .analytic import ProbeConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _bounded(flag: str, lo: float | None = None, hi: float | None = None, kind=float):
    def parse(text: str):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects a {kind.__name__}, got {text!r}")
        if kind is float and not math.isfinite(value):
            raise argparse.ArgumentTypeError(f"{flag} must be finite, got {text!r}")
        if lo is not None and value < lo:
            raise argparse.ArgumentTypeError(f"{flag} must be >= {lo}, got {value}")
        if hi is not None and value > hi:
            raise argparse.ArgumentTypeError(f"{flag} must be <= {hi}, got {value}")
        return value
    return parse


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def probe_report(n: int, alpha: float, loss: float, phase: float) -> dict:
    cfg = ProbeConfig(n, alpha, loss, phase)
    quantities = ["advantage_ratio"] + (["regime"] if n >= 2 else [])
    extra = scan.evaluate_point(n, alpha, loss, phase, quantities)
    return {
        "inputs": {"n": n, "alpha": alpha, "loss": loss, "phase": phase},
        "detection_probabilities": list(an.coincidence_distribution(cfg).probs),
        "sum_rule": an.sum_rule(n, alpha, loss),
        "visibility": an.visibility(alpha, loss, n),
        "fisher_information": an.fisher_information(cfg),
        "fisher_information_max": an.fisher_information_max(n, alpha, loss),
        "advantage_ratio": extra["advantage_ratio"],
        "regime": extra["regime"].value if "regime" in extra else None,
    }


def cmd_probe(args) -> int:
    _emit(probe_report(args.n, args.alpha, args.loss, args.phase), args.out)
    return EXIT_OK


def _write_scan(result: scan.ScanResult, fmt: str, out: str | None) -> None:
    writer = scan.write_csv if fmt == "csv" else scan.write_json
    writer(result, out if out else sys.stdout)


def cmd_fringe(args) -> int:
    stop = args.phase_max if args.phase_max is not None else math.pi / args.n
    spec = scan.ScanSpec(
        axes=(scan.Axis("phase", args.phase_min, stop, args.steps),),
        quantities=("detection_probs", "fisher_phi"),
        fixed={"n": args.n, "alpha": args.alpha, "loss": args.loss},
    )
    _write_scan(scan.run_scan(spec), args.format, args.out)
    return EXIT_OK


def map_spec(n: int, steps: int, quantities, phase: float = 0.0) -> scan.ScanSpec:
    return scan.ScanSpec(
        axes=(scan.Axis("loss", 0.0, 1.0, steps), scan.Axis("alpha", 0.0, 1.0, steps)),
        quantities=tuple(quantities),
        fixed={"n": n, "phase": phase},
    )


def cmd_map(args) -> int:
    quantities = [q.strip() for q in args.quantities.split(",") if q.strip()]
    spec = map_spec(args.n, args.steps, quantities, args.phase)
    _write_scan(scan.run_scan(spec, workers=args.workers), args.format, args.out)
    return EXIT_OK


def cmd_optimize(args) -> int:
    if args.loss >= 1.0:
        raise scan.ScanError("--loss must be < 1 for optimization")
    if args.objective == "fisher":
        report = metrology.maximize_fisher_over_alpha(args.loss, args.n)
    else:
        report = metrology.maximize_visibility_over_alpha(args.loss, args.n)
    doc = {"inputs": {"n": args.n, "loss": args.loss, "objective": args.objective}}
    doc.update(report.to_dict())
    _emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = metrology.verify_grid(args.max_n)
    worst = max(results, key=lambda r: max(r.probability_diff, r.sum_rule_diff))
    bad = [r for r in results if max(r.probability_diff, r.sum_rule_diff) > args.tol]
    doc = {
        "inputs": {"max_n": args.max_n, "tol": args.tol},
        "points": len(results),
        "max_probability_diff": max(r.probability_diff for r in results),
        "max_sum_rule_diff": max(r.sum_rule_diff for r in results),
        "worst": _cfg_dict(worst.config),
        "violations": [
            dict(_cfg_dict(r.config), probability_diff=r.probability_diff, sum_rule_diff=r.sum_rule_diff)
            for r in bad
        ],
        "passed": not bad,
    }
    _emit(doc, args.out)
    return EXIT_OK if not bad else EXIT_FAIL


def _cfg_dict(cfg: ProbeConfig) -> dict:
    return {"n": cfg.n_photons, "alpha": cfg.alpha, "loss": cfg.loss, "phase": cfg.phase}


def thresholds_report(n: int) -> dict:
    interval = an.superiority_alpha_interval_lossless(n)
    if n == 2:
        adv, method = an.advantage_loss_threshold_two_photon(), "closed_form"
    else:
        adv, method = metrology.find_advantage_threshold(n), "bisection"
    return {
        "inputs": {"n": n},
        "superiority_alpha_interval": list(interval),
        "superiority_loss_at_optimal_alpha": an.superiority_loss_bound_optimal_alpha(n),
        "advantage_loss_threshold": adv,
        "advantage_threshold_method": method,
    }


def cmd_thresholds(args) -> int:
    if args.n < 2:
        raise scan.ScanError("--n must be >= 2: thresholds compare an N-photon probe with single photons")
    _emit(thresholds_report(args.n), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="noonlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    n_flag = _bounded("--n", lo=1, kind=int)
    unit = {k: _bounded(f"--{k}", 0.0, 1.0) for k in ("alpha", "loss")}
    phase = _bounded("--phase")

    def common(p, *, alpha=True, loss=True, phase_flag=True, fmt=False, n_default=None):
        p.add_argument("--n", type=n_flag, required=n_default is None, default=n_default,
                       help="photon number N")
        if alpha:
            p.add_argument("--alpha", type=unit["alpha"], required=True, help="reference-arm weight in [0, 1]")
        if loss:
            p.add_argument("--loss", type=unit["loss"], required=True, help="arm-b loss probability in [0, 1]")
        if phase_flag:
            p.add_argument("--phase", type=phase, default=0.0, help="relative phase in radians")
        if fmt:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("probe", help="single-point report")
    common(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("fringe", help="phase sweep at a fixed point")
    common(p, phase_flag=False, fmt=True)
    p.add_argument("--phase-min", type=_bounded("--phase-min"), default=0.0)
    p.add_argument("--phase-max", type=_bounded("--phase-max"), default=None,
                   help="default: pi / N, one fringe period")
    p.add_argument("--steps", type=_bounded("--steps", lo=2, kind=int), default=101)
    p.set_defaults(func=cmd_fringe)

    p = sub.add_parser("map", help="(loss, alpha) map")
    common(p, alpha=False, loss=False, fmt=True, n_default=2)
    p.add_argument("--steps", type=_bounded("--steps", lo=2, kind=int), default=201,
                   help="points per axis, endpoints included")
    p.add_argument("--quantities", default="fisher_max,advantage_ratio,regime",
                   help=f"comma-separated subset of {','.join(scan.QUANTITIES)}")
    p.add_argument("--workers", type=_bounded("--workers", lo=1, kind=int), default=1)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("optimize", help="optimal alpha for an objective")
    common(p, alpha=False, phase_flag=False)
    p.add_argument("--objective", choices=("visibility", "fisher"), required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="oracle versus closed-form probabilities")
    p.add_argument("--max-n", type=_bounded("--max-n", lo=1, hi=fock.DEFAULT_MAX_PHOTONS, kind=int),
                   default=6)
    p.add_argument("--tol", type=_bounded("--tol", lo=0.0), default=1e-12)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("thresholds", help="superiority and advantage thresholds")
    p.add_argument("--n", type=n_flag, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_thresholds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"noonlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"noonlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
