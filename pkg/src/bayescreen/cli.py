"""Command-line front end.

Every engine operation is exposed as a subcommand. Results print as
``name = value`` text by default; ``--json`` switches to a stable
envelope (schema_version, command, inputs, result, warnings) and
``--csv PATH`` exports curve/density payloads as comma-separated text.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, heuristics, tables
from .errors import BayescreenError
from .estimators import (
    BetaParams,
    CohortObservation,
    DensityGrid,
    ValidationData,
    baxter_posterior_known,
    baxter_posterior_unknown,
    beta_moments,
    beta_update,
    posterior_summary,
    rogan_gladen,
)
from .screening import (
    CurveSeries,
    TestCharacteristics,
    fagan_coordinates,
    positive_lr,
    posttest_exact,
    ppv,
    ppv_curve,
    prevalence_threshold,
)
from .simulate import SimConfig, replicate_table, simulate

SCHEMA_VERSION = "1"


def _constant(choice: str) -> heuristics.HeuristicConstant:
    # --constant 4.54 selects the slope-0.22 form; 5 the rounded divisor.
    if choice == "4.54":
        return heuristics.HeuristicConstant(slope=0.22, display_divisor=1 / 0.22)
    return heuristics.HeuristicConstant(slope=0.2, display_divisor=5.0)


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {text}")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _add_test_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sens", type=_probability, required=True,
                   help="test sensitivity in [0, 1]")
    p.add_argument("--spec", type=_probability, required=True,
                   help="test specificity in [0, 1]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bayescreen",
        description="Diagnostic-screening probability engine",
    )

    def add_output_flags(target: argparse.ArgumentParser, top: bool) -> None:
        # Subparsers use SUPPRESS defaults so a flag given before the
        # subcommand is not clobbered by the subparser's defaults.
        suppress = argparse.SUPPRESS
        target.add_argument(
            "--json", action="store_true",
            default=False if top else suppress,
            help="emit a JSON result envelope")
        target.add_argument(
            "--csv", metavar="PATH",
            default=None if top else suppress,
            help="export curve/density payloads as CSV")
        target.add_argument(
            "--precision", type=int,
            default=(int(os.environ.get("BAYESCREEN_PRECISION", "4"))
                     if top else suppress),
            help="decimal places for printed probabilities (default 4, "
                 "or BAYESCREEN_PRECISION)")

    add_output_flags(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cmd(group, name, **kw):
        p = group.add_parser(name, **kw)
        add_output_flags(p, top=False)
        return p

    p = add_cmd(sub, "ppv", help="positive predictive value")
    _add_test_flags(p)
    p.add_argument("--pretest", type=_probability, required=True)

    p = add_cmd(sub, "threshold", help="prevalence threshold")
    _add_test_flags(p)

    p = add_cmd(sub, "lr", help="positive likelihood ratio")
    _add_test_flags(p)

    p = add_cmd(sub, "posttest", help="exact Bayes post-test update")
    p.add_argument("--pretest", type=_probability, required=True)
    p.add_argument("--lr", type=_positive, required=True)

    p = add_cmd(sub, "curve", help="PPV-pretest curve")
    _add_test_flags(p)
    p.add_argument("--grid", type=int, default=101)

    p = add_cmd(sub, "nomogram", help="Fagan nomogram coordinates")
    p.add_argument("--pretest", type=_probability, required=True)
    p.add_argument("--lr", type=_positive, required=True)

    est = add_cmd(sub, "estimate", help="prevalence estimation")
    est_sub = est.add_subparsers(dest="estimator", required=True)

    p = add_cmd(est_sub, "rogan-gladen", help="frequentist inversion")
    p.add_argument("--t", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    _add_test_flags(p)
    p.add_argument("--level", type=float, default=0.95)

    p = add_cmd(est_sub, "beta", help="beta-binomial conjugate update")
    p.add_argument("--t", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--alpha", type=_positive, default=1.0)
    p.add_argument("--beta", type=_positive, default=1.0)

    p = add_cmd(est_sub, "baxter", help="imperfect test, known parameters")
    p.add_argument("--t", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    _add_test_flags(p)
    p.add_argument("--grid", type=int, default=2048)
    p.add_argument("--level", type=float, default=0.95)

    p = add_cmd(est_sub, "baxter-unknown",
                           help="imperfect test, uncertain parameters")
    p.add_argument("--t", type=_nonneg_int, required=True)
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--na", type=_nonneg_int, required=True,
                   help="known-positive validation sample size")
    p.add_argument("--ta", type=_nonneg_int, required=True,
                   help="true positives in the validation sample")
    p.add_argument("--nb", type=_nonneg_int, required=True,
                   help="known-negative validation sample size")
    p.add_argument("--tb", type=_nonneg_int, required=True,
                   help="false positives in the validation sample")
    p.add_argument("--level", type=float, default=0.95)

    p = add_cmd(sub, "pretest", help="a-priori pretest bound from findings")
    p.add_argument("--lr", type=_positive, action="append", required=True,
                   help="finding likelihood ratio (repeatable)")
    p.add_argument("--baseline", type=_probability, default=None,
                   help="baseline prevalence added to the bound")
    p.add_argument("--constant", choices=["4.54", "5"], default="5")

    p = add_cmd(sub, "mcgee", help="linear logit shortcut post-test update")
    p.add_argument("--pretest", type=_probability, required=True)
    p.add_argument("--lr", type=_positive, required=True)
    p.add_argument("--constant", choices=["4.54", "5"], default="4.54")

    p = add_cmd(sub, "category", help="qualitative risk category")
    p.add_argument("--p", type=_probability, required=True)
    p.add_argument("--test-result", choices=["positive", "negative"],
                   default=None, help="apply a one-category shift")

    p = add_cmd(sub, "power-class", help="clinical power class of a ratio")
    p.add_argument("--lr", type=_positive, required=True)

    p = add_cmd(sub, "audit", help="heuristic-vs-exact error surface")
    p.add_argument("--constant", choices=["4.54", "5"], default="4.54")

    p = add_cmd(sub, "simulate", help="seeded Monte-Carlo cohorts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prev", type=_probability, required=True)
    _add_test_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicates", type=int, default=1)

    p = add_cmd(sub, "tables", help="regenerate the reference tables")
    p.add_argument("--which", choices=["3", "4", "both"], default="both")

    return parser


def _fmt(value: float, precision: int) -> str:
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return f"{value:.{precision}f}"


def _summary_dict(summary) -> dict:
    return {
        "mean": summary.mean,
        "mode": summary.mode,
        "variance": summary.variance,
        "credible_interval": list(summary.credible_interval),
        "level": summary.level,
    }


def _density_payload(d: DensityGrid) -> tuple[dict, str]:
    csv = "phi,density\n" + "".join(
        f"{x:.10g},{y:.10g}\n" for x, y in zip(d.support, d.values))
    return {"grid_size": int(d.support.size)}, csv


def _curve_payload(c: CurveSeries) -> str:
    header = f"{c.x_label.replace(' ', '_')},{c.y_label.replace(' ', '_')}"
    return header + "\n" + "".join(
        f"{x:.10g},{y:.10g}\n" for x, y in zip(c.x, c.y))


def _dispatch(args) -> tuple[dict, dict, list[str], str | None]:
    """Returns (inputs echo, result, warnings, optional csv payload)."""
    warnings: list[str] = []
    csv_payload: str | None = None

    if args.command == "ppv":
        test = TestCharacteristics(args.sens, args.spec)
        inputs = {"sens": args.sens, "spec": args.spec, "pretest": args.pretest}
        result = {"ppv": ppv(test, args.pretest)}
    elif args.command == "threshold":
        test = TestCharacteristics(args.sens, args.spec)
        inputs = {"sens": args.sens, "spec": args.spec}
        result = {"prevalence_threshold": prevalence_threshold(test)}
    elif args.command == "lr":
        test = TestCharacteristics(args.sens, args.spec)
        inputs = {"sens": args.sens, "spec": args.spec}
        result = {"positive_lr": positive_lr(test)}
    elif args.command == "posttest":
        inputs = {"pretest": args.pretest, "lr": args.lr}
        result = {"posttest": posttest_exact(args.pretest, args.lr)}
    elif args.command == "curve":
        test = TestCharacteristics(args.sens, args.spec)
        inputs = {"sens": args.sens, "spec": args.spec, "grid": args.grid}
        curve = ppv_curve(test, args.grid)
        csv_payload = _curve_payload(curve)
        result = {"grid_size": args.grid,
                  "prevalence_threshold": prevalence_threshold(test)}
    elif args.command == "nomogram":
        inputs = {"pretest": args.pretest, "lr": args.lr}
        left, mid, right = fagan_coordinates(args.pretest, args.lr)
        result = {
            "left": left, "mid": mid, "right": right,
            "posttest": posttest_exact(args.pretest, args.lr),
        }
    elif args.command == "estimate":
        return _dispatch_estimate(args, warnings)
    elif args.command == "pretest":
        fs = heuristics.FindingSet(
            tuple(heuristics.Finding(f"finding-{i}", lr)
                  for i, lr in enumerate(args.lr)),
            baseline_prevalence=args.baseline,
        )
        est = heuristics.pretest_estimate(fs, _constant(args.constant))
        inputs = {"lr": args.lr, "baseline": args.baseline,
                  "constant": args.constant}
        result = {"min": est.min_bound, "mean": est.mean, "max": est.max_bound}
        if est.clamped:
            warnings.append("pretest bound clamped to [0, 1]")
    elif args.command == "mcgee":
        res = heuristics.mcgee_posttest(args.pretest, args.lr,
                                        _constant(args.constant))
        inputs = {"pretest": args.pretest, "lr": args.lr,
                  "constant": args.constant}
        result = {"posttest": res.value,
                  "exact": posttest_exact(args.pretest, args.lr)}
        if res.clamped:
            warnings.append("heuristic value clamped to [0, 1]")
        if res.out_of_domain:
            warnings.append("pretest outside the 10-90% validity window")
    elif args.command == "category":
        cat = heuristics.medow_lucey_category(args.p)
        inputs = {"p": args.p, "test_result": args.test_result}
        result = {"category": cat.name, "bounds": [cat.lo, cat.hi]}
        if args.test_result is not None:
            updated = heuristics.medow_lucey_update(
                cat, args.test_result == "positive")
            result["updated_category"] = updated.name
    elif args.command == "power-class":
        pc = heuristics.clinical_power_class(args.lr)
        inputs = {"lr": args.lr}
        result = {"power_class": pc.name, "log10_kappa": pc.log10_kappa}
    elif args.command == "audit":
        phi = np.linspace(0.1, 0.9, 81)
        kappa = np.linspace(1.0, 10.0, 91)
        audit = heuristics.heuristic_audit(phi, kappa,
                                           _constant(args.constant))
        inputs = {"constant": args.constant}
        result = {"max_error_core": audit.max_error_core}
        csv_payload = "phi,kappa,error\n" + "".join(
            f"{p:.10g},{k:.10g},{audit.errors[i, j]:.10g}\n"
            for i, p in enumerate(phi) for j, k in enumerate(kappa))
    elif args.command == "simulate":
        cfg = SimConfig(n=args.n, true_prevalence=args.prev,
                        test=TestCharacteristics(args.sens, args.spec),
                        seed=args.seed, replicates=args.replicates)
        res = simulate(cfg)
        inputs = {"n": args.n, "prev": args.prev, "sens": args.sens,
                  "spec": args.spec, "seed": args.seed,
                  "replicates": args.replicates}
        result = {
            "replicates": [
                {"replicate": i, "t": r.t, "TP": r.tp, "FP": r.fp,
                 "TN": r.tn, "FN": r.fn}
                for i, r in enumerate(res.replicates)
            ]
        }
        csv_payload = replicate_table(res)
    elif args.command == "tables":
        inputs = {"which": args.which}
        result = {}
        if args.which in ("3", "both"):
            result["table3"] = tables.render_table3()
        if args.which in ("4", "both"):
            result["table4"] = tables.render_table4()
    else:  # pragma: no cover - argparse enforces the choices
        raise AssertionError(args.command)
    return inputs, result, warnings, csv_payload


def _dispatch_estimate(args, warnings):
    obs = CohortObservation(n=args.n, t=args.t)
    csv_payload = None
    if args.estimator == "rogan-gladen":
        test = TestCharacteristics(args.sens, args.spec)
        est = rogan_gladen(obs, test, level=args.level)
        inputs = {"t": args.t, "n": args.n, "sens": args.sens,
                  "spec": args.spec, "level": args.level}
        result = {"point": est.point, "lo": est.lo, "hi": est.hi,
                  "clamped": est.clamped}
        if est.clamped:
            warnings.append("raw estimate outside [0, 1]; clamped")
    elif args.estimator == "beta":
        posterior = beta_update(BetaParams(args.alpha, args.beta), obs)
        moments = beta_moments(posterior)
        inputs = {"t": args.t, "n": args.n,
                  "alpha": args.alpha, "beta": args.beta}
        result = {"alpha": posterior.alpha, "beta": posterior.beta,
                  "mean": moments.mean, "variance": moments.variance,
                  "sd": moments.sd}
    elif args.estimator == "baxter":
        test = TestCharacteristics(args.sens, args.spec)
        density = baxter_posterior_known(obs, test, grid_size=args.grid)
        summary = posterior_summary(density, level=args.level)
        inputs = {"t": args.t, "n": args.n, "sens": args.sens,
                  "spec": args.spec, "grid": args.grid, "level": args.level}
        extra, csv_payload = _density_payload(density)
        result = {**_summary_dict(summary), **extra}
    else:  # baxter-unknown
        val = ValidationData(n_a=args.na, t_a=args.ta,
                             n_b=args.nb, t_b=args.tb)
        density = baxter_posterior_unknown(obs, val)
        summary = posterior_summary(density, level=args.level)
        inputs = {"t": args.t, "n": args.n, "na": args.na, "ta": args.ta,
                  "nb": args.nb, "tb": args.tb, "level": args.level}
        extra, csv_payload = _density_payload(density)
        result = {**_summary_dict(summary), **extra}
    return inputs, result, warnings, csv_payload


def _print_text(result: dict, warnings: list[str], precision: int) -> None:
    for key, value in result.items():
        if isinstance(value, float):
            print(f"{key} = {_fmt(value, precision)}")
        elif isinstance(value, list) and value and isinstance(value[0], float):
            joined = ", ".join(_fmt(v, precision) for v in value)
            print(f"{key} = [{joined}]")
        elif isinstance(value, str) and "\n" in value:
            print(value, end="")
        else:
            print(f"{key} = {value}")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inputs, result, warnings, csv_payload = _dispatch(args)
    except BayescreenError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.csv:
        if csv_payload is None:
            print("error: this command has no CSV payload", file=sys.stderr)
            return 2
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_payload)
    if args.json:
        envelope = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "inputs": inputs,
            "result": result,
            "warnings": warnings,
        }
        print(json.dumps(envelope, sort_keys=True))
    else:
        if args.command == "simulate":
            # Replicate table is the canonical text output.
            print(csv_payload, end="")
            for w in warnings:
                print(f"warning: {w}", file=sys.stderr)
        else:
            _print_text(result, warnings, args.precision)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
