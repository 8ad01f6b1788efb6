"""Command-line front end.

Subcommands: ``table1`` (ideal-elements reference table as CSV),
``sweep`` (error-rate sweep to a CSV file plus a companion figure),
``simulate`` (Monte Carlo run cross-checked against the closed form, JSON),
``solve-fair`` (fair-parameter solutions, JSON).

Exit codes: 0 success, 2 input error, 3 I/O error, 4 statistical self-check
failure. All output is deterministic given the inputs (including the seed):
CSV uses '.' decimals and LF line endings, JSON numbers carry 12 significant
digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from . import analytics, engine, fairness
from .config import ConfigError, build_framework, build_profile, load_config
from .elements import COEFFICIENTS, ElementProfile

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_SELFCHECK = 4

WORKERS_ENV = "QCFLIP_MAX_WORKERS"

_DEFAULT_SWEEP_PROFILE = ElementProfile(name="two-basis", p=0.8, q=0.8, p_star=0.5)
_PANEL_A_DEPTHS = (1, 2, 3)
_PANEL_B_PROBS = (0.6, 0.7, 0.8)


def _round_half_up(value: float, places: int) -> str:
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _sig12(value: float) -> float:
    return float(f"{value:.12g}")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _print_json(payload: dict, output: str | None) -> int:
    text = json.dumps(payload) + "\n"
    sys.stdout.write(text)
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {output}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def cmd_table1(args: argparse.Namespace) -> int:
    lines = ["N,element_prob,cheat_prob,bias"]
    for row in analytics.ideal_case_table():
        lines.append(
            f"{row.depth},{row.element_prob:.2f},"
            f"{_round_half_up(row.cheat_prob, 4)},{_round_half_up(row.bias, 4)}"
        )
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _sweep_result(args: argparse.Namespace):
    base = _DEFAULT_SWEEP_PROFILE
    if args.config:
        cfg = load_config(args.config)
        base = build_profile(cfg.elements[0])
    grid = analytics.default_error_grid(args.grid_step)
    if args.panel == "a":
        depths = args.n_values if args.n_values else _PANEL_A_DEPTHS
        return analytics.sweep_alice(base, n_values=depths, p_e_grid=grid)
    probs = args.p_values if args.p_values else _PANEL_B_PROBS
    return analytics.sweep_alice(base, p_values=probs, p_e_grid=grid)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        result = _sweep_result(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    labels = list(result.curves)
    lines = ["p_e," + ",".join(labels)]
    for row, p_e in enumerate(result.grid):
        cells = [_fmt(p_e)] + [_fmt(result.curves[label][row]) for label in labels]
        lines.append(",".join(cells))
    try:
        Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO

    if not args.no_figure:
        from . import plotting

        figure_path = Path(args.output).with_suffix(".png")
        try:
            plotting.render_sweep(result, figure_path, title=f"panel {args.panel}")
        except OSError as exc:
            print(f"error: cannot write {figure_path}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"figure written to {figure_path}", file=sys.stderr)
    return EXIT_OK


def _workers_from_env() -> int | None:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
        spec = build_framework(cfg)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    trials = args.trials if args.trials is not None else cfg.trials
    seed = args.seed if args.seed is not None else cfg.seed
    try:
        stats = engine.estimate(
            spec, args.scenario, trials, seed, workers=_workers_from_env()
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        # Degenerate sample (e.g. no settled runs): the statistic is unusable.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SELFCHECK

    analytic = analytics.scenario_analytic(spec, args.scenario)
    sigma = max(
        stats.std_error,
        math.sqrt(analytic * (1.0 - analytic) / stats.trials),
    )
    if sigma > 0.0:
        distance = abs(stats.estimate - analytic) / sigma
    else:
        distance = 0.0 if stats.estimate == analytic else math.inf

    payload = {
        "scenario": args.scenario,
        "trials": stats.trials,
        "seed": stats.seed,
        "estimate": _sig12(stats.estimate),
        "std_error": _sig12(stats.std_error),
        "analytic": _sig12(analytic),
        "sigma_distance": _sig12(distance),
    }
    status = _print_json(payload, args.output)
    if status != EXIT_OK:
        return status
    if distance > 5.0:
        print(
            f"self-check failed: estimate is {distance:.2f} sigma from the "
            f"closed form",
            file=sys.stderr,
        )
        return EXIT_SELFCHECK
    return EXIT_OK


def cmd_solve_fair(args: argparse.Namespace) -> int:
    if args.element == "chailloux":
        if args.coefficient is not None:
            print(
                "error: --coefficient only applies to the bbbg09 element",
                file=sys.stderr,
            )
            return EXIT_INPUT
        composed = fairness.compose_chailloux()
        payload = {
            "element": composed.element,
            "common_cheat_prob": _sig12(composed.element_cheat_prob),
            "framework_cheat_prob": _sig12(composed.framework_cheat_prob),
            "framework_bias": _sig12(composed.framework_bias),
        }
        return _print_json(payload, args.output)

    coefficient = args.coefficient if args.coefficient is not None else "half"
    try:
        solution = fairness.solve_fair_bbbg09(coefficient, tolerance=args.tolerance)
    except (ValueError, fairness.SolverFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = {
        "element": "bbbg09",
        "coefficient": solution.coefficient_used,
        "alpha_sq": _sig12(solution.alpha_sq),
        "beta_sq": _sig12(solution.beta_sq),
        "common_cheat_prob": _sig12(solution.common_cheat_prob),
        "framework_cheat_prob": _sig12(solution.framework_cheat_prob),
        "framework_bias": _sig12(solution.framework_bias),
    }
    return _print_json(payload, args.output)


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _int_list(raw: str) -> tuple[int, ...]:
    return tuple(int(part) for part in raw.split(","))


def _float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(part) for part in raw.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcflip",
        description="Nested quantum coin-flipping protocols over noisy channels",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="also write the result to this file")

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(
        "table1",
        parents=[common],
        help="reference table for stacks of 2..6 perfect elements (CSV on stdout)",
    ).set_defaults(handler=cmd_table1)

    sweep = sub.add_parser(
        "sweep",
        help="sweep Alice's success probability over the channel error rate",
    )
    sweep.add_argument("config", nargs="?", default=None, help="scenario file; its first element is the base profile")
    sweep.add_argument("--panel", choices=("a", "b"), required=True)
    sweep.add_argument("--output", required=True, help="CSV output path")
    sweep.add_argument("--n-values", type=_int_list, default=None, help="comma-separated stack depths (panel a)")
    sweep.add_argument("--p-values", type=_float_list, default=None, help="comma-separated element probabilities (panel b)")
    sweep.add_argument("--grid-step", type=float, default=0.01)
    sweep.add_argument("--no-figure", action="store_true", help="skip the companion PNG")
    sweep.set_defaults(handler=cmd_sweep)

    simulate = sub.add_parser(
        "simulate",
        parents=[common],
        help="Monte Carlo run of one scenario, cross-checked against the closed form",
    )
    simulate.add_argument("config", help="scenario file")
    simulate.add_argument("scenario", choices=engine.SCENARIOS)
    simulate.add_argument("--trials", type=_positive_int, default=None, help="override the config's trial count")
    simulate.add_argument("--seed", type=int, default=None, help="override the config's seed")
    simulate.set_defaults(handler=cmd_simulate)

    fair = sub.add_parser(
        "solve-fair",
        parents=[common],
        help="fair parameters for an element composed with a perfect one",
    )
    fair.add_argument("element", choices=("bbbg09", "chailloux"))
    fair.add_argument("--coefficient", choices=COEFFICIENTS, default=None)
    fair.add_argument("--tolerance", type=float, default=1e-10)
    fair.set_defaults(handler=cmd_solve_fair)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
