"""Command line entry point: ``popsim <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .config import PRESETS, ConfigError, ExperimentConfig, load_config, preset
from .experiment import run_experiment


def _floats(text: str):
    try:
        return tuple(float(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def _common(p: argparse.ArgumentParser, list_gammas: bool = False):
    p.add_argument("--config", help="key-value experiment file")
    p.add_argument("--seed", type=int)
    p.add_argument("--agents", type=int, dest="m", help="ensemble size m")
    p.add_argument("--steps", type=int, dest="t_max", help="time steps per agent")
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="CSV output path (stdout if omitted)")
    if list_gammas:
        p.add_argument("--alpha", type=_floats)
        p.add_argument("--gamma-d", type=_floats)
        p.add_argument("--gamma-i", type=_floats)
    else:
        p.add_argument("--alpha", type=float)
        p.add_argument("--gamma-d", type=float)
        p.add_argument("--gamma-i", type=float)
    p.add_argument("--symbols", type=int, dest="N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="popsim", description="Projective-simulation invasion-game laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="efficiency curve of one ensemble")
    _common(p)
    p.add_argument("--scenario", choices=("fo", "po-absolute", "po-mixed", "appendix"))
    p.add_argument("--t-switch", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--colored", action="store_true", default=None)
    p.add_argument("--reward-basis", choices=("perceived", "world"))

    p = sub.add_parser("sweep", help="Monte-Carlo asymptotes over gamma_d x gamma_i x alpha lists")
    _common(p, list_gammas=True)

    p = sub.add_parser("surface", help="asymptotic efficiency surface")
    _common(p, list_gammas=True)
    p.add_argument("--mode", choices=("closed-form", "monte-carlo"))

    p = sub.add_parser("game", help="2x2 defender-interpreter game")
    _common(p)
    p.add_argument("--alpha-a", type=float)
    p.add_argument("--alpha-b", type=float)
    p.add_argument("--gamma-a", type=float)
    p.add_argument("--gamma-b", type=float)

    p = sub.add_parser("lambda-eff", help="effective reward over a gamma grid")
    _common(p)
    p.add_argument("--gammas", type=_floats)

    p = sub.add_parser("oracle", help="exact expected efficiency for short runs")
    _common(p)

    p = sub.add_parser("preset", help="run a figure preset")
    p.add_argument("name", choices=sorted(PRESETS))
    _common(p)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    cmd = args.command
    if cmd == "preset":
        base = preset(args.name)
    elif args.config:
        base = load_config(args.config)
    else:
        base = {
            "simulate": ExperimentConfig(scenario="fo"),
            "sweep": ExperimentConfig(scenario="surface", mode="monte-carlo"),
            "surface": ExperimentConfig(scenario="surface"),
            "game": ExperimentConfig(scenario="game"),
            "lambda-eff": ExperimentConfig(scenario="lambda-eff", m=10000),
            "oracle": ExperimentConfig(scenario="oracle", t_max=8),
        }[cmd]

    kw = {k: getattr(args, k, None) for k in ("seed", "m", "t_max", "threads", "out", "N")}
    if cmd in ("sweep", "surface"):
        kw.update(gammas=args.gamma_d, gamma_i_grid=args.gamma_i, alphas=args.alpha)
        if cmd == "sweep":
            kw["mode"] = "monte-carlo"
        else:
            kw["mode"] = args.mode
    else:
        kw.update(alpha=args.alpha, gamma_d=args.gamma_d, gamma_i=args.gamma_i)
    if cmd == "simulate":
        kw.update(scenario=args.scenario, t_switch=args.t_switch, window=args.window,
                  colored=args.colored, reward_basis=args.reward_basis)
        if args.scenario is None and not args.config and args.alpha is not None and args.alpha < 1:
            kw["scenario"] = "po-mixed"
    elif cmd == "game":
        kw.update(alpha_a=args.alpha_a, alpha_b=args.alpha_b, gamma_a=args.gamma_a, gamma_b=args.gamma_b)
    elif cmd == "lambda-eff":
        kw["gammas"] = args.gammas
    return base.with_overrides(**kw)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        outcome = run_experiment(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"popsim: configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"popsim: I/O error: {exc}", file=sys.stderr)
        return 1
    if not cfg.out:
        if outcome.report:
            sys.stdout.write(outcome.report + "\n")
        sys.stdout.write(outcome.csv)
    else:
        for path in outcome.paths:
            print(f"wrote {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
