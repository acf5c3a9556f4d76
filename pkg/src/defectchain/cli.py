"""Command-line front end.

Subcommands: ``spectrum``, ``evolve``, ``predict``, ``compare``, ``sweep``.
Each accepts either ``--scenario <preset>`` or ``--config <file>`` (with
CLI flags overriding file values) and writes CSVs into the output
directory.  Exit codes: 0 success, 2 configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .dynamics import NumericalError, decompose
from .hamiltonian import build_sector_hamiltonian
from .scenarios import (
    SCENARIO_NAMES,
    SWEEP_PARAMETERS,
    ConfigError,
    ScenarioConfig,
    _write_prediction,
    build_setup,
    load_config,
    preset,
    resolved_config_items,
    run_compare_sweep,
    run_scenario,
    write_csv,
    write_sweep,
)


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", choices=SCENARIO_NAMES, help="preset scenario name")
    parser.add_argument("--config", help="path to a scenario config file")
    parser.add_argument("--out", help="output directory (default from config)")
    parser.add_argument("--samples", type=int, help="number of sample times")
    parser.add_argument("--t-max", type=float, dest="t_max", help="trace window in units of B*t")
    parser.add_argument("--n-times", type=int, dest="n_times", help="predicted instants to emit")
    parser.add_argument("--quench-at", type=float, dest="quench_at", help="quench instant, B*t units")
    parser.add_argument(
        "--quench-detuning", type=float, dest="quench_detuning", help="level-spacing shift to apply"
    )
    parser.add_argument(
        "--quench-sites", dest="quench_sites", help="comma-separated sites to detune"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defectchain",
        description="Defect-engineered entanglement in anisotropic spin chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "write the sector eigenvalues"),
        ("evolve", "write the exact-dynamics trace"),
        ("predict", "write the closed-form prediction"),
        ("compare", "write trace, prediction and comparison summary"),
        ("sweep", "re-run a scenario across one parameter"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common_arguments(p)
        if name == "sweep":
            p.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
            p.add_argument("--values", required=True, help="comma-separated values")
    return parser


def _resolve_config(args) -> ScenarioConfig:
    if args.config:
        cfg = load_config(args.config)
        if args.scenario and args.scenario != cfg.scenario:
            raise ConfigError(
                f"--scenario {args.scenario} conflicts with config scenario {cfg.scenario}"
            )
    elif args.scenario:
        cfg = preset(args.scenario)
    else:
        raise ConfigError("either --scenario or --config is required")

    overrides = {}
    for name in ("samples", "t_max", "n_times", "quench_at", "quench_detuning"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.quench_sites is not None:
        overrides["quench_sites"] = tuple(
            int(s) for s in args.quench_sites.split(",") if s.strip()
        )
    if args.out is not None:
        overrides["output_dir"] = args.out
    return replace(cfg, **overrides)


def _cmd_spectrum(cfg: ScenarioConfig) -> None:
    setup = build_setup(cfg)
    decomp = decompose(build_sector_hamiltonian(setup.chain, setup.basis))
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{cfg.scenario}_spectrum.csv"
    rows = [(i, float(e)) for i, e in enumerate(decomp.eigenvalues)]
    write_csv(path, resolved_config_items(setup), ["index", "energy"], rows)
    print(path)


def _cmd_evolve(cfg: ScenarioConfig) -> None:
    result = run_scenario(cfg)
    print(result["paths"]["trace"])


def _cmd_predict(cfg: ScenarioConfig) -> None:
    setup = build_setup(cfg)
    if setup.prediction is None:
        raise ConfigError(f"scenario {cfg.scenario!r} has no closed-form prediction")
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{cfg.scenario}_prediction.csv"
    _write_prediction(
        path, resolved_config_items(setup), setup.prediction, cfg.coupling
    )
    print(path)


def _cmd_compare(cfg: ScenarioConfig) -> None:
    result = run_scenario(cfg)
    for path in result["paths"].values():
        print(path)


def _cmd_sweep(cfg: ScenarioConfig, parameter: str, values_text: str) -> None:
    values = [float(v) for v in values_text.split(",") if v.strip()]
    rows = run_compare_sweep(cfg, parameter, values)
    print(write_sweep(cfg, parameter, rows))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        if args.command == "spectrum":
            _cmd_spectrum(cfg)
        elif args.command == "evolve":
            _cmd_evolve(cfg)
        elif args.command == "predict":
            _cmd_predict(cfg)
        elif args.command == "compare":
            _cmd_compare(cfg)
        elif args.command == "sweep":
            _cmd_sweep(cfg, args.param, args.values)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
