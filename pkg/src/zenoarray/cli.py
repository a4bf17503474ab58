"""Command-line entry point: one subcommand per curve, CSV on output."""

from __future__ import annotations

import argparse
import io
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import arrays, mcwf, optimizer, thermal
from .config import COMMANDS, ConfigError, ExperimentConfig, build_config, read_config_file
from .fock import FockCutoff


@dataclass
class CsvTable:
    header: list[str]
    rows: list[list]

    def to_text(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.header) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        return buf.getvalue()


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".12g")


def _n_range(p) -> range:
    return range(p["n_min"], p["n_max"] + 1, p.get("n_step", 1))


def _run_ideal(cfg: ExperimentConfig) -> CsvTable:
    p = cfg.params
    rows = [[n, arrays.ideal_p1(n, p["theta"])] for n in _n_range(p)]
    return CsvTable(["N", "p1"], rows)


def _run_dispersion(cfg: ExperimentConfig) -> CsvTable:
    p = cfg.params
    rows = []
    for n in _n_range(p):
        spec = arrays.DispersionSpec(n, p["sigma"], p["samples"], cfg.seed)
        stats = arrays.dispersion_ensemble(spec, cfg.workers)
        rows.append([
            n,
            stats.mean[0],
            stats.stderr[0],
            arrays.ideal_p1(n),
            arrays.dispersion_expectation(n, p["sigma"]),
        ])
    return CsvTable(["N", "p1_mean", "stderr", "p1_ideal", "p1_expected"], rows)


def _run_thermal(cfg: ExperimentConfig) -> CsvTable:
    p = cfg.params
    spec = thermal.ThermalArraySpec(
        n_splitters=p["beamsplitters"],
        nbar=p["nbar"],
        theta=p["theta"],
        cutoff=FockCutoff(p["cutoff"]),
        ancilla_n_max=p["ancilla_cutoff"],
        renormalize_ancilla=p["renormalize"],
    )
    alpha = spec.alpha
    rows = [
        [n, port.p(1), thermal.thermal_p1_approx(n, spec.theta, alpha), port.leaked]
        for n, port in enumerate(thermal.propagate_thermal_array(spec), start=1)
    ]
    return CsvTable(["n", "p1_exact", "p1_approx", "leaked"], rows)


def _mcwf_spec(cfg: ExperimentConfig, trajectories: int = 1) -> mcwf.McwfSpec:
    p = cfg.params
    return mcwf.McwfSpec(p["beamsplitters"], p["gamma"], p["theta"], trajectories, cfg.seed)


def _run_trajectory(cfg: ExperimentConfig) -> CsvTable:
    spec = _mcwf_spec(cfg)
    record = mcwf.trajectory(spec, cfg.params["trajectory_index"])
    rows = [[n, int(s)] for n, s in enumerate(record.survival, start=1)]
    return CsvTable(["n", "p1"], rows)


def _run_mcwf(cfg: ExperimentConfig) -> CsvTable:
    spec = _mcwf_spec(cfg, cfg.params["trajectories"])
    stats = mcwf.run_ensemble(spec, cfg.workers)
    steps = np.arange(1, spec.n_splitters + 1)
    bern = mcwf.bernoulli_p1(steps, spec.gamma, spec.theta)
    expo = mcwf.analytic_p1_absorption(steps, spec.n_splitters, spec.gamma)
    rows = [
        [int(n), stats.mean[i], stats.stderr[i], bern[i], expo[i]]
        for i, n in enumerate(steps)
    ]
    return CsvTable(["n", "p1_mcwf", "stderr", "p1_bernoulli", "p1_eq11"], rows)


def _run_critical(cfg: ExperimentConfig) -> CsvTable:
    rows = []
    for g in sorted(cfg.params["gamma"]):
        r = optimizer.solve_critical_n(g)
        rows.append([g, r.n_real, r.n_int, r.p1_at_max, r.asymptotic_estimate, r.asymptotic_alt])
    header = ["gamma", "n_real", "n_int", "p1_at_max", "asymptotic_eq12", "asymptotic_paper"]
    return CsvTable(header, rows)


_RUNNERS = {
    "ideal": _run_ideal,
    "dispersion": _run_dispersion,
    "thermal": _run_thermal,
    "trajectory": _run_trajectory,
    "mcwf": _run_mcwf,
    "critical": _run_critical,
}


def run(config: ExperimentConfig) -> CsvTable:
    return _RUNNERS[config.command](config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenoarray",
        description="Single-photon transmission through imperfect beam splitter arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, table in COMMANDS.items():
        sp = sub.add_parser(name)
        for key, param in table.items():
            flag = "--" + key.replace("_", "-")
            if key == "renormalize":
                sp.add_argument(flag, action="store_const", const=True, default=None, help=param.help)
            elif key == "gamma" and name == "critical":
                sp.add_argument(flag, nargs="+", type=float, default=None, help=param.help)
            else:
                sp.add_argument(flag, default=None, help=f"{param.help} (default {param.default})")
        sp.add_argument("--seed", default=None, help="unsigned 64-bit seed, or 'random'")
        sp.add_argument("--workers", default=None, help="worker threads (hint)")
        sp.add_argument("--output", "-o", default=None, help="CSV path (default stdout)")
        sp.add_argument("--config", default=None, help="flat 'key = value' config file")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> ExperimentConfig:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config")
    file_values = read_config_file(config_path) if config_path else {}
    return build_config(command, file_values, args)


def write_atomic(text: str, path: str) -> None:
    """Write via a temporary sibling so a failed run leaves no partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".zenoarray-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except ConfigError as exc:
        print(f"zenoarray: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"zenoarray: error: cannot read config: {exc}", file=sys.stderr)
        return 2

    text = run(config).to_text()
    if config.output is None:
        sys.stdout.write(text)
        return 0
    try:
        write_atomic(text, config.output)
    except OSError as exc:
        print(f"zenoarray: error: cannot write {config.output}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
