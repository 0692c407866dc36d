"""Command-line entry point: ``simulate``, ``coefficients`` and ``verify``."""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .cd_control import adiabaticity_parameter, mf_cd_coefficients, pp_cd_coefficients
from .config import ScenarioConfig, load_config, with_overrides
from .dynamics import ControlMode, Trajectory, integrate
from .errors import STAError
from .normal_modes import mf_normal_frequencies, pp_normal_frequencies
from .observables import CLAMP_TOL, coefficient_traces, trajectory_energies
from .verification import run_checks

TRAJECTORY_HEADER = ["t", "re_u1", "im_u1", "re_v1", "im_v1", "re_u2", "im_u2", "re_v2", "im_v2",
                     "constraint1", "constraint2"]
ENERGY_HEADER = ["t", "e1", "e2", "eg1", "eg2", "e_r"]
FIG1_HEADER = ["t", "e_r_none", "e_r_mode1", "e_r_both", "F", "G"]
FIG1_COLUMN = {ControlMode.NONE: "e_r_none", ControlMode.MODE1_ONLY: "e_r_mode1",
               ControlMode.BOTH: "e_r_both"}


def _fmt(x) -> str:
    # repr of a Python float round-trips exactly
    return "" if x is None else repr(float(x))


def _write_csv(path: Path, header: list[str], rows, written: list[Path]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    written.append(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    return path


def _sample_grid(cfg: ScenarioConfig) -> np.ndarray:
    n = max(1, int(np.ceil(cfg.tau_q / cfg.dt - 1e-9)))
    idx = list(range(0, n + 1, cfg.output_stride))
    if idx[-1] != n:
        idx.append(n)
    return cfg.tau_q * np.array(idx) / n


def _trajectory_rows(traj: Trajectory):
    constraint = traj.constraint()
    for t, s, c in zip(traj.times, traj.states, constraint):
        yield [t, s[0].real, s[0].imag, s[1].real, s[1].imag,
               s[2].real, s[2].imag, s[3].real, s[3].imag, c[0], c[1]]


def simulate_dimer(cfg: ScenarioConfig) -> dict[ControlMode, Trajectory]:
    return {mode: integrate(cfg.params, mode, (0.0, cfg.tau_q), cfg.dt,
                            stride=cfg.output_stride, initial=cfg.initial)
            for mode in cfg.modes}


def _coefficient_rows(cfg: ScenarioConfig):
    grid = _sample_grid(cfg)
    if cfg.family == "dimer":
        return ["t", "F", "G"], [list(row) for row in coefficient_traces(cfg.params, grid)]
    rows = []
    for t in grid:
        t = float(t)
        if cfg.family == "pp":
            c = pp_cd_coefficients(cfg.params, t)
            w1, w1d, w2, w2d = pp_normal_frequencies(cfg.params, t)
        else:
            c = mf_cd_coefficients(cfg.params, t)
            w1, w1d, w2, w2d = mf_normal_frequencies(cfg.params, t)
        rows.append([t, c.local, c.coupling,
                     adiabaticity_parameter(w1, w1d), adiabaticity_parameter(w2, w2d)])
    header = ["t", "F", "G", "Q1", "Q2"] if cfg.family == "pp" else ["t", "M", "N", "Q_plus", "Q_minus"]
    return header, rows


def run(cfg: ScenarioConfig, output_dir: str | Path = ".") -> list[Path]:
    """Execute a scenario and write its CSV files; returns the paths written.

    On any error every file written so far is removed before re-raising.
    """
    out_dir = Path(output_dir)
    target = out_dir / cfg.output_path
    written: list[Path] = []
    try:
        if cfg.family != "dimer":
            header, rows = _coefficient_rows(cfg)
            _write_csv(target, header, rows, written)
            return written
        trajs = simulate_dimer(cfg)
        energies = {mode: trajectory_energies(tr) for mode, tr in trajs.items()}
        stem = target.with_suffix("")
        for mode, tr in trajs.items():
            _write_csv(Path(f"{stem}_trajectory_{mode.value}.csv"), TRAJECTORY_HEADER,
                       _trajectory_rows(tr), written)
            _write_csv(Path(f"{stem}_energies_{mode.value}.csv"), ENERGY_HEADER,
                       ([t, e.e1, e.e2, e.eg1, e.eg2, e.e_r] for t, e in zip(tr.times, energies[mode])),
                       written)
        times = next(iter(trajs.values())).times
        traces = coefficient_traces(cfg.params, times)
        rows = []
        for i, (t, F, G) in enumerate(traces):
            cols = {mode: energies[mode][i].e_r for mode in trajs}
            rows.append([t] + [cols.get(mode) for mode in FIG1_COLUMN] + [F, G])
        _write_csv(target, FIG1_HEADER, rows, written)
        return written
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise


def run_coefficients(cfg: ScenarioConfig, output_dir: str | Path = ".") -> list[Path]:
    target = Path(output_dir) / cfg.output_path
    target = target.with_name(target.stem + "_coefficients.csv")
    written: list[Path] = []
    try:
        header, rows = _coefficient_rows(cfg)
        _write_csv(target, header, rows, written)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def verify(n_max: int = 40, cd_scale: float = 1.0, stream=None) -> int:
    stream = stream or sys.stdout
    results = run_checks(n_max=n_max, cd_scale=cd_scale)
    for r in results:
        print(r.line(), file=stream)
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: " + ", ".join(r.name for r in failed), file=stream)
        return 1
    print(f"all {len(results)} checks passed (n_max={n_max})", file=stream)
    return 0


def _summary(paths: list[Path]) -> None:
    for p in paths:
        print(f"wrote {p}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coupledsta",
        description="Counterdiabatic driving of two coupled harmonic oscillators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("simulate", "run a scenario and write its CSV outputs"),
                            ("coefficients", "write driving-coefficient traces only")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="scenario configuration file")
        p.add_argument("--output-dir", default=".", help="directory for CSV outputs (default: .)")
        p.add_argument("--stride", type=int, default=None, help="override run.stride")
    p = sub.add_parser("verify", help="cross-check the Bogoliubov engine against the Fock oracle")
    p.add_argument("--n-max", type=int, default=40, help="Fock-space truncation (default: 40)")
    p.add_argument("--cd-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return verify(n_max=args.n_max, cd_scale=args.cd_scale)
        cfg = with_overrides(load_config(args.config), stride=args.stride)
        if args.command == "simulate":
            paths = run(cfg, args.output_dir)
            if cfg.family == "dimer":
                _report_dimer(cfg, paths)
        else:
            paths = run_coefficients(cfg, args.output_dir)
        _summary(paths)
        return 0
    except (STAError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _report_dimer(cfg: ScenarioConfig, paths: list[Path]) -> None:
    with paths[-1].open() as fh:
        rows = list(csv.DictReader(fh))
    for mode in cfg.modes:
        values = [_clamp(float(r[FIG1_COLUMN[mode]])) for r in rows]
        print(f"{mode.value:>10s}: max E_r = {max(values):.6e}, final E_r = {values[-1]:.6e}")


def _clamp(e_r: float) -> float:
    # negative values within CLAMP_TOL are integrator noise
    return 0.0 if -CLAMP_TOL < e_r < 0.0 else e_r


if __name__ == "__main__":
    sys.exit(main())
