"""Command-line front end: trajectory simulation, figure-data presets and
the verification suite.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure.  All tabular output uses fixed-precision scientific
notation so identical configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import acceptance, analysis, gaussian, qubits
from .flux import write_map_csv
from .correlations import gaussian_discord, log_negativity, quantum_discord

__all__ = ["ConfigError", "RunConfig", "main"]

_FIGURES = ("fig2", "fig3a", "fig3b", "fig4", "fig5", "fig6")


class ConfigError(Exception):
    """Invalid configuration; the message names the violated constraint."""


@dataclass
class RunConfig:
    """Resolved settings of one ``simulate`` run (defaults < file < flags)."""

    system: str = "cv"
    mode: str = "cascade"
    gamma: float = 1.0
    N: float = 0.0
    NS: float = 1.0
    xi: float = 1.0
    xiS: float = 0.0
    c13: float = 0.0
    c24: float = 0.0
    re_rho23: float = 0.0
    im_rho23: float = 0.0
    tmax: float = 10.0
    dt: float = 0.01
    out: str = "flux.csv"
    format: str = "csv"

    def validate(self) -> None:
        if self.system not in ("cv", "qubit"):
            raise ConfigError(f"system must be 'cv' or 'qubit', got {self.system!r}")
        if self.mode not in ("cascade", "independent"):
            raise ConfigError(f"mode must be 'cascade' or 'independent', got {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        if not self.gamma > 0.0:
            raise ConfigError(f"gamma must be positive, got {self.gamma}")
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if not self.tmax >= self.dt:
            raise ConfigError(f"tmax must be at least dt, got tmax={self.tmax} dt={self.dt}")

    def flag_dict(self) -> dict:
        """Config as flag-spelled keys, suitable for a key=value round trip."""
        return {k.replace("_", "-"): v for k, v in asdict(self).items()}


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def load_config_file(path: str) -> dict:
    """Parse a flat key=value file; '#' starts a comment, unknown keys reject."""
    values: dict = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        name = key.strip().replace("-", "_")
        if name not in _FIELD_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key.strip()!r}")
        value = value.strip()
        if name in ("system", "mode", "out", "format"):
            values[name] = value
        else:
            try:
                values[name] = float(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {key.strip()} needs a number, "
                                  f"got {value!r}") from exc
    return values


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config is not None:
        for name, value in load_config_file(args.config).items():
            setattr(cfg, name, value)
    for f in fields(RunConfig):
        flag_value = getattr(args, f.name, None)
        if flag_value is not None:
            setattr(cfg, f.name, flag_value)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _simulate_trajectory(cfg: RunConfig):
    """Returns (trajectory, closed_form_residual | None)."""
    grid = np.arange(0.0, cfg.tmax + cfg.dt / 2.0, cfg.dt)
    cascade = cfg.mode == "cascade"
    if cfg.system == "cv":
        params = gaussian.GaussianParams(gamma=cfg.gamma, N=cfg.N, N_S=cfg.NS)
        c0 = gaussian.correlated_cov(cfg.NS, cfg.c13, cfg.c24)
        traj = gaussian.simulate_fluxes(c0, params, grid, cascade=cascade)
        closed = None
        if cascade and cfg.c13 == 0.0 and cfg.c24 == 0.0:
            closed = gaussian.closed_flux_trajectory(params, grid, s=0.0)
        elif cascade and cfg.N == 0.0:
            closed = gaussian.closed_flux_trajectory(params, grid, s=cfg.c13 + cfg.c24)
    else:
        params = qubits.QubitParams(gamma=cfg.gamma, xi=cfg.xi, xi_S=cfg.xiS)
        rho0 = qubits.correlated_qubit_state(cfg.xiS, complex(cfg.re_rho23, cfg.im_rho23))
        traj = qubits.simulate_fluxes(rho0, params, grid, cascade=cascade)
        closed = None
        if cascade and cfg.xi == 1.0:
            closed = qubits.closed_flux_trajectory(cfg.xiS, cfg.re_rho23, grid)
    residual = None
    if closed is not None:
        residual = max(float(np.max(np.abs(traj.j1 - closed.j1))),
                       float(np.max(np.abs(traj.j2 - closed.j2))),
                       float(np.max(np.abs(traj.j12 - closed.j12))))
    return traj, residual


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        cfg = _resolve_config(args)
        traj, residual = _simulate_trajectory(cfg)
    except ValueError as exc:  # parameter bounds from the model constructors
        raise ConfigError(str(exc)) from exc
    meta = {
        "config": cfg.flag_dict(),
        "n_samples": len(traj.t),
        "time_unit": "1/gamma",
        "flux_unit": "hbar*omega*gamma",
        "closed_form_residual": residual,
    }
    if cfg.format == "csv":
        traj.write_csv(cfg.out)
        sidecar = cfg.out + ".json"
        with open(sidecar, "w", newline="\n") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {cfg.out} and {sidecar}")
    else:
        payload = json.loads(traj.to_json())
        payload["metadata"] = meta
        with open(cfg.out, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {cfg.out}")
    return 0


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

def _occupation(t_s: float) -> float:
    """Bosonic occupation at temperature t_s in hbar*omega/k_B units."""
    return 1.0 / math.expm1(1.0 / t_s)


def _fig2(outdir: str) -> list[str]:
    """Fluxes for both systems at four source temperatures, reservoir at
    k_B T / (hbar omega) = 1."""
    grid = np.arange(0.0, 10.0 + 0.005, 0.01)
    n_res = _occupation(1.0)
    xi_res = qubits.xi_of_temperature(1.0)
    paths = []
    for t_s in (0.5, 0.75, 1.5, 2.0):
        params = gaussian.GaussianParams(N=n_res, N_S=_occupation(t_s))
        traj = gaussian.simulate_fluxes(gaussian.thermal_cov(params.N_S), params, grid)
        path = os.path.join(outdir, f"fig2_cv_TS{t_s:.2f}.csv")
        traj.write_csv(path)
        paths.append(path)

        qp = qubits.QubitParams(xi=xi_res, xi_S=qubits.xi_of_temperature(t_s))
        traj = qubits.simulate_fluxes(qubits.thermal_qubit_state(qp.xi_S), qp, grid)
        path = os.path.join(outdir, f"fig2_qubit_TS{t_s:.2f}.csv")
        traj.write_csv(path)
        paths.append(path)
    return paths


def _fig3a(outdir: str) -> list[str]:
    """Oscillator fluxes for symmetric initial correlations, N_S=1, N=0."""
    grid = np.arange(0.0, 10.0 + 0.005, 0.01)
    params = gaussian.GaussianParams(N=0.0, N_S=1.0)
    paths = []
    for c in (-0.7, 0.0, 0.7):
        traj = gaussian.simulate_fluxes(gaussian.correlated_cov(1.0, c, c), params, grid)
        path = os.path.join(outdir, f"fig3a_c{c:+.2f}.csv")
        traj.write_csv(path)
        paths.append(path)
    return paths


def _fig3b(outdir: str) -> list[str]:
    """Qubit fluxes for initial coherences at xi_S=0.25, zero-T reservoir."""
    grid = np.arange(0.0, 10.0 + 0.005, 0.01)
    params = qubits.QubitParams(xi=1.0, xi_S=0.25)
    paths = []
    for r in (-0.75, 0.0, 0.75):
        traj = qubits.simulate_fluxes(qubits.correlated_qubit_state(0.25, r), params, grid)
        path = os.path.join(outdir, f"fig3b_r{r:+.2f}.csv")
        traj.write_csv(path)
        paths.append(path)
    return paths


def _correlation_class(s: float, n_points: int = 81):
    """Physical (c13, c24) splits with fixed sum s at N_S = 1."""
    for delta in np.linspace(-2.0, 2.0, n_points):
        c13, c24 = s / 2.0 + delta, s / 2.0 - delta
        try:
            yield gaussian.correlated_cov(1.0, float(c13), float(c24))
        except ValueError:
            continue


def _fig4(outdir: str) -> list[str]:
    """tau_p against the correlation sum, plus the entanglement and discord
    ranges available inside each fixed-sum class."""
    paths = [os.path.join(outdir, "fig4a_taup.csv")]
    analysis.sweep("gaussian", np.linspace(-2.0, 2.0, 41)).write_csv(paths[0])

    rows_en, rows_dg = [], []
    for s in np.linspace(-2.0, 2.0, 41):
        en = [log_negativity(cov) for cov in _correlation_class(float(s))]
        dg = [gaussian_discord(cov) for cov in _correlation_class(float(s))]
        if en:
            rows_en.append((float(s), min(en), max(en)))
            rows_dg.append((float(s), min(dg), max(dg)))
    for path, header, rows in (
        (os.path.join(outdir, "fig4b_logneg.csv"), "s,e_n_min,e_n_max", rows_en),
        (os.path.join(outdir, "fig4c_discord.csv"), "s,d_g_min,d_g_max", rows_dg),
    ):
        with open(path, "w", newline="\n") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join("{:.11e}".format(v) for v in row) + "\n")
        paths.append(path)
    return paths


def _fig5(outdir: str) -> list[str]:
    """Correlation maps: Gaussian discord and log-negativity over (c13, c24)
    at N_S=1, and measurement discord over the initial qubit coherence."""
    grid = np.linspace(-1.45, 1.45, 59)
    rows_dg, rows_en = [], []
    for c13 in grid:
        for c24 in grid:
            try:
                cov = gaussian.correlated_cov(1.0, float(c13), float(c24))
            except ValueError:
                continue
            rows_dg.append((float(c13), float(c24), gaussian_discord(cov)))
            rows_en.append((float(c13), float(c24), log_negativity(cov)))
    paths = [os.path.join(outdir, "fig5a_gaussian_discord.csv"),
             os.path.join(outdir, "fig5b_logneg.csv"),
             os.path.join(outdir, "fig5c_qubit_discord.csv")]
    write_map_csv(paths[0], rows_dg)
    write_map_csv(paths[1], rows_en)

    bound = 1.0 - 0.25 ** 2
    coh = np.linspace(-bound, bound, 21)
    rows_dz = []
    for re in coh:
        for im in coh:
            z = complex(re, im)
            if abs(z) > bound:
                continue
            rho = qubits.correlated_qubit_state(0.25, z)
            rows_dz.append((float(re), float(im),
                            quantum_discord(rho, theta_points=60, phi_points=120)))
    write_map_csv(paths[2], rows_dz)
    return paths


def _fig6(outdir: str) -> list[str]:
    """Qubit tau_p against the initial coherence, and the discord range
    compatible with each real part at xi_S=0.25."""
    paths = [os.path.join(outdir, "fig6a_taup.csv")]
    analysis.sweep("qubit", np.linspace(-1.0, 1.0, 41)).write_csv(paths[0])

    bound = 1.0 - 0.25 ** 2
    rows = []
    for re in np.linspace(-0.9, 0.9, 19):
        vals = []
        for im in np.linspace(-bound, bound, 13):
            z = complex(re, im)
            if abs(z) > bound:
                continue
            vals.append(quantum_discord(qubits.correlated_qubit_state(0.25, z),
                                        theta_points=60, phi_points=120))
        if vals:
            rows.append((float(re), min(vals), max(vals)))
    path = os.path.join(outdir, "fig6b_discord_range.csv")
    with open(path, "w", newline="\n") as fh:
        fh.write("re_rho23,d_z_min,d_z_max\n")
        for row in rows:
            fh.write(",".join("{:.11e}".format(v) for v in row) + "\n")
    paths.append(path)
    return paths


_PRESETS = {"fig2": _fig2, "fig3a": _fig3a, "fig3b": _fig3b,
            "fig4": _fig4, "fig5": _fig5, "fig6": _fig6}


def cmd_figure(args: argparse.Namespace) -> int:
    if args.id not in _PRESETS:
        raise ConfigError(f"unknown figure id {args.id!r}; available presets: "
                          + ", ".join(_FIGURES))
    os.makedirs(args.out, exist_ok=True)
    for path in _PRESETS[args.id](args.out):
        print(f"wrote {path}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    numbers = None
    if args.criteria:
        try:
            numbers = [int(tok) for tok in args.criteria.split(",") if tok.strip()]
        except ValueError as exc:
            raise ConfigError(f"--criteria expects comma-separated integers, "
                              f"got {args.criteria!r}") from exc
    try:
        results = acceptance.run_all(numbers)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for r in results:
        print(r.line)
    report = acceptance.results_to_dict(results)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if not report["failed"] else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cascade-thermo",
        description="Heat-flux dynamics of a cascaded pair of quantum systems "
                    "in a common thermal reservoir.")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="propagate one trajectory and write flux data")
    sim.add_argument("--config", help="flat key=value config file; flags override")
    sim.add_argument("--system", choices=("cv", "qubit"))
    sim.add_argument("--mode", choices=("cascade", "independent"))
    for flag in ("--gamma", "--N", "--NS", "--xi", "--xiS", "--c13", "--c24",
                 "--re-rho23", "--im-rho23", "--tmax", "--dt"):
        sim.add_argument(flag, type=float)
    sim.add_argument("--out")
    sim.add_argument("--format", choices=("csv", "json"))
    sim.set_defaults(func=cmd_simulate)

    fig = sub.add_parser("figure", help="write plot-ready CSV data for one figure preset")
    fig.add_argument("id", help="one of: " + ", ".join(_FIGURES))
    fig.add_argument("--out", default="figures", help="output directory (default: figures)")
    fig.set_defaults(func=cmd_figure)

    ver = sub.add_parser("verify", help="run the verification criteria and report pass/fail")
    ver.add_argument("--criteria", help="comma-separated criterion numbers (default: all)")
    ver.add_argument("--out", help="write the JSON report here instead of stdout")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (analysis.InsufficientTailError, RuntimeError, FloatingPointError,
            np.linalg.LinAlgError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
