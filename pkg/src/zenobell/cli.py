"""Scenario runner: dispatch protocols and sweeps, emit CSV and summaries.

Subcommands:

    zenobell run CONFIG [--out DIR] [--seed N] [--threads N] [--quiet]
    zenobell figure {fig2,fig4,fig5,islands} [--out DIR] [--threads N] [--quiet]
    zenobell selftest [--quiet]

CSV output is deterministic (bit-identical for identical config and
seed): header row, '\\n' line endings, floats printed with 9 significant
digits, booleans as true/false.  Exit codes: 0 ok, 1 config error,
2 numeric failure, 3 I/O failure.  Regime warnings are printed but do
not change the exit code.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import bell, gates, pbg, states, trajectories
from .config import ConfigError, ScenarioConfig, parse_config
from .dynamics import SystemSpec, check_regime, evolve_no_jump, h_cond_two_level, no_photon_probability
from .hilbert import OperatorMatrix, basis_state, compose, ladder

__all__ = ["main", "run_scenario", "render_csv", "NumericalError"]


class NumericalError(RuntimeError):
    """Norm blow-up or other numeric inconsistency during a run."""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return f"{value:.9g}"
    return str(value)


def render_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _check_probability(p: float, what: str) -> float:
    if not math.isfinite(p) or p < -1e-9 or p > 1.0 + 1e-9:
        raise NumericalError(f"{what} = {p} outside [0, 1]; evolution is numerically unsound")
    return p


def _pmap(func, items, threads: int):
    items = list(items)
    if threads == 0:
        threads = min(8, os.cpu_count() or 1)
    if threads <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    # order-preserving map keeps the CSV deterministic
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _regime_lines(spec: SystemSpec, omegas) -> list[str]:
    lines = []
    for om in omegas:
        rep = check_regime(spec, abs(om))
        ratios = ", ".join(f"{k}={v:.4g}" for k, v in rep.ratios.items())
        lines.append(f"regime omega={om:.9g}: in_regime={rep.in_regime} ({ratios})")
    return lines


def _run_prepare_pair(cfg: ScenarioConfig, threads: int):
    p = cfg.physics
    spec = SystemSpec(atom_levels=2, n_atoms=2, g=p["g"], kappa=p["kappa"], gamma=p["gamma"], n_max=p["n_max"])
    points = []
    for om in p["omega_values"]:
        t_values = p["t_values"] if p["t_values"] is not None else [math.pi / abs(om)]
        points.extend((om, t) for t in t_values)

    def one(point):
        om, t = point
        rec = gates.prepare_pair(spec, om, t)
        _check_probability(rec.p0, "p0")
        return (om, t, rec.p0, rec.fidelity, rec.alpha.real, rec.alpha.imag)

    # regime trouble is surfaced once in the summary, not per grid point
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = _pmap(one, points, threads)
    header = ("omega_minus", "T", "p0", "fidelity", "alpha_re", "alpha_im")
    summary = _regime_lines(spec, p["omega_values"])
    best = max(rows, key=lambda r: r[3])
    summary.append(f"best fidelity = {best[3]:.6f} at omega_minus={best[0]:.9g}, T={best[1]:.9g} (p0={best[2]:.6f})")
    summary.append(f"last row: p0 = {rows[-1][2]:.6f}, fidelity = {rows[-1][3]:.6f}")
    return header, rows, summary


def _run_cnot(cfg: ScenarioConfig, threads: int):
    p = cfg.physics
    spec = SystemSpec(atom_levels=3, n_atoms=2, g=p["g"], kappa=p["kappa"], gamma=p["gamma"], n_max=p["n_max"])
    labels = gates.QUBIT_LABELS if p["input"] == "all" else (p["input"],)
    points = [(om, lab) for om in p["omega_values"] for lab in labels]

    def one(point):
        om, lab = point
        rec = gates.cnot_pulse(spec, om, gates.qubit_state(spec, lab))
        _check_probability(rec.p0, "p0")
        return (om, lab, rec.p0, rec.fidelity)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = _pmap(one, points, threads)
    header = ("omega", "input_label", "p0", "fidelity")
    summary = _regime_lines(spec, p["omega_values"])
    worst = min(rows, key=lambda r: r[3])
    summary.append(f"worst fidelity = {worst[3]:.6f} (omega={worst[0]:.9g}, input={worst[1]})")
    return header, rows, summary


def _run_pbg(cfg: ScenarioConfig, threads: int):
    p = cfg.physics
    g, loss = p["g"], p["loss"]
    target = pbg.bell_target()
    points = [(gt1, gt2) for gt1 in p["gt1_values"] for gt2 in p["gt2_values"]]

    def one(point):
        gt1, gt2 = point
        psi = pbg.pbg_final_state(pbg.TransitPlan(g, gt1 / g, gt2 / g), loss)
        overlap = abs(np.vdot(target.amplitudes, psi.amplitudes)) ** 2
        norm_sq = psi.norm() ** 2
        fid = overlap / norm_sq if norm_sq > 0 else 0.0
        return (gt1, gt2, fid)

    rows = _pmap(one, points, threads)
    header = ("g_t1", "g_t2", "bell_fidelity")
    best = max(rows, key=lambda r: r[2])
    plan = pbg.pbg_optimal_times(g)
    summary = [
        f"best grid fidelity = {best[2]:.9f} at (g_t1, g_t2) = ({best[0]:.9g}, {best[1]:.9g})",
        f"optimal plan: g_t1 = {plan.g * plan.t1:.9g}, g_t2 = {plan.g * plan.t2:.9g}",
    ]
    return header, rows, summary


def _run_bell_landscape(cfg: ScenarioConfig, threads: int):
    p = cfg.physics
    header = ("omega_T", "vartheta", "b_s", "violated")
    if cfg.shots is None:
        rows = bell.bs_landscape(p["omega_t_values"], p["vartheta_values"])
    else:
        points = [
            (k, om_t, v)
            for k, (om_t, v) in enumerate(
                (om_t, v) for om_t in p["omega_t_values"] for v in p["vartheta_values"]
            )
        ]

        def one(point):
            k, om_t, v = point
            state = bell.landscape_state(om_t)
            # one derived seed per row so that rows are independent streams
            e1, _ = bell.sample_correlation(state, 0, 1, v, 0.0, cfg.shots, cfg.seed + 2 * k, p["readout_error"])
            e3, _ = bell.sample_correlation(state, 0, 1, 3 * v, 0.0, cfg.shots, cfg.seed + 2 * k + 1, p["readout_error"])
            b = abs(3.0 * e1 - e3)
            return (om_t, v, b, b > bell.CLASSICAL_BOUND)

        rows = _pmap(one, points, threads)
    best = max(rows, key=lambda r: r[2])
    summary = [
        f"max |B_S| = {best[2]:.9g} at omega_T = {best[0]:.9g}, vartheta = {best[1]:.9g}"
        f" (violated = {_fmt(best[3])})",
        f"violation rows: {sum(1 for r in rows if r[3])} of {len(rows)}",
    ]
    return header, rows, summary


def _run_mermin(cfg: ScenarioConfig, threads: int):
    p = cfg.physics

    def one(n):
        if p["state"] == "ghz":
            psi = states.ghz_state(n, p["ghz_phase"])
        else:
            psi = basis_state(states.qubit_layout(n), (0,) * n)
        res = bell.mermin_n(psi)
        return (n, res.value, res.classical_bound, res.quantum_bound)

    rows = _pmap(one, p["n_values"], threads)
    header = ("n_qubits", "f_value", "classical_bound", "quantum_bound")
    summary = [f"state = {p['state']}"]
    for n, value, classical, _quantum in rows:
        summary.append(f"n = {n}: F = {value:.6f} (classical bound {classical:g})")
    return header, rows, summary


def _run_trajectories(cfg: ScenarioConfig, threads: int):
    p = cfg.physics
    if p["system"] == "pair":
        spec = SystemSpec(atom_levels=2, n_atoms=2, g=p["g"], kappa=p["kappa"], gamma=p["gamma"], n_max=p["n_max"])
        om = p["omega_minus"]
        s2 = math.sqrt(2.0)
        run_spec = spec.with_rabi({(1, "0-1"): om / s2, (2, "0-1"): -om / s2})
        h = h_cond_two_level(run_spec)
        psi0 = basis_state(run_spec.layout(), (0, 0, 0))
        jump_ops = trajectories.decay_operators(run_spec)
        default_t = math.pi / abs(om)
        summary = _regime_lines(run_spec, [om])
    else:
        layout = compose([("cav", p["n_max"] + 1)])
        b = ladder(p["n_max"] + 1)
        h = OperatorMatrix(layout, -1j * p["kappa"] * (b.conj().T @ b))
        psi0 = basis_state(layout, (1,))
        jump_ops = [OperatorMatrix(layout, math.sqrt(2.0 * p["kappa"]) * b)]
        default_t = 1.0 / p["kappa"] if p["kappa"] > 0 else 1.0
        summary = []

    t_values = p["t_end_values"] or [default_t]
    rows = []
    for k, t_end in enumerate(t_values):
        p0_det = _check_probability(no_photon_probability(h, psi0, t_end), "p0")
        try:
            batch = trajectories.run_trajectories(
                h, jump_ops, psi0, t_end, p["n_traj"], cfg.seed + k, dt=p["dt"]
            )
        except ValueError as exc:  # bad dt / seed from the config
            raise ConfigError(str(exc)) from exc
        rows.append((t_end, p0_det, batch.p0_estimate, batch.p0_stderr))
        summary.append(
            f"t_end = {t_end:.9g}: p0_det = {p0_det:.6f}, p0_mc = {batch.p0_estimate:.6f}"
            f" +- {batch.p0_stderr:.6f} (n_traj = {batch.n_traj}, dt = {batch.dt:.3g})"
        )
    header = ("t_end", "p0_det", "p0_mc", "stderr")
    return header, rows, summary


_RUNNERS = {
    "prepare_pair": _run_prepare_pair,
    "cnot": _run_cnot,
    "pbg": _run_pbg,
    "bell_landscape": _run_bell_landscape,
    "mermin": _run_mermin,
    "trajectories": _run_trajectories,
}


def run_scenario(cfg: ScenarioConfig, out_dir: str = ".", threads: int = 1, quiet: bool = False) -> Path:
    """Execute a scenario, write its CSV and summary, return the CSV path."""
    header, rows, summary = _RUNNERS[cfg.scenario](cfg, threads)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / (cfg.out if cfg.out else f"{cfg.scenario}.csv")
    csv_path.write_text(render_csv(header, rows), newline="")

    lines = [f"scenario = {cfg.scenario}"]
    for key, value in sorted(cfg.physics.items()):
        lines.append(f"{key} = {value}")
    if cfg.seed is not None:
        lines.append(f"seed = {cfg.seed}")
    if cfg.shots is not None:
        lines.append(f"shots = {cfg.shots}")
    lines.append(f"rows = {len(rows)}")
    lines.extend(summary)
    text = "\n".join(lines) + "\n"
    summary_path = csv_path.with_name(csv_path.stem + "_summary.txt")
    summary_path.write_text(text)
    if not quiet:
        sys.stdout.write(text)
        sys.stdout.write(f"wrote {csv_path}\n")
    return csv_path


# Baked-in figure sweeps: kappa = g = 1, logarithmic Rabi-frequency axis,
# one curve per spontaneous-emission rate.
_FIGURE_GAMMAS = (0.0, 0.01, 0.1)
_FIGURE_OMEGAS = [float(f"{w:.9g}") for w in np.logspace(math.log10(0.005), math.log10(0.5), 25)]


def _figure_rows(which: str, threads: int):
    if which == "islands":
        grid_t = [k * 2.0 * math.pi / 100 for k in range(101)]
        grid_v = [k * math.pi / 100 for k in range(101)]
        return ("omega_T", "vartheta", "b_s", "violated"), bell.bs_landscape(grid_t, grid_v)

    points = [(gam, om) for gam in _FIGURE_GAMMAS for om in _FIGURE_OMEGAS]
    if which == "fig2":

        def one(point):
            gam, om = point
            s = SystemSpec(atom_levels=2, n_atoms=2, g=1.0, kappa=1.0, gamma=gam, n_max=2)
            rec = gates.prepare_pair(s, om, math.pi / om)
            return (gam, om, rec.duration, rec.p0, rec.fidelity, rec.alpha.real, rec.alpha.imag)

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rows = _pmap(one, points, threads)
        return ("gamma", "omega_minus", "T", "p0", "fidelity", "alpha_re", "alpha_im"), rows

    # fig4 (no-photon probability) and fig5 (fidelity) for the CNOT on |10>
    def one(point):
        gam, om = point
        s = SystemSpec(atom_levels=3, n_atoms=2, g=1.0, kappa=1.0, gamma=gam, n_max=2)
        rec = gates.cnot_pulse(s, om, gates.qubit_state(s, "10"))
        return (gam, om, rec.duration, rec.p0, rec.fidelity)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rows = _pmap(one, points, threads)
    if which == "fig4":
        return ("gamma", "omega", "T", "p0"), [r[:4] for r in rows]
    return ("gamma", "omega", "T", "fidelity"), [(r[0], r[1], r[2], r[4]) for r in rows]


def run_figure(which: str, out_dir: str = ".", threads: int = 1, quiet: bool = False) -> Path:
    header, rows = _figure_rows(which, threads)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{which}.csv"
    path.write_text(render_csv(header, rows), newline="")
    if not quiet:
        sys.stdout.write(f"wrote {path} ({len(rows)} rows)\n")
    return path


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zenobell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario from a config file")
    p_run.add_argument("config_path", nargs="?", help="path to the config file")
    p_run.add_argument("--config", dest="config_flag", metavar="PATH", help="alternative to the positional path")
    p_run.add_argument("--out", default=".", metavar="DIR", help="output directory")
    p_run.add_argument("--seed", type=int, default=None, metavar="N", help="override the config seed")
    p_run.add_argument("--threads", type=int, default=0, metavar="N", help="sweep worker threads (0 = auto)")
    p_run.add_argument("--quiet", action="store_true")

    p_fig = sub.add_parser("figure", help="reproduce a figure data table with baked-in defaults")
    p_fig.add_argument("name", choices=("fig2", "fig4", "fig5", "islands"))
    p_fig.add_argument("--out", default=".", metavar="DIR")
    p_fig.add_argument("--threads", type=int, default=0, metavar="N")
    p_fig.add_argument("--quiet", action="store_true")

    p_self = sub.add_parser("selftest", help="run the invariant suite")
    p_self.add_argument("--quiet", action="store_true")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            path = args.config_path or args.config_flag
            if not path:
                raise ConfigError("no config file given (positional path or --config)")
            try:
                text = Path(path).read_text()
            except OSError as exc:
                sys.stderr.write(f"error: cannot read config: {exc}\n")
                return 3
            cfg = parse_config(text)
            if args.seed is not None:
                if args.seed < 0:
                    raise ConfigError(f"seed must be >= 0, got {args.seed}")
                cfg.seed = args.seed
            run_scenario(cfg, out_dir=args.out, threads=args.threads, quiet=args.quiet)
            return 0
        if args.command == "figure":
            run_figure(args.name, out_dir=args.out, threads=args.threads, quiet=args.quiet)
            return 0
        from .selftest import run_selftest

        return 0 if run_selftest(quiet=args.quiet) else 2
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 1
    except NumericalError as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o failure: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
