"""Experiment execution: sweeps, worker pool, deterministic CSV output.

Work items (one per chain size, or per link for potential scans) are
independent; with jobs > 1 they run on a thread pool (the eigensolver kernel
releases the GIL).  Results are collected, ordered by primary key and written
in one pass, so parallel runs are byte-identical to serial ones.  Floats are
printed with 12 significant digits, LF line endings, comma separators.
Failed runs leave no partial output behind.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Sequence

import numpy as np

from . import entanglement as ent
from .casimir import casimir_force, force_prediction, hellmann_feynman_estimate, potential_scan
from .config import ExperimentConfig
from .errors import ConfigError
from .fitting import fit_flat_cardy, fit_curved_cardy
from .metrics import HoppingProfile, MetricKind, build_profile, log_derivative
from .tridiag import eigendecompose, hopping_matrix
from .vacuum import correlation_matrix, ground_energy, ground_state

__all__ = ["run_experiment", "write_csv", "read_csv"]

ENERGY_COLUMNS = ["N", "E_N", "S_N", "J_1", "J_Nm1", "Ntilde"]
FORCE_COLUMNS = ["N", "E_N", "F_N", "F_pred_eq19", "F_pred_eq20", "J_N", "dlogJ"]
ENTROPY_COLUMNS = ["N", "ell", "S_exact", "S_cft", "residual"]
SPECTRUM_COLUMNS = ["N", "k", "epsilon"]
POTENTIAL_COLUMNS = ["N", "gamma", "p", "J_p", "V_exact", "V_first_order"]


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write rows atomically (tmp file + rename); no partial files on error."""
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def read_csv(path: str):
    """Read a CSV produced by this module: (header, list of float rows)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader if row]
    return header, rows


def _map_jobs(fn, items, jobs):
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _run_spectrum(cfg: ExperimentConfig, jobs: int) -> List[Sequence]:
    def one(N):
        profile = build_profile(cfg.metric, N)
        spec = eigendecompose(hopping_matrix(profile), vectors=False)
        return [(N, k + 1, spec.eigenvalues[k]) for k in range(N)]

    rows = []
    for chunk in _map_jobs(one, cfg.N_list, jobs):
        rows.extend(chunk)
    return rows


def _run_energy(cfg: ExperimentConfig, jobs: int) -> List[Sequence]:
    def one(N):
        profile = build_profile(cfg.metric, N)
        E = ground_energy(profile)
        return (N, E, profile.S_N, profile.J[0], profile.J[-1], profile.Ntilde)

    return _map_jobs(one, cfg.N_list, jobs)


def _entropy_prediction(cfg: ExperimentConfig, profile: HoppingProfile, ells):
    if cfg.metric.kind is MetricKind.MINKOWSKI:
        return ent.cft_entropy_flat(profile.N, ells)
    return ent.cft_entropy_deformed(profile, ells)


def _run_entropy(cfg: ExperimentConfig, jobs: int) -> List[Sequence]:
    def one(N):
        profile, _, C = ground_state(cfg.metric, N)
        S = ent.entropy_profile(C).S
        ells = np.arange(1, N)
        pred = _entropy_prediction(cfg, profile, ells)
        const = ent.fit_additive_constant(S, pred)
        pred = pred + const
        return [(N, int(l), S[l - 1], pred[l - 1], S[l - 1] - pred[l - 1]) for l in ells]

    rows = []
    for chunk in _map_jobs(one, cfg.N_list, jobs):
        rows.extend(chunk)
    return rows


def _run_potential(cfg: ExperimentConfig, jobs: int) -> List[Sequence]:
    rows = []
    for N in cfg.N_list:
        profile, _, C = ground_state(cfg.metric, N)
        for gamma in cfg.gamma_list:
            scan = potential_scan(cfg.metric, N, gamma, jobs=jobs)
            for p in range(1, N):
                rows.append(
                    (
                        N,
                        gamma,
                        p,
                        profile.J[p - 1],
                        scan.V[p - 1],
                        hellmann_feynman_estimate(profile, C, p, gamma),
                    )
                )
    return rows


def _run_force(cfg: ExperimentConfig, jobs: int) -> List[Sequence]:
    def one(N):
        rec = casimir_force(cfg.metric, N)
        return (
            N,
            rec.E_N,
            rec.F_N,
            force_prediction(cfg.metric, N, variant="eq19"),
            force_prediction(cfg.metric, N, variant="eq20"),
            cfg.metric.hopping(float(N), N),
            log_derivative(cfg.metric, float(N)),
        )

    return _map_jobs(one, cfg.N_list, jobs)


def _fit_report(cfg: ExperimentConfig) -> List[str]:
    header, rows = read_csv(cfg.input_path)
    if header != ENERGY_COLUMNS:
        raise ConfigError(
            f"fit input must be an energy sweep CSV with columns {ENERGY_COLUMNS}, "
            f"got {header}"
        )
    Ns = [int(r[0]) for r in rows]
    Es = [r[1] for r in rows]
    flat = fit_flat_cardy(zip(Ns, Es))
    profiles = [build_profile(cfg.metric, n) for n in Ns]
    curved = fit_curved_cardy(list(zip(profiles, Es)))
    lines = [f"n_points = {flat.n_points}", f"parity_mode = {flat.parity_mode}"]
    for tag, res in (("flat", flat), ("curved", curved)):
        lines.append(f"{tag}.c0 = {_fmt(res.c0)}")
        lines.append(f"{tag}.cB = {_fmt(res.cB)}")
        lines.append(f"{tag}.cvF = {_fmt(res.cvF)}")
        lines.append(f"{tag}.residual_rms = {_fmt(res.residual_rms)}")
    return lines


_RUNNERS = {
    "spectrum": (_run_spectrum, SPECTRUM_COLUMNS),
    "energy_sweep": (_run_energy, ENERGY_COLUMNS),
    "entropy_profile": (_run_entropy, ENTROPY_COLUMNS),
    "potential_scan": (_run_potential, POTENTIAL_COLUMNS),
    "force_sweep": (_run_force, FORCE_COLUMNS),
}

_DEFAULT_OUTPUT = {
    "spectrum": "spectrum.csv",
    "energy_sweep": "energy.csv",
    "entropy_profile": "entropy.csv",
    "potential_scan": "potential.csv",
    "force_sweep": "force.csv",
    "fit": "fit_report.txt",
}


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> str:
    """Run one experiment and write its output file; returns the path."""
    out = cfg.output_path or _DEFAULT_OUTPUT[cfg.experiment]
    if cfg.experiment == "fit":
        lines = _fit_report(cfg)
        tmp = out + ".tmp"
        try:
            with open(tmp, "w", newline="\n") as fh:
                fh.write("\n".join(lines) + "\n")
            os.replace(tmp, out)
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        return out
    runner, columns = _RUNNERS[cfg.experiment]
    rows = runner(cfg, jobs)
    rows.sort(key=lambda r: tuple(r[:3]))
    write_csv(out, columns, rows)
    return out
