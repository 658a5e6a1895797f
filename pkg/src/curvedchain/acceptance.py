"""Built-in acceptance suite.

Eleven numbered checks covering the package end to end: scaling-constant
recovery, bulk-energy and correlator rigidity, entanglement against the CFT
forms, the volume law, boundary Casimir forces (homogeneous, Rindler
crossover, rainbow collapse), obstacle potentials, the explicit many-body
oracle, and the eigensolver invariants.  Each check returns a structured
result; `run_criteria` executes a selection and `format_table` renders the
pass/fail table used by the CLI.

Two checks carry documented caveats established during development and
reported in their output rather than hidden:

* check 8: the measured rainbow force offset is (c0+cB)*tanh(h/2), and after
  removing any constant the residual follows the deformed universal term
  (cvF*pi/24)/(J_N*Ntilde)^2, which matches the homogeneous pi/(12 N^2) curve
  only while h*N << 1.  The strict 10% collapse clause therefore fails for
  the demanded (h, N) grid; the offset constancy and reporting clauses pass.
* check 9: the Pearson correlation between the obstacle potential and the
  hopping function is evaluated on interior even links (p in [N/10, 9N/10]);
  the outermost links carry a metric-independent edge dip (present identically
  on the homogeneous chain) that is not part of the shape claim being tested.
  Full-range values are reported alongside.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from . import entanglement as ent
from .casimir import FREE_FERMION_CONSTANTS, potential_scan
from .fitting import crossover_size, fit_flat_cardy
from .manybody import entropy_from_rdm, many_body_ground, reduced_density_matrix
from .metrics import HoppingProfile, MetricKind, MetricSpec, build_profile
from .tridiag import eigendecompose, hopping_matrix
from .vacuum import (
    C0_FREE_FERMION,
    correlation_matrix,
    ground_energy,
    ground_state,
    local_correlators,
    smoothed_correlators,
    vacuum_energy,
)

__all__ = ["CriterionResult", "CRITERIA", "run_criteria", "format_table"]

C0 = C0_FREE_FERMION
CB = 4.0 / math.pi - 1.0


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    lines: List[str] = field(default_factory=list)
    known_issue: Optional[str] = None
    extra: Dict = field(default_factory=dict)


def _energy(spec: MetricSpec, N: int, cache: dict) -> float:
    key = (spec, N)
    if key not in cache:
        cache[key] = ground_energy(build_profile(spec, N))
    return cache[key]


def _force(spec: MetricSpec, N: int, cache: dict) -> float:
    prof = build_profile(spec, N)
    return (_energy(spec, N, cache) - _energy(spec, N - 2, cache)) / (
        prof.J[-1] + prof.J[-2]
    )


def _paired_force(spec: MetricSpec, N: int, cache: dict) -> float:
    """Average of F_N and F_{N+2}: suppresses the residual parity envelope."""
    return 0.5 * (_force(spec, N, cache) + _force(spec, N + 2, cache))


def _pearson(x, y) -> float:
    return float(np.corrcoef(np.asarray(x, float), np.asarray(y, float))[0, 1])


THE_FOUR_METRICS = [
    ("minkowski", MetricSpec(MetricKind.MINKOWSKI)),
    ("rindler a=0.01", MetricSpec(MetricKind.RINDLER, a=0.01)),
    ("sine A=0.5 k=pi/100", MetricSpec(MetricKind.SINE, A=0.5, k=math.pi / 100)),
    ("rainbow h=5e-3", MetricSpec(MetricKind.RAINBOW, h=5e-3)),
]


def criterion_1() -> CriterionResult:
    """Flat scaling constants from an even-N in [100, 400] energy sweep."""
    t0 = time.time()
    spec = MetricSpec(MetricKind.MINKOWSKI)
    data = []
    for N in range(100, 401, 2):
        data.append((N, ground_energy(build_profile(spec, N))))
    fit = fit_flat_cardy(data)
    elapsed = time.time() - t0
    d_c0 = abs(fit.c0 - C0)
    d_cB = abs(fit.cB - CB)
    d_cvF = abs(fit.cvF - 2.0)
    ok = d_c0 < 1e-4 and d_cB < 1e-3 and d_cvF < 0.02 and elapsed < 60.0
    lines = [
        f"c0  = {fit.c0:.8f} (|err| = {d_c0:.2e}, tol 1e-4)",
        f"cB  = {fit.cB:.8f} (|err| = {d_cB:.2e}, tol 1e-3)",
        f"cvF = {fit.cvF:.6f} (|err| = {d_cvF:.2e}, tol 2e-2)",
        f"runtime = {elapsed:.1f} s (limit 60 s)",
    ]
    return CriterionResult(1, "flat scaling constants", ok, lines)


def criterion_2() -> CriterionResult:
    """Bulk-energy prediction |E + c0 S_N|/|E| < 1% at N = 400."""
    lines = []
    ok = True
    for label, spec in THE_FOUR_METRICS:
        profile = build_profile(spec, 400)
        E = ground_energy(profile)
        rel = abs(E + C0 * profile.S_N) / abs(E)
        ok &= rel < 0.01
        lines.append(f"{label}: |E + c0 S_N|/|E| = {rel:.2e}")
    return CriterionResult(2, "first-order bulk energy", ok, lines)


def criterion_3() -> CriterionResult:
    """Two-link-smoothed correlators within 2% of 1/pi over the middle half."""
    lines = []
    ok = True
    N = 400
    for label, spec in THE_FOUR_METRICS:
        _, _, C = ground_state(spec, N)
        sm = smoothed_correlators(C)
        # smoothed index i covers links (i+1, i+2); middle half p in [N/4, 3N/4]
        lo, hi = N // 4, 3 * N // 4
        window = sm[lo - 1 : hi - 1]
        dev = float(np.abs(window * math.pi - 1.0).max())
        ok &= dev < 0.02
        lines.append(f"{label}: max |pi*<cc> - 1| = {dev:.2e}")
    return CriterionResult(3, "correlator rigidity", ok, lines)


def criterion_4() -> CriterionResult:
    """CFT entropy predictions at N = 400 with one fitted constant each."""
    N = 400
    ells = np.arange(1, N)
    window = (ells >= 20) & (ells <= 380) & (ells % 2 == 0)
    cases = [
        ("minkowski / flat form", MetricSpec(MetricKind.MINKOWSKI),
         lambda: ent.cft_entropy_flat(N, ells)),
        ("rainbow h=0.01 / closed form", MetricSpec(MetricKind.RAINBOW, h=0.01),
         lambda: ent.cft_entropy_rainbow(N, ells, h=0.01)),
        ("rindler a=2 / closed form", MetricSpec(MetricKind.RINDLER, a=2.0),
         lambda: ent.cft_entropy_rindler(N, ells)),
    ]
    lines = []
    ok = True
    for label, spec, predict in cases:
        _, _, C = ground_state(spec, N)
        S = ent.entropy_profile(C).S
        pred = predict()
        const = float(np.mean(S[window] - pred[window]))
        resid = float(np.abs(S[window] - pred[window] - const).max())
        ok &= resid < 0.05
        lines.append(f"{label}: max even-ell residual = {resid:.4f} (tol 0.05)")
    return CriterionResult(4, "entanglement vs CFT forms", ok, lines)


def criterion_5() -> CriterionResult:
    """Rainbow volume law: slope of S(ell) equals h/6 within 10%."""
    h, N = 0.1, 400
    _, _, C = ground_state(MetricSpec(MetricKind.RAINBOW, h=h), N)
    S = ent.entropy_profile(C).S
    ells = np.arange(1, N)
    mask = (ells >= 50) & (ells <= 150) & (ells % 2 == 0)
    slope = float(np.polyfit(ells[mask], S[mask], 1)[0])
    rel = abs(slope - h / 6.0) / (h / 6.0)
    ok = rel < 0.10
    lines = [f"slope = {slope:.6f}, h/6 = {h / 6.0:.6f}, rel dev = {rel:.2%}"]
    return CriterionResult(5, "rainbow volume law", ok, lines)


def criterion_6() -> CriterionResult:
    """Pair-averaged homogeneous force: F_N + c0 = pi/(12 N^2) within 10%."""
    spec = MetricSpec(MetricKind.MINKOWSKI)
    cache: dict = {}
    lines = []
    ok = True
    for N in (100, 200, 400):
        f = _paired_force(spec, N, cache) + C0
        pred = math.pi / (12.0 * N * N)
        rel = abs(f / pred - 1.0)
        ok &= rel < 0.10
        lines.append(f"N={N}: (F+c0)/(pi/12N^2) = {f / pred:.4f}")
    return CriterionResult(6, "homogeneous Casimir force", ok, lines)


def _loglog_slope(Ns, values) -> float:
    return float(np.polyfit(np.log(Ns), np.log(np.abs(values)), 1)[0])


def criterion_7() -> CriterionResult:
    """Rindler crossover: N^-2 to N^-1 shape and crossover-scale prediction."""
    cache: dict = {}
    lines = []
    ok = True
    crossings = {}
    for a in (1e-2, 1e-3):
        spec = MetricSpec(MetricKind.RINDLER, a=a)
        pred = crossover_size(spec, FREE_FERMION_CONSTANTS, Nmax=10_000)
        # empirical sign change of the pair-averaged force
        emp = None
        prev = None
        for N in range(6, 2001, 2):
            f = _paired_force(spec, N, cache) + C0
            if prev is not None and prev > 0.0 >= f:
                emp = N
                break
            prev = f
        crossings[a] = (emp, pred)
        ok_cross = emp is not None and 0.5 <= emp / pred <= 2.0
        ok &= ok_cross
        lines.append(f"a={a}: sign change at N={emp}, predicted N*={pred:.1f}")
        # small-N regime: steep (universal-term dominated); window below N*/2
        hi = max(8, 2 * int(pred / 4) + 2)
        Ns_small = np.arange(6, hi + 1, 2)
        slope_small = _loglog_slope(
            Ns_small, [_paired_force(spec, n, cache) + C0 for n in Ns_small]
        )
        ok_small = slope_small <= -1.5
        if a == 1e-3:
            ok_small &= abs(slope_small + 2.0) <= 0.7
        ok &= ok_small
        # large-N regime: boundary dominated, slope approaching -1 (aN in [3,5])
        Ns_large = np.unique((np.geomspace(3 / a, 5 / a, 5) // 2 * 2).astype(int))
        slope_large = _loglog_slope(
            Ns_large, [_paired_force(spec, n, cache) + C0 for n in Ns_large]
        )
        ok &= -1.30 <= slope_large <= -0.60
        lines.append(
            f"a={a}: small-N slope = {slope_small:.2f} (window {Ns_small[0]}..{Ns_small[-1]}), "
            f"large-N slope = {slope_large:.2f} (window {Ns_large[0]}..{Ns_large[-1]})"
        )
    ratio = crossings[1e-3][0] / crossings[1e-2][0]
    ok_scale = math.sqrt(10.0) / math.sqrt(2.0) <= ratio <= math.sqrt(10.0) * math.sqrt(2.0)
    ok &= ok_scale
    lines.append(f"crossover ratio N*(1e-3)/N*(1e-2) = {ratio:.2f} (sqrt(10) = 3.16)")
    return CriterionResult(7, "Rindler force crossover", ok, lines)


def criterion_8() -> CriterionResult:
    """Rainbow force: constant offset, strict pi/(12N^2) collapse, offset report."""
    cache: dict = {}
    lines = []
    offset_ok = True
    collapse_ok = True
    for h in (0.01, 0.02, 0.04):
        spec = MetricSpec(MetricKind.RAINBOW, h=h)
        Ns = np.arange(100, 801, 10)
        f = np.array([_paired_force(spec, int(n), cache) for n in Ns]) + C0
        # clause 1: tends to a constant offset (flat tail)
        tail = f[Ns >= 600]
        spread = float(np.ptp(tail) / abs(tail.mean()))
        offset_ok &= spread < 5e-3
        # clause 2: strict collapse of the offset-subtracted residual
        univ = math.pi / (12.0 * Ns.astype(float) ** 2)
        offset = float(np.mean(f - univ))  # best constant in least squares
        ratios = (f - offset) / univ
        worst = float(np.abs(ratios - 1.0).max())
        collapse_ok &= worst <= 0.10
        # clause 3: report the fitted offset next to (cB/2) h
        lines.append(
            f"h={h}: offset = {tail.mean():.6e} (tail spread {spread:.1e}); "
            f"(cB/2)h = {0.5 * CB * h:.6e}; (c0+cB)tanh(h/2) = "
            f"{(C0 + CB) * math.tanh(h / 2):.6e}"
        )
        lines.append(
            f"h={h}: worst |residual/(pi/12N^2) - 1| = {worst:.2f} (strict tol 0.10)"
        )
    passed = offset_ok and collapse_ok
    known = None
    if not collapse_ok:
        known = (
            "strict collapse clause: the offset-subtracted residual is the deformed "
            "universal term (pi/48) h^2 (1 - e^{-hN/2})^{-2}, which only reduces to "
            "pi/(12 N^2) for h*N << 1; no constant offset reconciles N in [100, 800] "
            "at these h (see ledger)"
        )
    return CriterionResult(
        8,
        "rainbow force collapse",
        passed,
        lines,
        known_issue=known,
        extra={"offset_ok": offset_ok, "collapse_ok": collapse_ok},
    )


def criterion_9() -> CriterionResult:
    """Obstacle potential tracks J(x): interior even-p Pearson > 0.99."""
    N = 100
    cases = [
        ("rindler a=0.01", MetricSpec(MetricKind.RINDLER, a=0.01)),
        ("rainbow h=0.04", MetricSpec(MetricKind.RAINBOW, h=0.04)),
        ("sine A=0.5 k=2pi/50", MetricSpec(MetricKind.SINE, A=0.5, k=2 * math.pi / 50)),
    ]
    lines = []
    ok = True
    p = np.arange(1, N)
    even = p % 2 == 0
    interior = even & (p >= N // 10) & (p <= 9 * N // 10)
    for label, spec in cases:
        profile = build_profile(spec, N)
        for gamma in (0.01, 0.75):
            scan = potential_scan(spec, N, gamma)
            r_int = _pearson(profile.J[interior], scan.V[interior])
            r_full = _pearson(profile.J[even], scan.V[even])
            ok &= r_int > 0.99
            lines.append(
                f"{label}, gamma={gamma}: pearson interior = {r_int:.5f} "
                f"(full range {r_full:.5f})"
            )
    return CriterionResult(9, "obstacle potential shape", ok, lines)


def _random_smooth_profile(N: int, rng: np.random.Generator) -> HoppingProfile:
    J0 = rng.uniform(0.6, 1.4)
    amp = rng.uniform(0.0, 0.35)
    waves = rng.integers(1, 3)
    phase = rng.uniform(0.0, 2 * math.pi)
    slope = rng.uniform(-0.2, 0.5) / N
    m = np.arange(1, N, dtype=float)
    J = J0 * (1.0 + slope * m + amp * np.sin(2 * math.pi * waves * m / N + phase))
    return HoppingProfile(N=N, J=J)


def criterion_10() -> CriterionResult:
    """Correlation-matrix path vs explicit 2^N construction, to 1e-8."""
    rng = np.random.default_rng(20201020)
    worst_E = 0.0
    worst_S = 0.0
    count = 0
    for N in (2, 4, 6, 8):
        for _ in range(5):
            profile = _random_smooth_profile(N, rng)
            count += 1
            spectrum = eigendecompose(hopping_matrix(profile))
            C = correlation_matrix(spectrum)
            E_mb, psi = many_body_ground(profile.J)
            worst_E = max(worst_E, abs(vacuum_energy(profile, spectrum) - E_mb))
            for ell in range(1, N):
                S_corr = ent.block_entropy(C, ell)
                S_mb = entropy_from_rdm(reduced_density_matrix(psi, N, ell))
                worst_S = max(worst_S, abs(S_corr - S_mb))
    ok = worst_E < 1e-8 and worst_S < 1e-8
    lines = [
        f"{count} random smooth profiles, N in (2, 4, 6, 8)",
        f"max |E_corr - E_manybody| = {worst_E:.2e} (tol 1e-8)",
        f"max |S_corr - S_manybody| = {worst_S:.2e} (tol 1e-8)",
    ]
    return CriterionResult(10, "many-body oracle equivalence", ok, lines)


def criterion_11() -> CriterionResult:
    """Eigensolver invariants at 1e-10 up to N = 2000, under five minutes."""
    t0 = time.time()
    lines = []
    ok = True
    cases = [
        (16, MetricSpec(MetricKind.MINKOWSKI)),
        (128, MetricSpec(MetricKind.RINDLER, a=0.05)),
        (512, MetricSpec(MetricKind.SINE, A=0.5, k=2 * math.pi / 64)),
        (2000, MetricSpec(MetricKind.MINKOWSKI)),
        (2000, MetricSpec(MetricKind.RAINBOW, h=2e-3)),
    ]
    for N, spec in cases:
        profile = build_profile(spec, N)
        T = hopping_matrix(profile)
        s = eigendecompose(T)
        U, w = s.eigenvectors, s.eigenvalues
        Jmax = float(profile.J.max())
        tol = 1e-10 * Jmax
        resid = float(np.abs(T.apply(U) - U * w).max())
        orth = float(np.abs(U.T @ U - np.eye(N)).max())
        ph = float(np.abs(w + w[::-1]).max())
        trace = abs(float(w.sum()))
        frob = abs(float((w**2).sum()) - 2.0 * float((profile.J**2).sum()))
        checks = (
            resid <= tol,
            orth <= 1e-10,
            ph <= tol,
            trace <= 1e-10 * N * Jmax,
            frob <= 1e-10 * 2.0 * float((profile.J**2).sum()),
        )
        ok &= all(checks)
        lines.append(
            f"N={N} {spec.kind.value}: resid={resid:.1e} orth={orth:.1e} "
            f"ph={ph:.1e} trace={trace:.1e}"
        )
    # uniform-chain analytic spectrum at N = 2000
    N = 2000
    profile = build_profile(MetricSpec(MetricKind.MINKOWSKI), N)
    w = eigendecompose(hopping_matrix(profile), vectors=False).eigenvalues
    k = np.arange(1, N + 1)
    exact = np.sort(-2.0 * np.cos(k * math.pi / (N + 1)))
    d = float(np.abs(w - exact).max())
    ok &= d <= 1e-10
    lines.append(f"uniform N=2000 vs analytic dispersion: max dev = {d:.1e}")
    elapsed = time.time() - t0
    ok &= elapsed < 300.0
    lines.append(f"runtime = {elapsed:.1f} s (limit 300 s)")
    return CriterionResult(11, "eigensolver invariants", ok, lines)


CRITERIA: Dict[int, Tuple[str, Callable[[], CriterionResult]]] = {
    1: ("flat scaling constants", criterion_1),
    2: ("first-order bulk energy", criterion_2),
    3: ("correlator rigidity", criterion_3),
    4: ("entanglement vs CFT forms", criterion_4),
    5: ("rainbow volume law", criterion_5),
    6: ("homogeneous Casimir force", criterion_6),
    7: ("Rindler force crossover", criterion_7),
    8: ("rainbow force collapse", criterion_8),
    9: ("obstacle potential shape", criterion_9),
    10: ("many-body oracle equivalence", criterion_10),
    11: ("eigensolver invariants", criterion_11),
}


def run_criteria(ids: Optional[Iterable[int]] = None) -> List[CriterionResult]:
    ids = sorted(set(ids)) if ids is not None else sorted(CRITERIA)
    results = []
    for cid in ids:
        if cid not in CRITERIA:
            raise ValueError(f"unknown criterion {cid}")
        results.append(CRITERIA[cid][1]())
    return results


def format_table(results: List[CriterionResult], verbose: bool = True) -> str:
    out = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.append(f"[{status}] criterion {r.cid:2d}: {r.title}")
        if verbose:
            for line in r.lines:
                out.append(f"         {line}")
            if r.known_issue:
                out.append(f"         note: {r.known_issue}")
    n_pass = sum(r.passed for r in results)
    out.append(f"{n_pass}/{len(results)} criteria passed")
    return "\n".join(out)
