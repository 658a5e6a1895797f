"""Half-filled ground state: correlation matrix, vacuum energy, local correlators.

The vacuum is the Slater determinant occupying the N/2 lowest single-particle
modes.  All of its observables derive from the two-point function
C_{mn} = <c†_m c_n> = sum_{k occupied} U_{m,k} U_{n,k}, which is a projector
with trace N/2 and homogeneous diagonal 1/2 for these particle-hole-symmetric
chains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FillingError
from .metrics import HoppingProfile, MetricSpec, build_profile
from .tridiag import Spectrum, eigendecompose, hopping_matrix

__all__ = [
    "CorrelationMatrix",
    "correlation_matrix",
    "vacuum_energy",
    "ground_energy",
    "local_correlators",
    "smoothed_correlators",
    "first_order_energy",
    "ground_state",
    "C0_FREE_FERMION",
]

# bulk energy per unit hopping of the homogeneous half-filled chain
C0_FREE_FERMION = 2.0 / math.pi


@dataclass(frozen=True)
class CorrelationMatrix:
    """Two-point function <c†_m c_n> of the half-filled vacuum."""

    N: int
    C: np.ndarray


def correlation_matrix(spectrum: Spectrum) -> CorrelationMatrix:
    """Correlation matrix from the N/2 lowest modes of a Spectrum.

    Raises FillingError for odd N (the Fermi level would be ambiguous) and
    ValueError if the spectrum was computed without eigenvectors.
    """
    n = spectrum.N
    if n % 2:
        raise FillingError(f"half filling needs even N, got {n}")
    if spectrum.eigenvectors is None:
        raise ValueError("correlation matrix needs eigenvectors")
    occ = spectrum.eigenvectors[:, : n // 2]
    C = occ @ occ.T
    return CorrelationMatrix(N=n, C=C)


def vacuum_energy(profile: HoppingProfile, spectrum: Spectrum) -> float:
    """Ground-state energy at half filling: sum of the N/2 lowest eigenvalues.

    Equivalently -2 sum_p J_p C_{p,p+1} (Hellmann-Feynman consistency, checked
    in the test suite).
    """
    n = spectrum.N
    if n % 2:
        raise FillingError(f"half filling needs even N, got {n}")
    if profile.N != n:
        raise ValueError("profile and spectrum sizes differ")
    return float(spectrum.eigenvalues[: n // 2].sum())


def ground_energy(profile: HoppingProfile) -> float:
    """Vacuum energy straight from a profile (eigenvalues only; no vectors)."""
    spec = eigendecompose(hopping_matrix(profile), vectors=False)
    return vacuum_energy(profile, spec)


def local_correlators(C: CorrelationMatrix) -> np.ndarray:
    """Nearest-neighbour correlators <c†_p c_{p+1}> = C_{p,p+1}, p = 1..N-1."""
    return np.diagonal(C.C, offset=1).copy()


def smoothed_correlators(C: CorrelationMatrix) -> np.ndarray:
    """Two-link moving average of the local correlators.

    The parity oscillation is exactly period-2 (Fermi momentum pi/2), so
    averaging adjacent links removes it; this is the only smoother used
    anywhere in the package.
    """
    cc = local_correlators(C)
    return 0.5 * (cc[:-1] + cc[1:])


def first_order_energy(profile: HoppingProfile) -> float:
    """First-order bulk estimate -c0 * S_N with c0 = 2/pi."""
    return -C0_FREE_FERMION * profile.S_N


def ground_state(spec: MetricSpec, N: int):
    """Convenience: (profile, spectrum, correlation matrix) for a metric."""
    profile = build_profile(spec, N)
    spectrum = eigendecompose(hopping_matrix(profile))
    return profile, spectrum, correlation_matrix(spectrum)
