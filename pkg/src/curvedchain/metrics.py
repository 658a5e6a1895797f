"""Metric families and realized hopping profiles.

A static (1+1)D optical metric ds^2 = -J^2(x) dt^2 + dx^2 is encoded on an
open chain of N sites by the hopping amplitudes J_m = J(x_m), x_m = m, with
the lattice spacing fixed to 1 throughout.  Supported families:

    minkowski        J(x) = J0
    rindler          J(x) = J0 + a*x
    sine             J(x) = J0 + A*sin(k*x)
    rainbow          J(x) = J0 * exp(-h*|x - N/2|)
    modulated_sine   J(x) = J0 + A*sin(k*x^2)

Setting the deformation parameter of any family to zero reproduces the
minkowski profile bitwise.  The rainbow center is pegged to the middle of
the chain being built, so rainbow chains of different sizes are concentric;
every other family is N-independent and chains share J_m on common links.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidMetricError

__all__ = [
    "MetricKind",
    "MetricSpec",
    "HoppingProfile",
    "build_profile",
    "deformed_coordinate",
    "deformed_coordinates",
    "uv_cutoff",
    "log_derivative",
]


class MetricKind(str, Enum):
    MINKOWSKI = "minkowski"
    RINDLER = "rindler"
    SINE = "sine"
    RAINBOW = "rainbow"
    MODULATED_SINE = "modulated_sine"


@dataclass(frozen=True)
class MetricSpec:
    """Symbolic description of a metric family defining J(x).

    Parameters irrelevant to the chosen family must stay at their defaults;
    `J0` must be positive and the rainbow slope `h` nonnegative.
    """

    kind: MetricKind
    J0: float = 1.0
    a: float = 0.0  # rindler acceleration
    A: float = 0.0  # sine amplitude
    k: float = 0.0  # sine wavenumber
    h: float = 0.0  # rainbow slope

    def __post_init__(self):
        object.__setattr__(self, "kind", MetricKind(self.kind))
        if not self.J0 > 0:
            raise InvalidMetricError(f"J0 must be positive, got {self.J0}")
        if self.h < 0:
            raise InvalidMetricError("h must be nonnegative")

    def hopping(self, x, N=None):
        """Evaluate the smooth hopping function J(x).

        `N` is only consulted by the rainbow family (center at N/2) and is
        mandatory there.  Accepts scalars or arrays.
        """
        x = np.asarray(x, dtype=float)
        if self.kind is MetricKind.MINKOWSKI:
            J = np.full_like(x, self.J0)
        elif self.kind is MetricKind.RINDLER:
            J = self.J0 + self.a * x
        elif self.kind is MetricKind.SINE:
            J = self.J0 + self.A * np.sin(self.k * x)
        elif self.kind is MetricKind.MODULATED_SINE:
            J = self.J0 + self.A * np.sin(self.k * x * x)
        else:  # rainbow
            if N is None:
                raise InvalidMetricError("rainbow hopping needs the chain size N")
            J = self.J0 * np.exp(-self.h * np.abs(x - N / 2))
        return J if J.ndim else float(J)


@dataclass(frozen=True)
class HoppingProfile:
    """Realized hoppings J_1..J_{N-1} on an N-site chain plus derived sums.

    S_N is the plain sum of the hoppings; Ntilde the deformed chain length
    sum(1/J_i), i.e. the harmonic counterpart that controls the universal
    finite-size term.
    """

    N: int
    J: np.ndarray
    S_N: float = field(init=False)
    Ntilde: float = field(init=False)

    def __post_init__(self):
        J = np.array(self.J, dtype=float)  # private copy, frozen below
        if self.N < 2 or self.N % 2:
            raise InvalidMetricError(f"chain size must be even and >= 2, got {self.N}")
        if J.shape != (self.N - 1,):
            raise InvalidMetricError(
                f"expected {self.N - 1} hoppings for N={self.N}, got {J.shape}"
            )
        bad = np.nonzero(~(J > 0))[0]
        if bad.size:
            m = int(bad[0]) + 1
            raise InvalidMetricError(
                f"non-positive hopping J_{m} = {J[m - 1]}", site=m
            )
        J.flags.writeable = False
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "S_N", float(J.sum()))
        object.__setattr__(self, "Ntilde", float((1.0 / J).sum()))


def build_profile(spec: MetricSpec, N: int) -> HoppingProfile:
    """Sample the metric on an N-site chain: J_m = J(x_m), x_m = m.

    The rainbow center sits at x = N/2 of this chain.  Raises
    InvalidMetricError (reporting the first offending link) if any sampled
    hopping is non-positive, or if the smooth J(x) vanishes inside [0, N]
    for a monotone family.
    """
    if N < 2 or N % 2:
        raise InvalidMetricError(f"chain size must be even and >= 2, got {N}")
    x = np.arange(1, N, dtype=float)
    J = np.asarray(spec.hopping(x, N))
    profile = HoppingProfile(N=N, J=J)  # raises with the offending site if any
    # families that can cross zero between the outermost links and x = 0 or N
    if spec.kind in (MetricKind.RINDLER, MetricKind.SINE, MetricKind.MODULATED_SINE):
        for edge in (0.0, float(N)):
            if not spec.hopping(edge, N) > 0:
                raise InvalidMetricError(
                    f"J(x) vanishes at the chain edge x = {edge:g}", site=None
                )
    return profile


def deformed_coordinate(profile: HoppingProfile, ell: int) -> float:
    """Deformed coordinate x~(ell) = sum_{p=1}^{ell-1} 1/J_p (so x~(0) = x~(1) = 0)."""
    if not 0 <= ell <= profile.N:
        raise ValueError(f"ell must lie in [0, {profile.N}], got {ell}")
    if ell <= 1:
        return 0.0
    return float((1.0 / profile.J[: ell - 1]).sum())


def deformed_coordinates(profile: HoppingProfile) -> np.ndarray:
    """x~(ell) for every ell = 0..N as one array (cumulative form)."""
    out = np.zeros(profile.N + 1)
    out[1:] = np.concatenate([[0.0], np.cumsum(1.0 / profile.J)])
    return out


def uv_cutoff(profile: HoppingProfile, ell: int) -> float:
    """Deformed UV cutoff at block boundary ell: 1/J(ell)."""
    if not 1 <= ell <= profile.N - 1:
        raise ValueError(f"ell must lie in [1, {profile.N - 1}], got {ell}")
    return float(1.0 / profile.J[ell - 1])


def log_derivative(spec: MetricSpec, x: float) -> float:
    """Logarithmic derivative J'(x)/J(x) of the smooth metric function.

    The rainbow family returns the right-wing value -h everywhere (including
    the apex), since the force extraction only ever evaluates it at the right
    boundary of the chain.
    """
    if spec.kind is MetricKind.MINKOWSKI:
        return 0.0
    if spec.kind is MetricKind.RAINBOW:
        return -spec.h
    if spec.kind is MetricKind.RINDLER:
        J = spec.J0 + spec.a * x
        if not J > 0:
            raise InvalidMetricError(f"J({x:g}) = {J:g} is not positive")
        return spec.a / J
    if spec.kind is MetricKind.SINE:
        J = spec.J0 + spec.A * math.sin(spec.k * x)
        if not J > 0:
            raise InvalidMetricError(f"J({x:g}) = {J:g} is not positive")
        return spec.A * spec.k * math.cos(spec.k * x) / J
    # modulated sine
    J = spec.J0 + spec.A * math.sin(spec.k * x * x)
    if not J > 0:
        raise InvalidMetricError(f"J({x:g}) = {J:g} is not positive")
    return 2.0 * spec.A * spec.k * x * math.cos(spec.k * x * x) / J
