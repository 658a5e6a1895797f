"""Shared test utilities: independent oracles and profile generators."""

import numpy as np

from curvedchain.metrics import HoppingProfile


def charpoly_eigenvalues(diag, offdiag):
    """Eigenvalues of a symmetric tridiagonal matrix via its characteristic
    polynomial (leading-principal-minor recurrence + root finding).

    Completely independent of the QL solver; only sensible for small N.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    n = d.size
    # p_k(x) = (d_k - x) p_{k-1}(x) - e_{k-1}^2 p_{k-2}(x), highest power first
    p_prev = np.array([1.0])
    p = np.array([-1.0, d[0]])
    for k in range(1, n):
        term1 = np.polymul([-1.0, d[k]], p)
        term2 = e[k - 1] ** 2 * p_prev
        p_prev, p = p, np.polysub(term1, np.concatenate([np.zeros(len(term1) - len(term2)), term2]))
    roots = np.roots(p)
    assert np.abs(roots.imag).max() < 1e-8
    return np.sort(roots.real)


def random_smooth_profile(N, rng):
    """Positive, slowly varying hopping profile for property tests."""
    J0 = rng.uniform(0.6, 1.4)
    amp = rng.uniform(0.0, 0.35)
    waves = rng.integers(1, 3)
    phase = rng.uniform(0.0, 2 * np.pi)
    slope = rng.uniform(-0.2, 0.5) / N
    m = np.arange(1, N, dtype=float)
    J = J0 * (1.0 + slope * m + amp * np.sin(2 * np.pi * waves * m / N + phase))
    return HoppingProfile(N=N, J=J)
