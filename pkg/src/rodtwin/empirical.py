"""Fourier empirical orthogonal decomposition and projection comparison.

The baseline expansion writes the data in the left singular vectors of
the full snapshot matrix, rescaled to unit discrete-L2 norm, with
inner-product coefficients.  The projection operator measures how much
of a mode lives along a single data column; averaging its squared norm
over modes and columns gives the score used to compare mode families.
The averaging conventions differ on purpose: the model side divides by
its own mode count, the Fourier side by the full grid dimension with
absent modes contributing zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import svd_economy


@dataclass(frozen=True)
class FourierModes:
    """Unit-norm empirical basis psi with singular values and coefficients.

    Reconstruction sum_i coefficients[i, j] * psi[:, i] reproduces
    column j of the decomposed data.
    """

    psi: np.ndarray
    sigma: np.ndarray
    coefficients: np.ndarray


def fourier_decomposition(snap, rank_cutoff=1e-12):
    """Deterministic SVD expansion of a snapshot matrix.

    Keeps the numerical rank: singular values below rank_cutoff times
    the largest are discarded.  Modes are rescaled to unit discrete-L2
    norm and the coefficients absorb the inverse scaling, so the
    reconstruction identity is preserved exactly.
    """
    factors = svd_economy(snap.values)
    sigma = factors.sigma
    if sigma.size and sigma[0] > 0:
        r = int(np.count_nonzero(sigma > rank_cutoff * sigma[0]))
    else:
        r = 0
    r = max(r, 1)
    root_dx = np.sqrt(snap.dx)
    psi = factors.U[:, :r] / root_dx
    coeff = root_dx * sigma[:r, None] * factors.W[:, :r].conj().T
    return FourierModes(psi=psi, sigma=sigma[:r].copy(), coefficients=coeff)


def project(phi, u, ip):
    """Projection of mode phi along data column u: (<phi,u>/<u,u>) u."""
    uu = ip.dot(u, u).real
    if uu <= 0:
        raise ValueError("cannot project onto a zero data column")
    return (ip.dot(phi, u) / uu) * np.asarray(u)


def mean_projection_norm(modes, v0, ip, mode_count=None):
    """Mean over modes of summed squared projection norms onto data columns.

    Equals (1/m) * sum_i sum_j |<phi_i, u_j>|^2 / <u_j, u_j> with m the
    mode count; pass mode_count to average over a nominal mode total
    larger than the columns actually present (the absent ones add zero).
    """
    modes = np.asarray(modes)
    v0 = np.asarray(v0)
    col_sq = ip.dx * np.sum(np.abs(v0) ** 2, axis=0)
    zero_cols = np.flatnonzero(col_sq <= 0)
    if zero_cols.size:
        raise ValueError(
            "zero data column(s) at index %s" % zero_cols.tolist()
        )
    inner = ip.dx * (modes.conj().T @ v0)
    m = modes.shape[1] if mode_count is None else int(mode_count)
    if m < modes.shape[1]:
        raise ValueError("mode_count below the number of modes present")
    return float(np.sum(np.abs(inner) ** 2 / col_sq) / m)


def compare_projections(rod_modes, fourier, v0, ip, same_rank=False):
    """Score the model modes against the Fourier baseline on V0.

    Returns (rho_rod, rho_fourier, dominates).  By default the Fourier
    mean runs over the full grid dimension; same_rank=True instead
    truncates the baseline to the model's rank and averages both sides
    over that rank, a like-for-like diagnostic.
    """
    rod_modes = np.asarray(rod_modes)
    nx = np.asarray(v0).shape[0]
    rho_rod = mean_projection_norm(rod_modes, v0, ip)
    if same_rank:
        k = min(rod_modes.shape[1], fourier.psi.shape[1])
        rho_fourier = mean_projection_norm(
            fourier.psi[:, :k], v0, ip, mode_count=rod_modes.shape[1]
        )
    else:
        rho_fourier = mean_projection_norm(fourier.psi, v0, ip, mode_count=nx)
    return rho_rod, rho_fourier, bool(rho_rod > rho_fourier)
