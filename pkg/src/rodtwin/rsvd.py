"""Seeded randomized SVD built on a pinned, self-contained PRNG.

Reproducibility across platforms and library versions is part of the
contract here, so the Gaussian sampling matrix does not come from
numpy's generators.  Draw c of the stream for a given 64-bit seed is

    bits(c) = mix64((seed + (c + 1) * 0x9E3779B97F4A7C15) mod 2^64)

where mix64 is the SplitMix64 finalizer (xor-shift 30, multiply
0xBF58476D1CE4E5B9, xor-shift 27, multiply 0x94D049BB133111EB,
xor-shift 31).  The top 53 bits give uniforms in [0, 1); consecutive
pairs feed the Box-Muller transform.  Matrices fill column by column,
so the first k columns of an (n, k+1) draw equal the (n, k) draw for
the same seed; rank sweeps therefore sample nested subspaces.
"""

from __future__ import annotations

import warnings

import numpy as np

from .linalg import SvdFactors, qr_factor, svd_economy

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)
_TWO53 = float(2**53)


def _mix64(z):
    z = (z ^ (z >> np.uint64(30))) * _MIX_A
    z = (z ^ (z >> np.uint64(27))) * _MIX_B
    return z ^ (z >> np.uint64(31))


def _uniforms(seed, count):
    """count uniforms in [0, 1) from the counter stream of seed."""
    counters = np.arange(1, count + 1, dtype=np.uint64)
    bits = _mix64(np.uint64(seed % (1 << 64)) + counters * _GAMMA)
    return (bits >> np.uint64(11)).astype(np.float64) / _TWO53


def gaussian_test_matrix(n_rows, k, seed):
    """Deterministic (n_rows, k) matrix of i.i.d. standard normals.

    Same (n_rows, k, seed) always yields the bit-identical matrix.
    """
    n_rows = int(n_rows)
    k = int(k)
    if n_rows < k or k < 1:
        raise ValueError("need n_rows >= k >= 1, got (%d, %d)" % (n_rows, k))
    total = n_rows * k
    u = _uniforms(seed, 2 * ((total + 1) // 2))
    # 1 - u lands in (0, 1], keeping the log away from zero
    radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    angle = 2.0 * np.pi * u[1::2]
    z = np.empty(u.size)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:total].reshape((n_rows, k), order="F")


def rsvd(
    v0,
    target_rank,
    seed,
    oversampling=0,
    power_iterations=0,
    orthonormalize_sample=True,
):
    """Randomized economy SVD of a real matrix, truncated to target_rank.

    Pipeline: draw a Gaussian test matrix M, sample the range Q = V0 M,
    orthonormalize Q (on by default; turn off for the literal
    un-orthonormalized variant), project P = Q^T V0, take the
    deterministic SVD of the small P, and lift U = Q T.  Optional
    oversampling widens the sample; optional power iterations sharpen it
    on slowly decaying spectra.

    Parameters
    ----------
    v0 : array_like, real, shape (nx, nt)
    target_rank : int, 1 <= target_rank <= min(nx, nt)
    seed : int, selects the sampling stream
    oversampling : int, extra sample columns beyond target_rank
    power_iterations : int, subspace iteration count
    orthonormalize_sample : bool, QR-orthonormalize the sampled range

    Returns
    -------
    SvdFactors with U (nx, k), sigma (k,), W (nt, k), rank_used = k.
    """
    v0 = np.asarray(v0, dtype=float)
    if v0.ndim != 2 or v0.size == 0:
        raise ValueError("v0 must be a nonempty 2-D real array")
    if not np.isfinite(v0).all():
        raise ValueError("v0 contains non-finite entries")
    nx, nt = v0.shape
    k = int(target_rank)
    if not 1 <= k <= min(nx, nt):
        raise ValueError(
            "target_rank %d outside [1, %d] for a %dx%d matrix"
            % (k, min(nx, nt), nx, nt)
        )
    p = int(oversampling)
    if p < 0 or k + p > nt:
        raise ValueError("oversampling must satisfy 0 <= p and k + p <= nt")
    if int(power_iterations) < 0:
        raise ValueError("power_iterations must be nonnegative")

    if not v0.any():
        # no range to sample; return an arbitrary orthonormal frame
        warnings.warn("rsvd of an all-zero matrix", RuntimeWarning, stacklevel=2)
        u = qr_factor(gaussian_test_matrix(nx, k, seed))[0]
        w = qr_factor(gaussian_test_matrix(nt, k, seed + 1))[0]
        return SvdFactors(U=u, sigma=np.zeros(k), W=w, rank_used=k)

    m = gaussian_test_matrix(nt, k + p, seed)
    q = v0 @ m
    if orthonormalize_sample:
        q = qr_factor(q)[0]
    for _ in range(int(power_iterations)):
        q = v0 @ (v0.T @ q)
        if orthonormalize_sample:
            q = qr_factor(q)[0]
    proj = q.T @ v0
    inner = svd_economy(proj)
    return SvdFactors(
        U=(q @ inner.U)[:, :k],
        sigma=inner.sigma[:k].copy(),
        W=inner.W[:, :k].copy(),
        rank_used=k,
    )
