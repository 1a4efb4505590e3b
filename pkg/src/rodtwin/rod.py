"""Twin data models of snapshot matrices.

A twin data model represents a space-time field u(x, t_i) as a short
modal sum u_twin(x, t_i) = sum_j a_j(t_i) phi_j(x).  The construction
used here: split the snapshots into the time-shifted pair (V0, V1),
take a seeded randomized SVD of V0, form the one-step propagator
S = U^H V1 W Sigma^{-1}, eigendecompose S, map eigenvectors through U
into unit-norm spatial modes, and least-squares fit the amplitudes
against every snapshot column.  Real data makes the eigenvalues come
in conjugate pairs, so the modal sum is real up to rounding; the
reconstruction keeps the real part and checks the imaginary residue.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .linalg import EigenPairs, SvdFactors, eig_general, least_squares, qr_factor
from .rsvd import rsvd


class FitStageError(RuntimeError):
    """A stage of the fit pipeline failed; the message names the stage."""


def _uniform_grid(g, name):
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size < 2:
        raise ValueError("%s grid needs at least 2 points" % name)
    steps = np.diff(g)
    if steps.min() <= 0:
        raise ValueError("%s grid must be strictly increasing" % name)
    scale = max(abs(float(g[0])), abs(float(g[-1])), 1.0)
    if np.abs(steps - steps[0]).max() > 1e-12 * scale:
        raise ValueError("%s grid must be uniformly spaced" % name)
    return g


@dataclass(frozen=True)
class SnapshotMatrix:
    """Real field samples u(x_i, t_j) with their uniform space/time grids.

    values has shape (nx, nt + 1); column j is the snapshot at t[j].
    """

    values: np.ndarray
    x: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        x = _uniform_grid(self.x, "x")
        t = _uniform_grid(self.t, "t")
        if values.shape != (x.size, t.size):
            raise ValueError(
                "values shape %s does not match grids (%d, %d)"
                % (values.shape, x.size, t.size)
            )
        if not np.isfinite(values).all():
            raise ValueError("snapshot values contain non-finite entries")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)

    @property
    def dx(self):
        return float((self.x[-1] - self.x[0]) / (self.x.size - 1))

    @property
    def dt(self):
        return float((self.t[-1] - self.t[0]) / (self.t.size - 1))

    @property
    def n_space(self):
        return self.values.shape[0]

    @property
    def n_steps(self):
        """Number of time steps, one less than the column count."""
        return self.values.shape[1] - 1


@dataclass(frozen=True)
class InnerProduct:
    """Discrete L2 inner product on a uniform grid: <f, g> = dx * sum f conj(g)."""

    dx: float

    def dot(self, f, g):
        return complex(self.dx * np.sum(np.asarray(f) * np.conj(g)))

    def norm(self, f):
        f = np.asarray(f)
        return float(np.sqrt(self.dx * np.sum(np.abs(f) ** 2)))


@dataclass(frozen=True)
class RodModel:
    """Fitted twin data model.

    modes: (nx, rank) complex, unit discrete-L2-norm columns.
    amplitudes: (rank, nt + 1) complex, one row per mode.
    eigenvalues: (rank,) complex spectrum of the propagator.
    ls_residual: Frobenius residual of the amplitude fit.
    """

    modes: np.ndarray
    amplitudes: np.ndarray
    eigenvalues: np.ndarray
    rank: int
    seed: int
    x: np.ndarray
    t: np.ndarray
    ls_residual: float = 0.0
    gram_deviation: float = field(default=0.0)

    @property
    def dx(self):
        return float((self.x[-1] - self.x[0]) / (self.x.size - 1))

    @property
    def dt(self):
        return float((self.t[-1] - self.t[0]) / (self.t.size - 1))


def shift_split(snap):
    """Time-shifted pair (V0, V1): columns 0..nt-1 and 1..nt."""
    if snap.values.shape[1] < 2:
        raise ValueError("need at least 2 snapshot columns to shift")
    return snap.values[:, :-1], snap.values[:, 1:]


def _drop_tiny_singular(svd):
    """Directions with negligible singular values cannot be inverted."""
    sigma = svd.sigma
    smax = float(sigma[0]) if sigma.size else 0.0
    keep = sigma > 1e-12 * smax
    if keep.all():
        return svd
    kept = int(np.count_nonzero(keep))
    if kept == 0:
        raise ValueError("all singular values are negligible; nothing to propagate")
    warnings.warn(
        "truncating %d near-zero singular directions before inversion"
        % (sigma.size - kept),
        RuntimeWarning,
        stacklevel=3,
    )
    return SvdFactors(
        U=svd.U[:, :kept], sigma=sigma[:kept], W=svd.W[:, :kept], rank_used=kept
    )


def propagator(svd, v1):
    """One-step propagator S = U^H V1 W Sigma^{-1} in the reduced basis."""
    svd = _drop_tiny_singular(svd)
    v1 = np.asarray(v1)
    if v1.shape[0] != svd.U.shape[0] or v1.shape[1] != svd.W.shape[0]:
        raise ValueError("V1 shape does not match the SVD factors")
    return svd.U.conj().T @ v1 @ (svd.W / svd.sigma)


def _mode_columns(svd, eig, ip):
    raw = svd.U @ eig.vectors
    norms = np.sqrt(ip.dx * np.sum(np.abs(raw) ** 2, axis=0))
    keep = norms > 1e-14 * max(float(norms.max()), 1e-300)
    if not keep.all():
        warnings.warn(
            "dropping %d zero-norm mode column(s)" % int((~keep).sum()),
            RuntimeWarning,
            stacklevel=3,
        )
        if not keep.any():
            raise ValueError("all mode columns degenerate")
    return raw[:, keep] / norms[keep], keep


def rod_modes(svd, eig, ip):
    """Spatial modes: U-weighted eigenvector combinations at unit L2 norm.

    Column i is U @ X[:, i] scaled to unit norm under ip.  A column whose
    norm underflows (defective pairing) is dropped with a warning.
    """
    return _mode_columns(svd, eig, ip)[0]


def amplitudes(modes, snap, ip):
    """Amplitude matrix minimizing ||modes @ A - V||_F over all columns.

    The least-squares weight is dx-uniform, so the plain solve is
    identical to the weighted one.  Orthonormal modes reduce this to
    inner-product projection.  An ill-conditioned basis (condition
    beyond 1e12) still yields the minimum-norm solution, with a warning.
    """
    modes = np.asarray(modes)
    if modes.shape[1] > snap.values.shape[1]:
        raise ValueError("more modes than snapshot columns")
    s = np.linalg.svd(modes, compute_uv=False)
    if s[-1] <= 0 or s[0] / s[-1] > 1e12:
        warnings.warn(
            "ill-conditioned mode basis (condition %.3e): minimum-norm amplitudes"
            % (np.inf if s[-1] <= 0 else s[0] / s[-1]),
            RuntimeWarning,
            stacklevel=2,
        )
    return least_squares(modes, snap.values)


def mode_gram_deviation(modes, ip):
    """Largest off-diagonal magnitude of the mode Gram matrix minus identity.

    Zero for a perfectly orthonormal basis under ip; near-real conjugate
    mode pairs push it toward 1.
    """
    modes = np.asarray(modes)
    gram = ip.dx * (modes.conj().T @ modes)
    off = np.abs(gram - np.eye(gram.shape[0]))
    np.fill_diagonal(off, 0.0)
    return float(off.max()) if off.size > 1 else 0.0


def fit(
    snap,
    rank,
    seed,
    oversampling=0,
    power_iterations=0,
    orthonormalize_sample=True,
    reorthonormalize=False,
):
    """Fit a twin data model of the given rank.

    Runs the full pipeline on the snapshot matrix: time-shift split,
    randomized SVD of V0 at the given rank and seed, propagator,
    eigendecomposition, modes, amplitudes.  With reorthonormalize=True
    the mode basis is replaced by its QR orthonormalization (the
    amplitudes are refit accordingly).

    Raises FitStageError naming the failing stage on computational
    failures; precondition violations raise ValueError directly.
    """
    rank = int(rank)
    v0, v1 = shift_split(snap)
    if not 1 <= rank <= min(v0.shape):
        raise ValueError(
            "rank %d outside [1, %d] for this snapshot matrix"
            % (rank, min(v0.shape))
        )
    ip = InnerProduct(snap.dx)

    def stage(name, func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValueError:
            raise
        except Exception as exc:
            raise FitStageError("stage '%s' failed: %s" % (name, exc)) from exc

    factors = stage(
        "rsvd",
        rsvd,
        v0,
        rank,
        seed,
        oversampling=oversampling,
        power_iterations=power_iterations,
        orthonormalize_sample=orthonormalize_sample,
    )
    factors = _drop_tiny_singular(factors)
    prop = stage("propagator", propagator, factors, v1)
    eig = stage("eigendecomposition", eig_general, prop)
    modes_mat, kept = stage("modes", _mode_columns, factors, eig, ip)
    if reorthonormalize:
        q = qr_factor(modes_mat)[0]
        modes_mat = q / np.sqrt(ip.dx)
    amp = stage("amplitudes", amplitudes, modes_mat, snap, ip)
    resid = float(np.linalg.norm(modes_mat @ amp - snap.values))
    return RodModel(
        modes=modes_mat,
        amplitudes=amp,
        eigenvalues=eig.values[kept].copy(),
        rank=int(modes_mat.shape[1]),
        seed=int(seed),
        x=snap.x.copy(),
        t=snap.t.copy(),
        ls_residual=resid,
        gram_deviation=mode_gram_deviation(modes_mat, ip),
    )


def reconstruct(model):
    """Evaluate the modal sum on the stored grid, returning a SnapshotMatrix.

    The sum is complex; conjugate eigenpair structure makes it real up
    to rounding.  The real part is returned and an imaginary residue
    above 1e-6 of the field scale triggers a warning.
    """
    total = model.modes @ model.amplitudes
    scale = float(np.abs(total.real).max())
    residue = float(np.abs(total.imag).max())
    if scale > 0 and residue > 1e-6 * scale:
        warnings.warn(
            "imaginary residue %.3e exceeds 1e-6 of the field scale %.3e"
            % (residue, scale),
            RuntimeWarning,
            stacklevel=2,
        )
    return SnapshotMatrix(values=total.real.copy(), x=model.x.copy(), t=model.t.copy())
