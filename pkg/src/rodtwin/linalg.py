"""Dense linear-algebra kernels used by every other module.

Thin wrappers over LAPACK (through numpy and scipy): Householder QR,
economy SVD, a general real eigensolver, the symmetric tridiagonal
eigensolver, and least squares.  The wrappers pin the conventions the
rest of the package relies on: validated finite inputs, nonincreasing
singular values, ascending tridiagonal eigenvalues, unit-norm
eigenvectors with conjugate pairs adjacent, and minimum-norm solves
for rank-deficient systems.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg


class LinalgError(RuntimeError):
    """A kernel could not produce a usable factorization."""


@dataclass(frozen=True)
class SvdFactors:
    """Economy SVD triple: A is approximately U @ diag(sigma) @ W conjugate-transposed.

    U has orthonormal columns spanning the (approximate) range, sigma is
    nonincreasing and nonnegative, W has orthonormal columns, and
    rank_used records how many triplets are kept.
    """

    U: np.ndarray
    sigma: np.ndarray
    W: np.ndarray
    rank_used: int


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues and matching unit-norm eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def _checked(a, name="matrix"):
    a = np.asarray(a)
    if a.ndim == 1:
        a = a[:, None]
    if a.ndim != 2 or a.size == 0:
        raise ValueError("%s must be a nonempty 2-D array" % name)
    if not np.isfinite(a).all():
        raise ValueError("%s contains non-finite entries" % name)
    return a


def qr_factor(a):
    """Householder QR of a tall (rows >= cols) matrix.

    Returns (Q, R) with Q's columns orthonormal and R upper triangular.
    Rank deficiency does not abort: the factors are still returned and a
    RuntimeWarning reports how many diagonal entries of R are negligible.
    """
    a = _checked(a)
    if a.shape[0] < a.shape[1]:
        raise ValueError("qr_factor needs rows >= cols, got %dx%d" % a.shape)
    q, r = np.linalg.qr(a)
    small = int(np.count_nonzero(np.abs(np.diag(r)) < 1e-12))
    if small:
        warnings.warn(
            "rank-deficient QR: %d negligible diagonal entries in R" % small,
            RuntimeWarning,
            stacklevel=2,
        )
    return q, r


def svd_economy(a):
    """Economy-size SVD keeping k = min(rows, cols) triplets."""
    a = _checked(a)
    try:
        u, s, wh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise LinalgError("SVD did not converge: %s" % exc) from exc
    return SvdFactors(U=u, sigma=s, W=wh.conj().T, rank_used=int(min(a.shape)))


def eig_general(s):
    """Eigendecomposition of a real square matrix.

    Eigenvectors come back with unit 2-norm, complex conjugate pairs are
    adjacent in the output (the LAPACK ordering for real input), and the
    residual ||S x - lambda x|| of every pair is verified against
    1e-8 * ||S||_F before returning.
    """
    s = _checked(s)
    if s.shape[0] != s.shape[1]:
        raise ValueError("eig_general needs a square matrix, got %dx%d" % s.shape)
    if np.iscomplexobj(s):
        raise ValueError("eig_general expects a real matrix")
    try:
        values, vectors = np.linalg.eig(s)
    except np.linalg.LinAlgError as exc:
        raise LinalgError("eigensolver did not converge: %s" % exc) from exc
    scale = np.linalg.norm(s)
    if scale > 0:
        resid = np.linalg.norm(s @ vectors - vectors * values, axis=0)
        worst = float(resid.max())
        if worst > 1e-8 * scale:
            raise LinalgError(
                "eigenpair residual %.3e exceeds 1e-8 * ||S||_F" % worst
            )
    return EigenPairs(values=values, vectors=vectors)


def eig_sym_tridiag(diag, offdiag):
    """Eigendecomposition of a symmetric tridiagonal matrix.

    Uses the implicit-shift QL/QR driver.  Eigenvalues are ascending and
    the eigenvector matrix is orthogonal.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise ValueError("diagonal must be a nonempty vector")
    if e.shape != (d.size - 1,):
        raise ValueError("offdiagonal length must be diagonal length - 1")
    if not (np.isfinite(d).all() and np.isfinite(e).all()):
        raise ValueError("tridiagonal input contains non-finite entries")
    if d.size == 1:
        return d.copy(), np.ones((1, 1))
    values, vectors = scipy.linalg.eigh_tridiagonal(d, e, lapack_driver="stev")
    return values, vectors


def least_squares(a, b, rcond=1e-12):
    """Minimize ||A X - B||_F column by column.

    Solved through the SVD pseudo-inverse; singular values below
    rcond * sigma_max are cut, which turns rank-deficient systems into
    minimum-norm solutions (reported with a warning).
    """
    a = _checked(a, "A")
    b_arr = np.asarray(b)
    vector_rhs = b_arr.ndim == 1
    b2 = _checked(b_arr, "B")
    if a.shape[0] != b2.shape[0]:
        raise ValueError(
            "row mismatch: A has %d rows, B has %d" % (a.shape[0], b2.shape[0])
        )
    x, _, rank, _ = np.linalg.lstsq(a, b2, rcond=rcond)
    if rank < a.shape[1]:
        warnings.warn(
            "rank-deficient least squares (rank %d of %d): minimum-norm solution"
            % (rank, a.shape[1]),
            RuntimeWarning,
            stacklevel=2,
        )
    return x[:, 0] if vector_rhs else x
