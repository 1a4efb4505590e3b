"""Exact viscous-Burgers benchmark data.

The initial-value problem

    u_t + u u_x = nu u_xx,   u(x, 0) = -sin(pi x),   u(0, t) = u(L, t) = 0

on [0, 2] has a closed-form solution through the Cole-Hopf substitution:
after mapping to the heat equation, the solution is a ratio of two
integrals of the transformed initial profile against a Gaussian kernel.
Substituting z = (x - y) / sqrt(4 nu t) turns both into integrals
against exp(-z^2), which n-point Gauss-Hermite quadrature evaluates as

    u(x, t) = [ sum_i w_i 4 nu z_i g(z_i) ] / [ sqrt(4 nu t) sum_i w_i g(z_i) ]

with g(z) = exp(-cos(pi (x - z sqrt(4 nu t))) / (2 nu pi)).  At
nu = 0.01 the exponent spans roughly +-15.9; numerator and denominator
share that factor, so both sums are shifted by the maximum exponent
before exponentiation and the shift cancels in the ratio.  Below
t = 1e-12 the ratio degenerates (sqrt(4 nu t) in the denominator) and
the analytic limit, the initial condition itself, is returned.

Nodes and weights come from the Golub-Welsch construction: eigenvalues
and first eigenvector components of the Jacobi matrix of the Hermite
recurrence.  The textbook closed-form weight expression overflows near
n = 100 and is used only as a low-order cross-check in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import eig_sym_tridiag
from .rod import SnapshotMatrix

T_EPS = 1e-12


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite nodes/weights of a given order, nodes ascending."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class BurgersConfig:
    """Benchmark parameters; the defaults define the reference dataset."""

    length: float = 2.0
    t_final: float = 3.0
    nu: float = 1e-2
    grid_points: int = 101
    dt: float = 0.01
    quad_order: int = 100

    def __post_init__(self):
        if self.nu <= 0:
            raise ValueError("nu must be positive")
        if self.t_final <= 0 or self.dt <= 0:
            raise ValueError("t_final and dt must be positive")
        if self.length <= 0:
            raise ValueError("length must be positive")
        if self.grid_points < 2:
            raise ValueError("need at least 2 grid points")
        if not 1 <= self.quad_order <= 500:
            raise ValueError("quad_order must lie in [1, 500]")

    @property
    def dx(self):
        return self.length / (self.grid_points - 1)

    @property
    def x_grid(self):
        return np.linspace(0.0, self.length, self.grid_points)

    @property
    def t_grid(self):
        n_steps = int(round(self.t_final / self.dt))
        return np.arange(n_steps + 1) * self.dt


def gauss_hermite(n):
    """Gauss-Hermite rule of order n for integrals against exp(-z^2).

    Exact for polynomials up to degree 2n - 1.  Built from the
    symmetric tridiagonal Jacobi matrix with off-diagonal sqrt(i/2);
    weights are sqrt(pi) times the squared first eigenvector components.
    """
    n = int(n)
    if not 1 <= n <= 500:
        raise ValueError("quadrature order must lie in [1, 500]")
    if n == 1:
        return QuadratureRule(
            order=1, nodes=np.zeros(1), weights=np.array([math.sqrt(math.pi)])
        )
    off = np.sqrt(np.arange(1, n) / 2.0)
    values, vectors = eig_sym_tridiag(np.zeros(n), off)
    weights = math.sqrt(math.pi) * vectors[0] ** 2
    return QuadratureRule(order=n, nodes=values, weights=weights)


def phi0(x, nu):
    """Cole-Hopf image of the -sin(pi x) initial condition."""
    if nu <= 0:
        raise ValueError("nu must be positive")
    c = 1.0 / (2.0 * nu * math.pi)
    return np.exp(c) * np.exp(-np.cos(np.pi * np.asarray(x)) * c)


def exact_u(x, t, cfg=None, rule=None):
    """Exact solution at coordinates x (scalar or array) and time t.

    For t below T_EPS the initial condition -sin(pi x) is returned; the
    quadrature form is singular there and tends to it analytically.
    """
    cfg = cfg or BurgersConfig()
    rule = rule or gauss_hermite(cfg.quad_order)
    x = np.asarray(x, dtype=float)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t < T_EPS:
        out = -np.sin(np.pi * x)
        return out if out.ndim else float(out)
    spread = math.sqrt(4.0 * cfg.nu * t)
    c = 1.0 / (2.0 * cfg.nu * math.pi)
    # exponents reach +-1/(2 nu pi); shift by the row max before exp,
    # the shift cancels between numerator and denominator
    expo = -np.cos(np.pi * (x[..., None] - rule.nodes * spread)) * c
    shift = expo.max(axis=-1, keepdims=True)
    g = np.exp(expo - shift)
    numer = 4.0 * cfg.nu * np.sum(g * (rule.weights * rule.nodes), axis=-1)
    denom = spread * np.sum(g * rule.weights, axis=-1)
    if np.any(np.abs(denom) < 1e-300):
        raise ArithmeticError("quadrature denominator underflow")
    out = numer / denom
    return out if out.ndim else float(out)


def generate_snapshots(cfg=None):
    """Sample the exact solution on the configured grid.

    Returns a SnapshotMatrix with one column per time sample, the first
    being the initial condition.  Deterministic: no randomness involved.
    """
    cfg = cfg or BurgersConfig()
    rule = gauss_hermite(cfg.quad_order)
    x = cfg.x_grid
    t = cfg.t_grid
    values = np.empty((x.size, t.size))
    for j, tj in enumerate(t):
        values[:, j] = exact_u(x, tj, cfg, rule)
    return SnapshotMatrix(values=values, x=x, t=t)
