"""Galerkin solver for the complete singular integral equation.

The equation

    int_0^1 [S(x, xi) + K(x, xi)] phi(xi) dxi = -F(x) + C,     0 < x < 1,

with the fixed-singularity kernel S and a regular kernel K, is solved in
the bounded class by expanding phi in the spectral basis phi_j.  The image
S[phi_j] = N_{j+1} - cos((j+1) pi x) and cosine orthogonality turn the
equation into the infinite algebraic system

    n = 0:      sum_j (N_{j+1} + k_{0j}) b_j = C - f_0,
    n >= 1:     -b_{n-1}/2 + sum_j k_{nj} b_j = -f_n,

with k_{nj} the double cosine moments of K against phi_j and f_n the
cosine moments of F.  The rows n = 1..N are truncated and solved densely;
the n = 0 row then defines C and doubles as the solvability condition,
to which it is algebraically identical.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .spectral import SpectralBasis, N_coeff, M_coeff, build_basis

#: condition-number ceiling before the truncated system counts as singular
COND_LIMIT = 1e12


class SingularSystemError(RuntimeError):
    """Truncated system numerically rank-deficient."""


@dataclass(frozen=True)
class KernelSpec:
    """Evaluatable regular kernel with its singular parameter.

    regular_part(x, xi) must accept broadcastable arrays and return finite
    values on the open square and the diagonal; corner growth (toward
    xi = x = 0 and xi = x = 1) is allowed since quadrature nodes are
    interior midpoints.
    """

    beta: float
    regular_part: Callable
    name: str = "kernel"


@dataclass(frozen=True)
class SolveConfig:
    """Truncation order and Gauss node counts.

    N is the truncation parameter as reported in the reference tables: the
    dense system keeps the cosine rows n = 1 .. N-1 and the basis modes
    j = 0 .. N-2.  Defaults follow the reference setup (N = 17, 200/210
    nodes); unequal t1 and t2 keep the two midpoint grids from sharing
    nodes.
    """

    N: int = 17
    t1: int = 200
    t2: int = 210
    series_tol: float = 1e-12
    pv_nodes: int = 512

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("truncation order must be positive")
        if self.t1 < self.N:
            raise ValueError("t1 must be at least N to avoid cosine aliasing")
        if min(self.t1, self.t2) < self.N:
            raise ValueError("node counts must be at least N")


@dataclass(frozen=True)
class Solution:
    """Truncated solution phi(x) = sum_j b_j phi_j(x) with its constant."""

    basis: SpectralBasis
    b: np.ndarray
    constant_C: float
    config: SolveConfig
    residual_report: dict = field(default_factory=dict)

    def evaluate(self, x):
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        vals = self.b @ self.basis.phi_matrix(x_arr)[: len(self.b)]
        return vals if np.ndim(x) else float(vals[0])


def evaluate(solution: Solution, x):
    """Value of the truncated series; exactly zero at the endpoints."""
    return solution.evaluate(x)


def _midpoints(t: int) -> np.ndarray:
    return (2.0 * np.arange(1, t + 1) - 1.0) / (2.0 * t)


def fourier_load_coeffs(F, t1: int, n_max: int) -> np.ndarray:
    """Cosine moments f_n = int_0^1 F(x) cos(n pi x) dx, n = 0..n_max.

    Midpoint rule on t1 nodes, which is the Gauss-Chebyshev rule under
    zeta = cos(pi x); exact for cosine harmonics below the aliasing limit,
    hence the precondition n_max < t1.
    """
    if n_max >= t1:
        raise ValueError("n_max must stay below the node count")
    x = _midpoints(t1)
    n = np.arange(n_max + 1)
    return np.cos(np.pi * np.outer(n, x)) @ np.asarray(F(x), dtype=float) / t1


def kernel_matrix(kernel: KernelSpec, basis: SpectralBasis,
                  config: SolveConfig, n_max: int) -> np.ndarray:
    """Moments k_{nj} = int int K(x, xi) phi_j(xi) cos(n pi x) dxi dx.

    Double midpoint rule with t1 x-nodes and t2 xi-nodes; nodes are
    interior, so the fixed-singularity corners are never touched.
    Returns shape (n_max+1, n_max+1) with j = 0..n_max columns.
    """
    if basis.max_degree < n_max:
        raise ValueError("basis table too small for requested moments")
    x = _midpoints(config.t1)
    xi = _midpoints(config.t2)
    kmat = np.asarray(kernel.regular_part(x[:, None], xi[None, :]), dtype=float)
    pmat = basis.phi_matrix(xi)[: n_max + 1]
    cosmat = np.cos(np.pi * np.outer(np.arange(n_max + 1), x))
    return cosmat @ kmat @ pmat.T / (config.t1 * config.t2)


def solve(kernel: KernelSpec, F, config: SolveConfig | None = None,
          diagnostics: bool = True) -> Solution:
    """Solve the complete equation for 0 < |beta| < 1.

    Assembles the truncated rows n = 1..N, solves the dense system with
    partial-pivot LU, then recovers C from the n = 0 row.  The residual
    report carries the linear-system residual, the solvability-identity
    residual (exactly the n = 0 row restated through the weight moments),
    the regularization-constant cross-check of C, and, when diagnostics is
    set, the full equation residual at five interior points.
    """
    config = config or SolveConfig()
    rows = config.N - 1
    basis = build_basis(kernel.beta, max(rows, 1))
    f = fourier_load_coeffs(F, config.t1, rows)
    k = kernel_matrix(kernel, basis, config, rows)

    a = k[1:, :rows].copy()
    a[np.arange(rows), np.arange(rows)] -= 0.5
    cond = np.linalg.cond(a) if rows else 1.0
    if cond > COND_LIMIT:
        raise SingularSystemError(
            f"truncated system is numerically singular (cond {cond:.2e})"
        )
    if config.N > 25:
        warnings.warn(
            f"truncation order {config.N} is beyond the stable range; "
            f"condition number {cond:.2e}",
            stacklevel=2,
        )
    b = np.linalg.solve(a, -f[1:]) if rows else np.zeros(0)

    n_coeffs = np.array([N_coeff(basis, j + 1) for j in range(rows)])
    c = float(f[0] + (n_coeffs + k[0, :rows]) @ b)

    report = {"condition_number": float(cond),
              "linear_residual": float(np.max(np.abs(a @ b + f[1:])))
              if rows else 0.0}
    m_coeffs = np.array([M_coeff(basis, n) for n in range(rows + 1)])
    lhs = m_coeffs[0] * (c - f[0] - k[0, :rows] @ b)
    rhs = 2.0 * m_coeffs[1:] @ (f[1:] + k[1:, :rows] @ b)
    report["solvability_identity"] = float(abs(lhs - rhs))

    solution = Solution(basis=basis, b=b, constant_C=c, config=config,
                        residual_report=report)
    if diagnostics:
        _attach_diagnostics(solution, kernel, F, report)
    return solution


def _attach_diagnostics(solution: Solution, kernel: KernelSpec, F, report):
    from . import oracle
    from .regimes import classify, solvability_functional

    xs = np.linspace(0.1, 0.9, 5)
    rule = oracle.PVRule(nodes=solution.config.pv_nodes)
    res = oracle.full_residual(solution, kernel, F, xs, rule)
    report["equation_residual_max"] = float(np.max(np.abs(res)))

    # cross-check of C through the regularization constant: C equals the
    # weight functional of F + K[phi]
    regime = classify(kernel.beta)
    nodes = solution.config.pv_nodes

    def load_plus_k(x):
        return (np.asarray(F(x), dtype=float)
                + oracle.apply_K(kernel, solution.evaluate, x, nodes))

    c_reg = (np.sin(np.pi * solution.basis.rho1) / 2.0
             * solvability_functional(regime, load_plus_k, nodes))
    report["regularization_constant_gap"] = abs(c_reg - solution.constant_C)
