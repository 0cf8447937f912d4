"""Quadrature toolkit: graded composite Gauss rules and principal-value cores.

Everything here works on [0, 1].  The integrands this package meets are
analytic inside the interval but carry algebraic singularities (powers
x^a with -1 < a < 1) or bounded log-oscillations at the endpoints, so the
workhorse rule is a composite Gauss-Legendre rule on panels that shrink
geometrically toward 0 and 1.  On each panel the integrand is analytic and
the rule converges geometrically; the leftover sliver at the ends is
O(2^(-levels * (1 + a))) and negligible for the level counts used.

Principal-value integrals are reduced to ordinary ones by singularity
subtraction.  After subtracting the value at the singular point, the
integrand has a removable singularity (it is analytic across it), so the
same panel rule applies unchanged and no panel needs to be aligned with
the singular point.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi


@lru_cache(maxsize=64)
def _gauss_cache(order: int):
    return leggauss(order)


def graded_rule(nodes: int = 512, levels: int = 12):
    """Composite Gauss-Legendre rule on [0, 1] graded toward both endpoints.

    Panels: [0, 2^-levels], [2^-levels, 2^-(levels-1)], ..., [1/4, 1/2] and
    their mirror images.  `nodes` is the total node budget; the per-panel
    order is nodes // (2 * levels), at least 4.

    Returns (x, w) as flat arrays.
    """
    if nodes < 16:
        raise ValueError("need at least 16 nodes")
    return _graded_rule_cached(int(nodes), int(levels))


@lru_cache(maxsize=32)
def _graded_rule_cached(nodes: int, levels: int):
    breaks = [0.0] + [2.0 ** (-k) for k in range(levels, 0, -1)]
    breaks += [1.0 - 2.0 ** (-k) for k in range(2, levels + 1)] + [1.0]
    breaks = np.array(breaks)
    # even order: a Gauss-Legendre rule of even order has no node at the
    # panel midpoint, so subtracted-singularity integrands evaluated at
    # panel-midpoint singular points never hit a node
    order = max(4, (nodes // (len(breaks) - 1)) & ~1)
    gx, gw = _gauss_cache(order)
    a = breaks[:-1]
    h = np.diff(breaks)
    x = (a[:, None] + 0.5 * h[:, None] * (gx[None, :] + 1.0)).ravel()
    w = (0.5 * h[:, None] * gw[None, :]).ravel()
    return x, w


def integrate_01(g, nodes: int = 512, levels: int = 12) -> float:
    """Integrate a vectorized callable over [0, 1] with the graded rule."""
    x, w = graded_rule(nodes, levels)
    return float(np.dot(w, g(x)))


def gauss_jacobi(n: int, alpha: float, beta: float):
    """Nodes and weights for int_{-1}^{1} (1-z)^alpha (1+z)^beta f(z) dz."""
    return _gauss_jacobi_cached(int(n), float(alpha), float(beta))


@lru_cache(maxsize=64)
def _gauss_jacobi_cached(n, alpha, beta):
    with np.errstate(invalid="ignore"):
        return roots_jacobi(n, alpha, beta)


def log_tan_rule(nodes: int = 512, smax: float = 34.0):
    """Composite Gauss rule on the line for the map s = log tan(pi x / 2).

    Under this substitution tan(pi xi/2) = e^s, cos(pi xi) = -tanh(s),
    sin(pi xi) = sech(s) and dxi = sech(s) ds / pi, so endpoint
    log-oscillations cos(2 eps log tan(pi xi/2)) become plain slow cosines
    in s while the measure decays like e^-|s|.  Truncation at |s| = smax
    is below machine precision.

    Returns (s, xi, w) with w the quadrature weights including the
    sech(s)/pi Jacobian.
    """
    return _log_tan_rule_cached(int(nodes), float(smax))


@lru_cache(maxsize=32)
def _log_tan_rule_cached(nodes: int, smax: float):
    n_panels = max(8, int(smax))
    order = max(6, (nodes // n_panels) & ~1)
    gx, gw = _gauss_cache(order)
    edges = np.linspace(-smax, smax, n_panels + 1)
    a = edges[:-1]
    h = np.diff(edges)
    s = (a[:, None] + 0.5 * h[:, None] * (gx[None, :] + 1.0)).ravel()
    w = (0.5 * h[:, None] * gw[None, :]).ravel()
    xi = (2.0 / np.pi) * np.arctan(np.exp(s))
    # keep the far tail strictly inside (0, 1) after rounding
    xi = np.minimum(xi, np.nextafter(1.0, 0.0))
    w = w / (np.pi * np.cosh(s))
    return s, xi, w


def safe_ratio(num, den, tol: float = 1e-13):
    """num/den with entries zeroed where den (and by contract num) vanish."""
    tiny = np.abs(den) < tol
    if not tiny.any():
        return num / den
    den = np.where(tiny, 1.0, den)
    out = num / den
    out[np.nonzero(tiny)] = 0.0
    return out


def log_cot_half(x):
    """ln cot(pi x / 2), the primitive driving the cot-kernel compensators."""
    x = np.asarray(x, dtype=float)
    return np.log(np.cos(np.pi * x / 2.0)) - np.log(np.sin(np.pi * x / 2.0))
