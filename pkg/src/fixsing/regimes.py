"""Regimes of the singular parameter and the characteristic-equation inverses.

The characteristic operator is

    S[phi](x) = int_0^1 [ (1/2) cot(pi (xi - x)/2)
                        + (beta/2) cot(pi (xi + x)/2) ] phi(xi) dxi

on (0, 1), acting on Hoelder functions bounded at the endpoints.  Solvability
and the closed-form inverse depend on where beta sits relative to the unit
interval; this module classifies beta, exposes the solvability weight V and
the functional int V f, evaluates the inverse S^{-1}[f] by principal-value
quadrature of the closed forms, and reports the endpoint behavior of the
solution.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._quad import (gauss_jacobi, graded_rule, log_cot_half, log_tan_rule,
                    safe_ratio)

#: relative size of int V f below which a load counts as solvable
SOLVABILITY_RTOL = 1e-6


class RegimeKind(enum.Enum):
    ZERO = "zero"
    INSIDE_UNIT = "inside-unit"
    PLUS_ONE = "plus-one"
    MINUS_ONE = "minus-one"
    ABOVE_ONE = "above-one"
    BELOW_MINUS_ONE = "below-minus-one"


class Branch(enum.Enum):
    """Solution classes for beta < -1: which endpoint the solution vanishes at."""

    VANISH_AT_ZERO = "vanish-at-zero"
    VANISH_AT_ONE = "vanish-at-one"


@dataclass(frozen=True)
class Regime:
    """Classified singular parameter with its derived exponents.

    delta and rho1 are set for |beta| < 1 (rho1 also at beta = 0, where it
    equals 3/4); epsilon is the logarithmic frequency parameter for
    |beta| > 1; branch selects the solution class for beta < -1.
    """

    beta: float
    kind: RegimeKind
    delta: float | None = None
    rho1: float | None = None
    epsilon: float | None = None
    branch: Branch = Branch.VANISH_AT_ZERO

    @property
    def weight_exponent(self) -> float:
        """Exponent 2 rho1 - 1 of the solvability weight for |beta| < 1."""
        if self.rho1 is None:
            raise ValueError("weight exponent is defined only for |beta| < 1")
        return 2.0 * self.rho1 - 1.0


@dataclass(frozen=True)
class EndpointAsymptotics:
    exponent_at_0: float
    exponent_at_1: float
    oscillatory_at_0: bool
    oscillatory_at_1: bool
    log_frequency: float


def classify(beta: float, branch: Branch = Branch.VANISH_AT_ZERO) -> Regime:
    """Classify beta and populate the derived exponents.

    For beta < -1 the branch defaults to VANISH_AT_ZERO and may be
    overridden by the caller.
    """
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError("beta must be finite")
    if beta == 0.0:
        return Regime(beta, RegimeKind.ZERO, rho1=0.75, branch=branch)
    if abs(beta) < 1.0:
        delta = math.atan(math.sqrt(1.0 - beta * beta) / beta) / math.pi
        rho1 = 0.5 + delta / 2.0 if beta > 0.0 else 1.0 + delta / 2.0
        return Regime(beta, RegimeKind.INSIDE_UNIT, delta=delta, rho1=rho1,
                      branch=branch)
    if beta == 1.0:
        return Regime(beta, RegimeKind.PLUS_ONE, branch=branch)
    if beta == -1.0:
        return Regime(beta, RegimeKind.MINUS_ONE, branch=branch)
    eps = math.log(abs(beta) + math.sqrt(beta * beta - 1.0)) / (2.0 * math.pi)
    kind = RegimeKind.ABOVE_ONE if beta > 1.0 else RegimeKind.BELOW_MINUS_ONE
    return Regime(beta, kind, epsilon=eps, branch=branch)


def solvability_weight(regime: Regime, x):
    """Weight V(x) of the solvability condition int_0^1 V(x) f(x) dx = 0.

    Rows by regime: (sin pi x)^(-1/2) cos(pi x/2 - pi/4) at beta = 0;
    tan^e(pi x/2) + cot^e(pi x/2) with e = 2 rho1 - 1 for 0 < |beta| < 1;
    cos(2 eps log tan(pi x/2)) for beta > 1; the branch-dependent
    tan^{+-1}(pi x/2) cos(2 eps log tan(pi x/2)) for beta < -1.
    The degenerate ends: V = 1 at beta = 1 (plain mean-zero condition) and
    V = 0 at beta = -1 (no condition; solution defined up to a constant).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise ValueError("weight is defined on the open interval (0, 1)")
    half = np.pi * x / 2.0
    kind = regime.kind
    if kind is RegimeKind.ZERO:
        out = np.cos(half - np.pi / 4.0) / np.sqrt(np.sin(np.pi * x))
    elif kind is RegimeKind.INSIDE_UNIT:
        e = regime.weight_exponent
        t = np.tan(half)
        out = t**e + t**(-e)
    elif kind is RegimeKind.ABOVE_ONE:
        out = np.cos(2.0 * regime.epsilon * np.log(np.tan(half)))
    elif kind is RegimeKind.BELOW_MINUS_ONE:
        t = np.tan(half)
        sgn = 1.0 if regime.branch is Branch.VANISH_AT_ONE else -1.0
        out = t**sgn * np.cos(2.0 * regime.epsilon * np.log(t))
    elif kind is RegimeKind.PLUS_ONE:
        out = np.ones_like(x)
    else:  # MINUS_ONE: always solvable
        out = np.zeros_like(x)
    return out if x.ndim else float(out)


def _jacobi_pairs(regime: Regime):
    """Exponent pairs and prefactors of the weight after zeta = cos(pi x).

    Under the cosine substitution each tan/cot power becomes a Jacobi
    weight (1-zeta)^a (1+zeta)^b times the arccos Jacobian, so the
    functional splits into Gauss-Jacobi pieces that are exact for
    polynomial data.
    """
    if regime.kind is RegimeKind.ZERO:
        return [(-0.75, -0.25, 0.5 / np.pi), (-0.25, -0.75, 0.5 / np.pi)]
    e = regime.weight_exponent
    return [
        ((e - 1.0) / 2.0, -(e + 1.0) / 2.0, 1.0 / np.pi),
        (-(e + 1.0) / 2.0, (e - 1.0) / 2.0, 1.0 / np.pi),
    ]


def solvability_functional(regime: Regime, f, nodes: int = 512) -> float:
    """Quadrature value of int_0^1 V(x) f(x) dx; zero signals solvability.

    For |beta| < 1 the endpoint singularities of V are absorbed exactly into
    Gauss-Jacobi weights under zeta = cos(pi x).  The oscillatory regimes
    |beta| > 1 use the graded endpoint rule in x.
    """
    kind = regime.kind
    if kind is RegimeKind.MINUS_ONE:
        return 0.0
    if kind in (RegimeKind.ZERO, RegimeKind.INSIDE_UNIT):
        n = min(max(nodes // 2, 8), 256)
        total = 0.0
        for a, b, pref in _jacobi_pairs(regime):
            z, w = gauss_jacobi(n, a, b)
            total += pref * float(np.dot(w, f(np.arccos(z) / np.pi)))
        return total
    if kind is RegimeKind.PLUS_ONE:
        x, w = graded_rule(nodes)
        return float(np.dot(w, f(x)))
    # oscillatory weights: integrate on the log-tangent axis, where the
    # weight is a plain cosine (times e^{+-s} for beta < -1)
    s, xi, w = log_tan_rule(nodes)
    v = np.cos(2.0 * regime.epsilon * s)
    if kind is RegimeKind.BELOW_MINUS_ONE:
        sgn = 1.0 if regime.branch is Branch.VANISH_AT_ONE else -1.0
        v = v * np.exp(sgn * s)
    return float(np.dot(w, v * f(xi)))


def solvability_residual(regime: Regime, f, nodes: int = 256) -> float:
    """Relative size |int V f| / int V |f| used to gate the inverse."""
    if regime.kind is RegimeKind.MINUS_ONE:
        return 0.0
    num = abs(solvability_functional(regime, f, nodes))
    den = solvability_functional(
        regime, lambda t: np.abs(np.asarray(f(t))), nodes
    )
    if regime.kind is RegimeKind.BELOW_MINUS_ONE or den == 0.0:
        # the oscillatory weight is sign-indefinite; fall back to an
        # absolute scale
        den = max(abs(den), 1.0)
    return num / abs(den)


def _inverse_oscillatory(regime: Regime, f, xs, nodes: int):
    """Inverse for |beta| > 1 on the log-tangent axis.

    With s = log tan(pi xi/2) and s_x its value at x, the kernel becomes

        sin(pi x) cos(2 eps (s - s_x)) [e^{+-(s - s_x)}]
            / (tanh s_x - tanh s),

    a slow cosine with sech-decaying measure; subtraction of
    sin(pi x) f(x) removes the moving pole (its compensator integral is
    zero) and the truncated panel rule converges geometrically.
    """
    s, xi, w = log_tan_rule(nodes)
    sx = np.log(np.tan(np.pi * xs / 2.0))
    ds = s[None, :] - sx[:, None]
    sinx = np.sin(np.pi * xs)[:, None]
    h = sinx * np.cos(2.0 * regime.epsilon * ds)
    if regime.kind is RegimeKind.BELOW_MINUS_ONE:
        sgn = 1.0 if regime.branch is Branch.VANISH_AT_ONE else -1.0
        h = h * np.exp(sgn * ds)
    fx = np.asarray(f(xs), dtype=float)
    num = h * np.asarray(f(xi), dtype=float)[None, :] - sinx * fx[:, None]
    den = np.tanh(sx)[:, None] - np.tanh(s)[None, :]
    return safe_ratio(num, den) @ w


def _inverse_inside_unit(e: float, f, xs, nodes: int):
    """Inverse for |beta| < 1 by exact Gauss-Jacobi subtraction.

    With T = tan(pi x/2) and zeta = cos(pi x), the inverse splits into two
    Jacobi-weighted finite Hilbert transforms,

      phi(x) = (sin pi x / 2) [T^-e I_plus(zeta) + T^e I_minus(zeta)],
      I_pm = (1/pi) pv-int (1-h)^((pm e - 1)/2) (1+h)^((mp e - 1)/2)
                     f~(h) / (h - zeta) dh,

    and after subtracting f~(zeta) the two compensator transforms of the
    bare weights cancel exactly, leaving polynomial-exact Gauss-Jacobi
    sums.  (The beta = 0 inverse is this formula at e = 1/2.)
    """
    n = min(max(nodes // 2, 16), 256)
    zeta = np.cos(np.pi * xs)
    fz = np.asarray(f(xs), dtype=float)
    parts = []
    for sign in (+1.0, -1.0):
        a = (sign * e - 1.0) / 2.0
        h, w = gauss_jacobi(n, a, -1.0 - a)
        num = np.asarray(f(np.arccos(h) / np.pi), dtype=float)[None, :] - fz[:, None]
        den = h[None, :] - zeta[:, None]
        tiny = np.abs(den) < 1e-13
        den = np.where(tiny, 1.0, den)
        ratio = num / den
        if tiny.any():
            ratio[np.nonzero(tiny)] = 0.0
        parts.append(ratio @ w)
    t_pow = np.tan(np.pi * xs / 2.0) ** e
    return np.sin(np.pi * xs) / (2.0 * np.pi) * (parts[0] / t_pow
                                                 + parts[1] * t_pow)


def inverse_characteristic(regime: Regime, f, x, nodes: int = 512,
                           check_solvability: bool = True):
    """Evaluate S^{-1}[f] at interior points by principal-value quadrature.

    f must be a vectorized callable on [0, 1] satisfying the regime's
    solvability condition; a residual above SOLVABILITY_RTOL triggers a
    warning, not an error.  For beta < -1 the formula converges only for
    loads decaying at the oscillatory endpoint; the branch's arbitrary
    additive constant (beta = -1) is fixed to zero.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= 0.0) or np.any(xs >= 1.0):
        raise ValueError("the inverse is defined on the open interval (0, 1)")
    if check_solvability and regime.kind is not RegimeKind.MINUS_ONE:
        res = solvability_residual(regime, f)
        if res > SOLVABILITY_RTOL:
            warnings.warn(
                f"load fails the solvability condition (residual {res:.2e}); "
                "the returned function will not solve the equation",
                stacklevel=2,
            )

    kind = regime.kind
    if kind in (RegimeKind.PLUS_ONE, RegimeKind.MINUS_ONE):
        vals = _inverse_at_unit_beta(regime, f, xs, nodes)
    elif kind in (RegimeKind.ZERO, RegimeKind.INSIDE_UNIT):
        e = 0.5 if kind is RegimeKind.ZERO else regime.weight_exponent
        vals = _inverse_inside_unit(e, f, xs, nodes)
    else:
        vals = _inverse_oscillatory(regime, f, xs, nodes)
    return vals if np.ndim(x) else float(vals[0])


def _inverse_at_unit_beta(regime: Regime, f, xs, nodes):
    """Closed forms at beta = +-1 via the half-cot kernels.

    phi(x) = -(1/2) int [cot(pi(xi-x)/2) -+ cot(pi(xi+x)/2)] f(xi) dxi,
    with the principal value handled by subtracting f(x) and integrating
    the cot kernel exactly.
    """
    xi, w = graded_rule(nodes)
    fx = np.asarray(f(xs), dtype=float)
    fxi = np.asarray(f(xi), dtype=float)
    moving = np.tan(np.pi * (xi[None, :] - xs[:, None]) / 2.0)
    diff = fxi[None, :] - fx[:, None]
    pv = (_safe_cot(moving, diff)) @ w + fx * (2.0 / np.pi) * log_cot_half(xs)
    fixed = np.cos(np.pi * (xi[None, :] + xs[:, None]) / 2.0) / np.sin(
        np.pi * (xi[None, :] + xs[:, None]) / 2.0
    )
    sign = -1.0 if regime.kind is RegimeKind.PLUS_ONE else 1.0
    return -0.5 * (pv + sign * (fixed * fxi[None, :]) @ w)


def _safe_cot(tan_half, diff):
    """diff * cot with the removable diagonal point zeroed out."""
    tiny = np.abs(tan_half) < 1e-13
    t = np.where(tiny, 1.0, tan_half)
    out = diff / t
    out[np.nonzero(tiny)] = 0.0
    return out


def endpoint_asymptotics(regime: Regime) -> EndpointAsymptotics:
    """Endpoint behavior of the bounded-class solution.

    |beta| < 1: algebraic decay x^(2 - 2 rho1) at both ends (1/2 at beta = 0).
    beta > 1: linear decay modulated by cos/sin of 2 eps log distance.
    beta < -1: one end bounded and oscillatory (exponent 0), the other
    vanishing like the squared distance, by branch.  beta = 1 continues the
    |beta| < 1 family (exponent 1); beta = -1 gives a merely bounded end
    state (the solution carries a free additive constant).
    """
    kind = regime.kind
    if kind is RegimeKind.ZERO:
        return EndpointAsymptotics(0.5, 0.5, False, False, 0.0)
    if kind is RegimeKind.INSIDE_UNIT:
        e = 2.0 - 2.0 * regime.rho1
        return EndpointAsymptotics(e, e, False, False, 0.0)
    if kind is RegimeKind.PLUS_ONE:
        return EndpointAsymptotics(1.0, 1.0, False, False, 0.0)
    if kind is RegimeKind.MINUS_ONE:
        return EndpointAsymptotics(0.0, 0.0, False, False, 0.0)
    freq = 2.0 * regime.epsilon
    if kind is RegimeKind.ABOVE_ONE:
        return EndpointAsymptotics(1.0, 1.0, True, True, freq)
    if regime.branch is Branch.VANISH_AT_ZERO:
        return EndpointAsymptotics(2.0, 0.0, True, True, freq)
    return EndpointAsymptotics(0.0, 2.0, True, True, freq)
