"""Spectral basis, its constants, and the series solution of the
characteristic equation."""

import math

import numpy as np
import pytest

from fixsing.spectral import (J_integral, M_coeff, N_coeff, basis_from_rho1,
                              build_basis, characteristic_series_solve,
                              quadratic_load_constant, tan_moment_sequence)
from fixsing.specfun import chebyshev_T, hyp3F2_terminating
from fixsing.regimes import classify, solvability_functional
from fixsing import oracle


def linear_load_coeffs(n_max):
    """Exact cosine moments of F(x) = x."""
    n = np.arange(n_max + 1)
    return np.where(n == 0, 0.5,
                    ((-1.0) ** n - 1.0) / (np.pi ** 2 * np.maximum(n, 1) ** 2))


def test_build_basis_rejects_degenerate_beta():
    for beta in (0.0, 1.0, -1.0, 1.5):
        with pytest.raises(ValueError):
            build_basis(beta, 4)


def test_build_basis_warns_beyond_stable_degree():
    with pytest.warns(UserWarning, match="unstable"):
        build_basis(0.5, 28)


def test_leading_coefficient_closed_form():
    # q_0 is the single coefficient -1 / sin(pi alpha)
    for rho1 in (2.0 / 3.0, 0.55, 0.9):
        basis = basis_from_rho1(rho1, 2)
        assert basis._c_rho[0, 0] == pytest.approx(
            -1.0 / math.sin(math.pi * rho1), rel=1e-13)
        assert basis._c_conj[0, 0] == pytest.approx(
            -1.0 / math.sin(math.pi * (1.0 - rho1)), rel=1e-13)
    basis = build_basis(0.5, 2)
    assert basis._c_rho[0, 0] == pytest.approx(-2.0 / math.sqrt(3.0),
                                               rel=1e-13)


def test_top_coefficient_is_single_term():
    from fixsing.specfun import pochhammer
    basis = build_basis(0.5, 6)
    alpha = basis.rho1
    for j in range(7):
        m = j + 1
        term = (pochhammer(-j - 1.0, m) * pochhammer(j + 1.0, m)
                * pochhammer(alpha, 0)
                / (pochhammer(0.5, m) * math.factorial(m)))
        want = term / (2.0 * math.sin(math.pi * alpha))
        assert basis._c_rho[j, j] == pytest.approx(want, rel=1e-10)


def test_phi_vanishes_exactly_at_endpoints():
    basis = build_basis(0.5, 8)
    for j in range(9):
        assert basis.phi(j, 0.0) == 0.0
        assert basis.phi(j, 1.0) == 0.0


def test_phi_midpoint_value():
    # phi_0(1/2) = -1/sin(pi rho1); equals -sqrt(2) at the rho1 = 3/4 limit
    basis = build_basis(0.5, 2)
    assert basis.phi(0, 0.5) == pytest.approx(-2.0 / math.sqrt(3.0), rel=1e-13)
    limit = basis_from_rho1(0.75, 2)
    assert limit.phi(0, 0.5) == pytest.approx(-math.sqrt(2.0), rel=1e-13)


@pytest.mark.parametrize("beta", [0.3, 0.5])
def test_phi_root_counts(beta):
    basis = build_basis(beta, 8)
    grid = np.linspace(1e-4, 1.0 - 1e-4, 6001)
    for j in range(9):
        signs = np.sign(basis.phi(j, grid))
        flips = int(np.sum(signs[:-1] * signs[1:] < 0))
        assert flips == j


@pytest.mark.parametrize("beta", [0.3, 0.5])
def test_parity_orthogonality(beta):
    from fixsing.verify import _parity_product
    basis = build_basis(beta, 7)
    for m in range(4):
        for k in range(4):
            val = _parity_product(basis, 2 * m + 1, 2 * k)
            assert abs(val) < 1e-8


def test_phi_endpoint_power_law():
    for beta in (0.5, -0.5):
        basis = build_basis(beta, 4)
        want = 2.0 - 2.0 * basis.rho1
        for j in (0, 2):
            pts = np.array([1e-2, 1e-3, 1e-4])
            vals = np.abs(basis.phi(j, pts))
            slope = np.polyfit(np.log(pts), np.log(vals), 1)[0]
            assert abs(slope - want) / want < 0.05


def test_N_coefficients():
    basis = build_basis(0.5, 4)
    assert N_coeff(basis, 1) == 0.0
    assert N_coeff(basis, 0) == pytest.approx(1.0, abs=1e-14)
    e = 2.0 * basis.rho1 - 1.0
    assert N_coeff(basis, 2) == pytest.approx(e * e, abs=1e-13)


def test_M_coefficients():
    basis = build_basis(0.5, 4)
    assert M_coeff(basis, 1) == 0.0
    assert M_coeff(basis, 0) == pytest.approx(4.0 / math.sqrt(3.0), rel=1e-13)
    assert M_coeff(basis, 0) == pytest.approx(2.3094011, abs=1e-7)
    # N and M proportional through half the sine of pi rho1
    for j in range(0, 12):
        assert N_coeff(basis, j) == pytest.approx(
            math.sin(math.pi * basis.rho1) / 2.0 * M_coeff(basis, j),
            abs=1e-14)


def test_M_matches_weight_functional():
    reg = classify(0.5)
    basis = build_basis(0.5, 4)
    for j in (2, 4, 6, 8):
        quad_val = solvability_functional(
            reg, lambda t, j=j: np.cos(j * np.pi * t))
        assert M_coeff(basis, j) == pytest.approx(quad_val, abs=1e-8)


def test_moment_recurrence_matches_terminating_sums():
    # the recurrence and the hypergeometric finite sum are two routes to
    # the same even cosine moments; compare on the float-stable range
    for rho1 in (2.0 / 3.0, 0.8):
        p = tan_moment_sequence(rho1, 16)
        for j in range(0, 17, 2):
            assert p[j] == pytest.approx(hyp3F2_terminating(j, rho1, 1.0),
                                         abs=1e-12)


@pytest.mark.parametrize("beta", [-0.7, -0.3, 0.3, 0.5, 0.8])
def test_spectral_relation_via_forward_operator(beta):
    basis = build_basis(beta, 8)
    xs = np.linspace(1.0, 21.0, 21) / 22.0
    rule = oracle.PVRule(512)
    for j in range(9):
        got = oracle.apply_S(lambda t, j=j: basis.phi(j, t), beta, xs, rule)
        want = N_coeff(basis, j + 1) - np.cos((j + 1) * np.pi * xs)
        np.testing.assert_allclose(got, want, atol=1e-5)


def test_series_solution_constant_for_linear_load():
    f = linear_load_coeffs(22)
    for beta in (0.25, 0.5, 0.75):
        basis = build_basis(beta, 20)
        sol = characteristic_series_solve(basis, f, 20)
        assert sol.constant_C == pytest.approx(0.5, abs=1e-12)


def test_series_solution_reference_values():
    # tabulated midpoint values of the truncated series for F(x) = x
    f = linear_load_coeffs(30)
    expected = {5: 0.445026, 10: 0.439400, 15: 0.440180, 20: 0.441492}
    for m0, want in expected.items():
        basis = build_basis(0.5, m0)
        sol = characteristic_series_solve(basis, f[:m0 + 2], m0)
        assert sol.evaluate(0.5) == pytest.approx(want, abs=5e-4)
    basis = build_basis(0.5, 20)
    sol = characteristic_series_solve(basis, f[:22], 20)
    assert sol.evaluate(0.25) == pytest.approx(0.371442, abs=5e-4)


def test_series_solution_coefficients_and_endpoints():
    f = linear_load_coeffs(10)
    basis = build_basis(0.5, 8)
    sol = characteristic_series_solve(basis, f[:10], 8)
    np.testing.assert_allclose(sol.coefficients, 2.0 * f[1:10], atol=0)
    assert sol.evaluate(0.0) == 0.0
    assert sol.evaluate(1.0) == 0.0


def test_series_solution_validates_input():
    basis = build_basis(0.5, 4)
    with pytest.raises(ValueError):
        characteristic_series_solve(basis, np.zeros(3), 4)
    with pytest.raises(ValueError):
        characteristic_series_solve(basis, np.zeros(10), 6)


def test_series_solves_equation_pointwise():
    # end-to-end residual of the truncated series under the forward
    # operator sits at the truncation plateau
    f = linear_load_coeffs(22)
    basis = build_basis(0.5, 20)
    sol = characteristic_series_solve(basis, f, 20)
    xs = np.array([0.2, 0.4, 0.6, 0.8])
    res = oracle.apply_S(sol.evaluate, 0.5, xs, oracle.PVRule(512))
    res = res + xs - sol.constant_C
    assert np.max(np.abs(res)) < 5e-3


def test_quadratic_load_constant_matches_weight_functional():
    # the partial sums converge to the weighted mean of x^2; reference
    # value from 30-digit tanh-sinh quadrature of the weighted mean
    rho1 = classify(0.5).rho1
    target = 0.348285685981702
    limit = quadratic_load_constant(rho1, 200_000)
    assert limit == pytest.approx(target, abs=1e-9)
    # in-repo cross-check through the weight functional (non-polynomial
    # data, so the Jacobi rule is only approximately exact)
    reg = classify(0.5)
    functional = (math.sin(math.pi * rho1) / 2.0
                  * solvability_functional(reg, lambda t: t * t))
    assert limit == pytest.approx(functional, abs=2e-5)
    # convergence from below with the slow 1/M tail
    c100 = quadratic_load_constant(rho1, 100)
    c1000 = quadratic_load_constant(rho1, 1000)
    assert c100 < c1000 < limit


def test_telescoping_moment_identity():
    # sum_j b_j M_{j+1} - sum_n b_{n-1} M_n vanishes identically
    basis = build_basis(0.5, 10)
    rng = np.random.default_rng(5)
    b = rng.normal(size=8)
    lhs = sum(b[j] * M_coeff(basis, j + 1) for j in range(8))
    rhs = sum(b[n - 1] * M_coeff(basis, n) for n in range(1, 9))
    assert lhs - rhs == 0.0


def test_J_integral_closed_form():
    assert J_integral(0.5, 0, 0.0) == pytest.approx(0.0, abs=1e-14)
    # j = 0 reduces to the bare weight times cot(pi alpha)
    for alpha, zeta in ((0.3, 0.2), (0.7, -0.5)):
        want = (1.0 / math.tan(math.pi * alpha)
                * (1.0 - zeta) ** (alpha - 1.0) * (1.0 + zeta) ** (-alpha))
        assert J_integral(alpha, 0, zeta) == pytest.approx(want, rel=1e-13)


def test_J_integral_domain():
    with pytest.raises(ValueError):
        J_integral(1.2, 1, 0.0)
    with pytest.raises(ValueError):
        J_integral(0.5, 1, 1.0)


def _pv_weighted_transform(alpha, j, zeta):
    # independent principal-value oracle: subtraction at the pole and
    # tanh-sinh quadrature for the endpoint-singular weight
    from mpmath import mp, mpf, quad as mpquad, log

    mp.dps = 25
    a, z = mpf(alpha), mpf(zeta)
    h = lambda e: (1 - e) ** (a - 1) * (1 + e) ** (-a) * chebyshev_T(j, float(e))
    hz = h(z)
    val = mpquad(lambda e: (h(e) - hz) / (e - z), [-1, z, 1])
    return float((val + hz * log((1 - z) / (1 + z))) / mp.pi)


@pytest.mark.parametrize("alpha,j,zeta", [
    (2.0 / 3.0, 2, 0.3),
    (0.4, 1, -0.2),
    (0.25, 4, 0.55),
    (0.55, 3, 0.0),
])
def test_J_integral_matches_pv_quadrature(alpha, j, zeta):
    assert J_integral(alpha, j, zeta) == pytest.approx(
        _pv_weighted_transform(alpha, j, zeta), abs=1e-6)
