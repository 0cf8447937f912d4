"""Acceptance gate: every criterion at its stated tolerance.

Each check prints one PASS/FAIL line (run with `pytest -s` to stream
them).  Three reference values are knowingly irreproducible from the
defining equations and fail honestly; the analysis lives in the project
decision notes:

* criterion 2b: the tabulated partial sums for the quadratic load match
  1/2 + pi^-2 sum 1/m^2 exactly, which is inconsistent with the printed
  series (and with the weighted-mean bound C < 1/2); the faithful series
  converges to 0.348286.
* criterion 5: the tabulated mid-crack values for stiffness ratios
  {0.3, 0.5, 2} do not solve the printed dominant equation; three
  independent discretizations agree on values ~1.4e-2 / ~4e-3 away, with
  forward-operator residuals at truncation level.
* criterion 6b: the quoted large-stiffness exponent 0.7111773 differs in
  the sixth decimal from the root of its own equation, 0.7111729.
"""

import time

import numpy as np
import pytest

from fixsing import (AntiplaneParams, PVRule, SolveConfig, antiplane_kernel,
                     apply_S, build_basis, cauchy_inverse, cauchy_solve,
                     characteristic_series_solve, classify,
                     endpoint_asymptotics, gamma0_root,
                     inverse_characteristic, plane_strain_coeffs,
                     plane_strain_kernel, quadratic_load_constant, solve,
                     u_weighted_cauchy_transform)
from fixsing.spectral import M_coeff, N_coeff
from fixsing.regimes import solvability_functional
from fixsing.specfun import (chebyshev_T, jacobi_chebyshev_integral_T,
                             jacobi_chebyshev_integral_U)
from fixsing.verify import _parity_product


def report(cid, ok, detail):
    print(f"ACCEPTANCE {cid}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {cid}: {detail}"


def linear_load_coeffs(n_max):
    n = np.arange(n_max + 1)
    return np.where(n == 0, 0.5,
                    ((-1.0) ** n - 1.0) / (np.pi ** 2 * np.maximum(n, 1) ** 2))


def test_criterion_1_characteristic_series_table():
    t0 = time.perf_counter()
    f = linear_load_coeffs(22)
    expected = {5: 0.445026, 10: 0.439400, 15: 0.440180, 20: 0.441492}
    errs = {}
    for m0, want in expected.items():
        basis = build_basis(0.5, m0)
        sol = characteristic_series_solve(basis, f[:m0 + 2], m0)
        errs[m0] = abs(sol.evaluate(0.5) - want)
    basis = build_basis(0.5, 20)
    quarter = characteristic_series_solve(basis, f, 20).evaluate(0.25)
    err_quarter = abs(quarter - 0.371442)
    elapsed = time.perf_counter() - t0
    ok = max(errs.values()) < 5e-4 and err_quarter < 5e-4 and elapsed < 1.0
    report(1, ok,
           f"series table errs {max(errs.values()):.1e}, quarter-point "
           f"err {err_quarter:.1e}, {elapsed:.2f}s")


def test_criterion_2a_linear_load_constant_exact():
    t0 = time.perf_counter()
    errs = []
    f = linear_load_coeffs(22)
    for beta in (0.25, 0.5, 0.75):
        basis = build_basis(beta, 20)
        sol = characteristic_series_solve(basis, f, 20)
        errs.append(abs(sol.constant_C - 0.5))
    elapsed = time.perf_counter() - t0
    ok = max(errs) < 1e-10 and elapsed < 1.0
    report("2a", ok, f"constant err {max(errs):.1e}, {elapsed:.2f}s")


def test_criterion_2b_quadratic_load_partial_sums():
    t0 = time.perf_counter()
    rho1 = classify(0.5).rho1
    c100 = quadratic_load_constant(rho1, 100)
    c1000 = quadratic_load_constant(rho1, 1000)
    elapsed = time.perf_counter() - t0
    err100 = abs(c100 - 0.665659)
    err1000 = abs(c1000 - 0.666565)
    ok = err100 < 2e-6 and err1000 < 2e-6 and elapsed < 1.0
    report("2b", ok,
           f"C(100)={c100:.6f} (ref 0.665659), C(1000)={c1000:.6f} "
           f"(ref 0.666565); faithful series converges to 0.348286")


def test_criterion_3_antiplane_node_study():
    t0 = time.perf_counter()
    kern = antiplane_kernel(AntiplaneParams(lam=0.5))
    errs = []
    for t1, t2, want in ((100, 110, 0.601067), (300, 310, 0.601123)):
        sol = solve(kern, lambda x: x, SolveConfig(N=17, t1=t1, t2=t2),
                    diagnostics=False)
        errs.append(abs(sol.evaluate(0.5) - want))
    elapsed = time.perf_counter() - t0
    ok = max(errs) < 1e-3 and elapsed < 30.0
    report(3, ok, f"node-study errs {max(errs):.1e}, {elapsed:.2f}s")


def test_criterion_4_antiplane_truncation_study():
    kern = antiplane_kernel(AntiplaneParams(lam=0.5))
    expected = {5: 0.582829, 10: 0.601814, 15: 0.602258, 20: 0.601812}
    errs = {}
    for n_cut, want in expected.items():
        sol = solve(kern, lambda x: x, SolveConfig(N=n_cut, t1=200, t2=210),
                    diagnostics=False)
        errs[n_cut] = abs(sol.evaluate(0.5) - want)
    ok = max(errs.values()) < 1e-3
    report(4, ok, f"truncation-study errs {max(errs.values()):.1e}")


@pytest.mark.parametrize("lam,want", [
    (0.3, 0.785573),
    (0.5, 0.640310),
    (2.0, 0.426399),
    (100.0, 0.326844),
])
def test_criterion_5_plane_strain_table(lam, want):
    params = plane_strain_coeffs(lam, 1.0, 0.3, 0.3)
    gamma0_root(params)
    kern = plane_strain_kernel(params)
    sol = solve(kern, lambda x: x, SolveConfig(N=10, t1=200, t2=210),
                diagnostics=False)
    got = sol.evaluate(0.5)
    err = abs(got - want)
    report(f"5[lambda={lam:g}]", err < 2e-3,
           f"phi(0.5)={got:.6f}, ref {want:.6f}, err {err:.1e}")


def test_criterion_6a_homogeneous_exponent():
    params = plane_strain_coeffs(1.0, 1.0, 0.3, 0.3)
    g = gamma0_root(params)
    ok = abs(g - 0.5) < 1e-10 and abs(params.beta_eff) < 1e-12
    report("6a", ok,
           f"gamma0 err {abs(g - 0.5):.1e}, beta_eff {params.beta_eff:.1e}")


def test_criterion_6b_large_stiffness_exponent():
    params = plane_strain_coeffs(1e8, 1.0, 0.3, 0.3)
    g = gamma0_root(params)
    err = abs(g - 0.7111773)
    report("6b", err < 1e-6,
           f"gamma0={g:.7f}, ref 0.7111773, err {err:.1e} "
           f"(the equation's own root is 0.7111729)")


def test_criterion_7_spectral_relation_suite():
    rule = PVRule(512)
    xs = np.linspace(1.0 / 12.0, 11.0 / 12.0, 11)
    worst = 0.0
    for beta in (-0.7, -0.3, 0.3, 0.5, 0.8):
        basis = build_basis(beta, 6)
        for j in range(7):
            got = apply_S(lambda t, j=j, b=basis: b.phi(j, t), beta, xs, rule)
            want = N_coeff(basis, j + 1) - np.cos((j + 1) * np.pi * xs)
            worst = max(worst, float(np.max(np.abs(got - want))))
    report(7, worst < 1e-5, f"spectral-relation worst err {worst:.1e}")


def test_criterion_8_orthogonality_and_roots():
    worst = 0.0
    for beta in (0.3, 0.5):
        basis = build_basis(beta, 7)
        for m in range(4):
            for k in range(4):
                worst = max(worst,
                            abs(_parity_product(basis, 2 * m + 1, 2 * k)))
    grid = np.linspace(1e-4, 1.0 - 1e-4, 6001)
    basis = build_basis(0.5, 8)
    roots_ok = True
    for j in range(9):
        signs = np.sign(basis.phi(j, grid))
        roots_ok &= int(np.sum(signs[:-1] * signs[1:] < 0)) == j
    ok = worst < 1e-8 and roots_ok
    report(8, ok, f"orthogonality worst {worst:.1e}, root counts "
                  f"{'exact' if roots_ok else 'WRONG'}")


def test_criterion_9_weighted_integral_suite():
    from mpmath import mp, mpf, quad as mpquad
    from fixsing.specfun import chebyshev_U

    mp.dps = 25
    worst_rel = 0.0
    for a1 in (-0.45, 0.0, 0.33, 0.7):
        for a2 in (-0.45, 0.0, 0.33, 0.7):
            for j in (3, 8):
                for fn, poly in ((jacobi_chebyshev_integral_T, chebyshev_T),
                                 (jacobi_chebyshev_integral_U, chebyshev_U)):
                    f = lambda z: ((1 - z) ** mpf(a1) * (1 + z) ** mpf(a2)
                                   * poly(j, float(z)))
                    ref = float(mpquad(f, [-1, 0, 1]))
                    got = fn(a1, a2, j)
                    worst_rel = max(worst_rel,
                                    abs(got - ref) / max(abs(ref), 1e-2))
    basis = build_basis(0.5, 4)
    reg = classify(0.5)
    worst_m = 0.0
    for j in range(0, 9):
        quad_val = solvability_functional(
            reg, lambda t, j=j: np.cos(j * np.pi * t))
        worst_m = max(worst_m, abs(M_coeff(basis, j) - quad_val))
    ok = worst_rel < 1e-9 and worst_m < 1e-8
    report(9, ok, f"weighted integrals rel {worst_rel:.1e}, "
                  f"moment-vs-quadrature {worst_m:.1e}")


def test_criterion_10_cauchy_suite():
    xs = np.linspace(1.0 / 12.0, 11.0 / 12.0, 11)
    worst_id = 0.0
    for j in range(7):
        got = u_weighted_cauchy_transform(j, xs, 512)
        want = -np.pi / 2.0 * chebyshev_T(j + 1, 2.0 * xs - 1.0)
        worst_id = max(worst_id, float(np.max(np.abs(got - want))))

    sol = cauchy_solve(lambda x, xi: np.zeros_like(x * xi), lambda x: x, N=8)
    pts = np.linspace(0.05, 0.95, 11)
    worst_rt = float(np.max(np.abs(sol.evaluate(pts)
                                   - np.sqrt(pts * (1.0 - pts)))))
    worst_rt = max(worst_rt, abs(sol.constant_C - 0.5))

    ones = cauchy_inverse(lambda t: np.ones_like(t), xs)
    worst_one = float(np.max(np.abs(ones)))
    ok = worst_id < 1e-8 and worst_rt < 1e-8 and worst_one < 1e-10
    report(10, ok, f"transform identity {worst_id:.1e}, roundtrip "
                   f"{worst_rt:.1e}, inverse-of-1 {worst_one:.1e}")


def test_criterion_11_inverse_forward_roundtrips():
    rule = PVRule(512)
    xs = np.linspace(0.1, 0.9, 9)
    worst = 0.0
    for beta, f in ((0.5, lambda t: -np.cos(np.pi * t)),
                    (-0.5, lambda t: -np.cos(np.pi * t)),
                    (2.0, lambda t: np.cos(np.pi * t))):
        reg = classify(beta)
        phi = lambda t, reg=reg, f=f: inverse_characteristic(
            reg, f, t, check_solvability=False)
        got = apply_S(phi, beta, xs, rule)
        worst = max(worst, float(np.max(np.abs(got - f(xs)))))

    worst_fit = 0.0
    for beta in (0.5, -0.5):
        reg = classify(beta)
        want = endpoint_asymptotics(reg).exponent_at_0
        pts = np.array([1e-3, 1e-2])
        vals = inverse_characteristic(reg, lambda t: -np.cos(np.pi * t), pts,
                                      check_solvability=False)
        fit = np.log(abs(vals[1] / vals[0])) / np.log(pts[1] / pts[0])
        worst_fit = max(worst_fit, abs(fit - want) / want)
    ok = worst < 1e-5 and worst_fit < 0.05
    report(11, ok, f"roundtrip worst {worst:.1e}, exponent fit "
                   f"{100 * worst_fit:.1f}%")
