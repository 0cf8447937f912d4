"""Command-line front end.

Subcommands: characteristic (series solution of the characteristic
equation), antiplane and plane-strain (crack problems in the composite
plane), gamma0 (plane-strain endpoint exponent over a stiffness sweep),
and verify (invariant suites).  Parameters come from flags or a flat
key=value config file, flags winning; tables are written as CSV or JSON
with the fully resolved configuration echoed into the output.

Exit codes: 0 ok, 1 verification failure, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import cauchy, complete, kernels, spectral, verify
from .complete import SingularSystemError, SolveConfig
from .kernels import NoBracketError

LOADS = {
    "uniform": (lambda a: (lambda x: a * x)),
    "linear": (lambda a: (lambda x: a * x**2 / 2.0)),
    "quadratic": (lambda a: (lambda x: a * x**3 / 3.0)),
}


class ConfigError(Exception):
    pass


def _read_config_file(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"malformed config line: {raw.strip()!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key] = val
    return values


def _merged(args):
    """Flag values on top of config-file values, with type coercion."""
    merged = dict(_read_config_file(args.config)) if args.config else {}
    for key in ("beta", "lam", "nu1", "nu2", "G1", "G2", "load", "amplitude",
                "N", "t1", "t2", "m0", "grid", "nodes"):
        val = getattr(args, key, None)
        if val is not None:
            merged[key if key != "lam" else "lambda"] = val
    return merged


def _get_float(cfg, key, default=None):
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required parameter {key!r}")
        return default
    try:
        return float(cfg[key])
    except (TypeError, ValueError):
        raise ConfigError(f"parameter {key!r} must be a number") from None


def _get_int(cfg, key, default):
    try:
        return int(float(cfg.get(key, default)))
    except (TypeError, ValueError):
        raise ConfigError(f"parameter {key!r} must be an integer") from None


def _get_int_list(cfg, key, default):
    raw = str(cfg.get(key, default))
    try:
        return [int(float(tok)) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"parameter {key!r} must be integers") from None


def _load_fn(cfg):
    name = str(cfg.get("load", "uniform"))
    if name not in LOADS:
        raise ConfigError(f"unknown load {name!r}; choose from {sorted(LOADS)}")
    amp = _get_float(cfg, "amplitude", 1.0)
    return LOADS[name](amp), name, amp


def _material_lambda(cfg):
    if "lambda" in cfg:
        return _get_float(cfg, "lambda")
    if "G1" in cfg or "G2" in cfg:
        return _get_float(cfg, "G1") / _get_float(cfg, "G2")
    raise ConfigError("specify lambda or the pair G1, G2")


def _emit(args, config, columns, rows, diagnostics):
    payload = {
        "config": {k: (v if isinstance(v, (int, float, str)) else str(v))
                   for k, v in sorted(config.items())},
        "columns": list(columns),
        "rows": [[_fmt(v) for v in row] for row in rows],
        "diagnostics": {k: _fmt(v) for k, v in sorted(diagnostics.items())},
    }
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {k}={v}" for k, v in sorted(payload["config"].items())]
        lines += [f"# {k}={v}" for k, v in sorted(payload["diagnostics"].items())]
        lines.append(",".join(columns))
        lines += [",".join(str(v) for v in row) for row in payload["rows"]]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(v):
    if isinstance(v, float):
        return float(f"{v:.12g}")
    return v


def _grid(cfg):
    n = _get_int(cfg, "grid", 21)
    if n < 2:
        raise ConfigError("grid needs at least two points")
    return np.linspace(0.0, 1.0, n)


def cmd_characteristic(args) -> int:
    cfg = _merged(args)
    beta = _get_float(cfg, "beta")
    if not (0.0 < abs(beta) < 1.0):
        raise ConfigError("characteristic solver needs 0 < |beta| < 1")
    F, load_name, amp = _load_fn(cfg)
    t1 = _get_int(cfg, "t1", 200)
    m0s = _get_int_list(cfg, "m0", "20")
    config = {"command": "characteristic", "beta": beta, "load": load_name,
              "amplitude": amp, "t1": t1, "m0": ",".join(map(str, m0s)),
              "format": args.format}

    f = complete.fourier_load_coeffs(F, t1, max(m0s) + 1)
    if len(m0s) > 1:
        rows, diag = [], {}
        for m0 in m0s:
            basis = spectral.build_basis(beta, m0)
            sol = spectral.characteristic_series_solve(basis, f[:m0 + 2], m0)
            rows.append([m0, sol.evaluate(0.5), sol.evaluate(0.25),
                         sol.constant_C])
        _emit(args, config, ["m0", "phi_at_0.5", "phi_at_0.25", "C"], rows,
              diag)
        return 0
    m0 = m0s[0]
    basis = spectral.build_basis(beta, m0)
    sol = spectral.characteristic_series_solve(basis, f[:m0 + 2], m0)
    xs = _grid(cfg)
    config["grid"] = len(xs)
    rows = [[x, v] for x, v in zip(xs, sol.evaluate(xs))]
    _emit(args, config, ["x", "phi"], rows, {"C": sol.constant_C})
    return 0


def _emit_solution(args, cfg, config, solution, extra):
    xs = _grid(cfg)
    config["grid"] = len(xs)
    rows = [[x, v] for x, v in zip(xs, solution.evaluate(xs))]
    diag = {"C": solution.constant_C, "phi_at_0.5": solution.evaluate(0.5)}
    diag.update({k: v for k, v in solution.residual_report.items()})
    diag.update(extra)
    _emit(args, config, ["x", "phi"], rows, diag)


def cmd_antiplane(args) -> int:
    cfg = _merged(args)
    lam = _material_lambda(cfg)
    if lam <= 0.0:
        raise ConfigError("modulus ratio lambda must be positive")
    F, load_name, amp = _load_fn(cfg)
    n_list = _get_int_list(cfg, "N", "17")
    t1 = _get_int(cfg, "t1", 200)
    t2 = _get_int(cfg, "t2", 210)
    config = {"command": "antiplane", "lambda": lam, "load": load_name,
              "amplitude": amp, "N": ",".join(map(str, n_list)), "t1": t1,
              "t2": t2, "format": args.format}

    if lam == 1.0:
        # no stiffness contrast: the equation is the bare Cauchy one
        sol = cauchy.cauchy_solve(lambda x, xi: np.zeros_like(x * xi), F,
                                  N=max(n_list), t1=t1, t2=t2)
        _emit_solution(args, cfg, config, sol, {"solver": "cauchy"})
        return 0
    kern = kernels.antiplane_kernel(kernels.AntiplaneParams(lam=lam))
    if len(n_list) > 1:
        rows = []
        for n_cut in n_list:
            sol = complete.solve(kern, F, SolveConfig(N=n_cut, t1=t1, t2=t2),
                                 diagnostics=False)
            rows.append([n_cut, sol.evaluate(0.5), sol.constant_C])
        _emit(args, config, ["N", "phi_at_0.5", "C"], rows,
              {"beta": kern.beta})
        return 0
    sol = complete.solve(kern, F, SolveConfig(N=n_list[0], t1=t1, t2=t2))
    _emit_solution(args, cfg, config, sol, {"beta": kern.beta})
    return 0


def cmd_plane_strain(args) -> int:
    cfg = _merged(args)
    lam = _material_lambda(cfg)
    nu1 = _get_float(cfg, "nu1", 0.3)
    nu2 = _get_float(cfg, "nu2", 0.3)
    F, load_name, amp = _load_fn(cfg)
    n_list = _get_int_list(cfg, "N", "17")
    t1 = _get_int(cfg, "t1", 200)
    t2 = _get_int(cfg, "t2", 210)
    params = kernels.plane_strain_coeffs(lam, 1.0, nu1, nu2)
    kernels.gamma0_root(params)
    config = {"command": "plane-strain", "lambda": lam, "nu1": nu1,
              "nu2": nu2, "load": load_name, "amplitude": amp,
              "N": ",".join(map(str, n_list)), "t1": t1, "t2": t2,
              "format": args.format}
    extra = {"gamma0": params.gamma0, "beta_eff": params.beta_eff}

    if abs(params.beta_eff) < 1e-9:
        def kc(x, xi):
            s, sm = xi + x, xi + x - 2.0
            q = (params.b1 * xi**2 + params.b2 * xi * x
                 + params.b3 * x**2) / s**3
            qm = (params.b1 * (xi - 1.0)**2
                  + params.b2 * (xi - 1.0) * (x - 1.0)
                  + params.b3 * (x - 1.0)**2) / sm**3
            return q + qm
        sol = cauchy.cauchy_solve(kc, F, N=max(n_list), t1=t1, t2=t2)
        extra["solver"] = "cauchy"
        _emit_solution(args, cfg, config, sol, extra)
        return 0
    kern = kernels.plane_strain_kernel(params)
    if len(n_list) > 1:
        rows = []
        for n_cut in n_list:
            sol = complete.solve(kern, F, SolveConfig(N=n_cut, t1=t1, t2=t2),
                                 diagnostics=False)
            rows.append([n_cut, sol.evaluate(0.5), sol.constant_C])
        _emit(args, config, ["N", "phi_at_0.5", "C"], rows, extra)
        return 0
    sol = complete.solve(kern, F, SolveConfig(N=n_list[0], t1=t1, t2=t2))
    _emit_solution(args, cfg, config, sol, extra)
    return 0


def cmd_gamma0(args) -> int:
    cfg = _merged(args)
    nu1 = _get_float(cfg, "nu1", 0.3)
    nu2 = _get_float(cfg, "nu2", 0.3)
    if args.lambda_grid:
        lams = [float(tok) for tok in args.lambda_grid.split(",") if tok.strip()]
    elif "lambda" in cfg or "G1" in cfg:
        lams = [_material_lambda(cfg)]
    else:
        lams = list(np.logspace(-2.0, 2.0, 25))
    config = {"command": "gamma0", "nu1": nu1, "nu2": nu2,
              "lambda_grid": ",".join(f"{v:g}" for v in lams),
              "format": args.format}
    rows = []
    for lam in lams:
        params = kernels.plane_strain_coeffs(lam, 1.0, nu1, nu2)
        kernels.gamma0_root(params)
        rows.append([lam, params.gamma0, params.beta_eff])
    _emit(args, config, ["lambda", "gamma0", "beta_eff"], rows, {})
    return 0


def cmd_verify(args) -> int:
    suites = None
    if args.suite:
        suites = [tok for item in args.suite for tok in item.split(",")]
    nodes = args.nodes or 512
    results = verify.run(suites=suites, nodes=nodes)
    report = {
        "nodes": nodes,
        "checks": [r.as_dict() for r in results],
        "passed": all(r.passed for r in results),
    }
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fixsing",
        description="Singular integral equations with two fixed endpoint "
                    "singularities: solvers and crack-problem applications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_material=True):
        p.add_argument("--config", help="flat key=value parameter file")
        p.add_argument("--beta", type=float)
        if with_material:
            p.add_argument("--lambda", dest="lam", type=float,
                           help="shear-modulus ratio G1/G2")
            p.add_argument("--G1", type=float)
            p.add_argument("--G2", type=float)
            p.add_argument("--nu1", type=float)
            p.add_argument("--nu2", type=float)
        p.add_argument("--load", choices=sorted(LOADS))
        p.add_argument("--amplitude", type=float)
        p.add_argument("--N", help="truncation order (int or comma list)")
        p.add_argument("--t1", type=int)
        p.add_argument("--t2", type=int)
        p.add_argument("--m0", help="series truncation (int or comma list)")
        p.add_argument("--grid", type=int, help="output grid size")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    common(sub.add_parser("characteristic",
                          help="series solution of the characteristic equation"))
    common(sub.add_parser("antiplane", help="antiplane crack problem"))
    common(sub.add_parser("plane-strain",
                          help="plane-strain crack problem (dominant equation)"))

    g = sub.add_parser("gamma0", help="plane-strain endpoint exponent sweep")
    common(g)
    g.add_argument("--lambda-grid", help="comma list of modulus ratios")

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--suite", action="append",
                   help="suite name(s), repeatable or comma separated")
    v.add_argument("--nodes", type=int, help="quadrature node budget")
    v.add_argument("--out", help="output path (default stdout)")
    return parser


_COMMANDS = {
    "characteristic": cmd_characteristic,
    "antiplane": cmd_antiplane,
    "plane-strain": cmd_plane_strain,
    "gamma0": cmd_gamma0,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NoBracketError, SingularSystemError,
            cauchy.SingularSystemError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
