"""Command-line interface.

Machine-readable output (JSON or CSV) goes to stdout only; diagnostics go
to stderr.  Exit codes: 0 success, 2 usage error, 3 input or parse error,
4 numerical failure.  The only environment variable honored is
SPECTRAD_THREADS, an optional thread-count override for ensemble runs.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .aluthge import AluthgeConfig, iterate_trace
from .ensembles import KINDS, EnsembleSpec, generate
from .errors import (
    InvalidInputError,
    MatrixParseError,
    NotPositiveSemidefiniteError,
    NumericalFailureError,
    RangeOverflowError,
)
from .estimators import (
    METHODS,
    PowerSchedule,
    ToleranceConfig,
    estimate_aluthge_iterate,
    estimate_aluthge_power,
    estimate_gelfand,
    estimate_numrad_power,
)
from .matio import f17, read_matrix
from .matkernel import spectral_radius_oracle
from .normaloid import normaloid_check, verify_characterizations
from .numrange import Angle, fov_boundary, peripheral_angle
from .orbitopt import OrbitObjective, minimize_orbit

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERICAL = 4

_METHOD_FLAGS = tuple(m.replace("_", "-") for m in METHODS)
_OBJECTIVE_FLAGS = (
    "delta-norm",
    "delta-numrad",
    "rotated-realpart-norm",
    "rotated-realpart-numrad",
    "plain-norm",
)


def _unit_interval(text):
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return v


def _positive_float(text):
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return v


def _theta_arg(text):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"theta must be 'auto' or a float, got {text!r}") from exc


def build_parser():
    p = argparse.ArgumentParser(
        prog="spectrad",
        description="Spectral radius estimators, orbit searches, and normaloid checks "
        "on dense complex matrices.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="run one spectral radius estimator")
    est.add_argument("--matrix", required=True)
    est.add_argument("--method", required=True, choices=_METHOD_FLAGS)
    est.add_argument("--lambda", dest="lam", type=_unit_interval, default=0.5)
    est.add_argument("--n", type=_nonneg_int, default=1)
    est.add_argument("--k-max", type=_positive_int, default=1024)
    est.add_argument("--rtol", type=_positive_float, default=1e-6)
    est.add_argument("--max-iters", type=_positive_int, default=300)
    fmt = est.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    est.set_defaults(func=_cmd_estimate)

    orb = sub.add_parser("orbit", help="minimize an orbit objective over Hermitian generators")
    orb.add_argument("--matrix", required=True)
    orb.add_argument("--objective", required=True, choices=_OBJECTIVE_FLAGS)
    orb.add_argument("--lambda", dest="lam", type=_unit_interval, default=0.5)
    orb.add_argument("--n", type=_nonneg_int, default=1)
    orb.add_argument("--theta", type=_theta_arg, default="auto")
    orb.add_argument("--budget", type=_positive_int, default=5000)
    orb.add_argument("--radius", type=_positive_float, default=8.0)
    orb.add_argument("--seed", type=int, default=0)
    orb.set_defaults(func=_cmd_orbit)

    tr = sub.add_parser("trace", help="CSV trace of Aluthge iterates")
    tr.add_argument("--matrix", required=True)
    tr.add_argument("--lambda", dest="lam", type=_unit_interval, default=0.5)
    tr.add_argument("--iters", type=_positive_int, default=100)
    tr.add_argument("--with-numrad", action="store_true")
    tr.set_defaults(func=_cmd_trace)

    nor = sub.add_parser("normaloid", help="normaloid verdict, optionally with characterizations")
    nor.add_argument("--matrix", required=True)
    nor.add_argument("--verify", action="store_true")
    nor.add_argument("--budget", type=_positive_int, default=5000)
    nor.add_argument("--seed", type=int, default=0)
    nor.set_defaults(func=_cmd_normaloid)

    fov = sub.add_parser("fov", help="numerical range boundary samples as CSV")
    fov.add_argument("--matrix", required=True)
    fov.add_argument("--samples", type=_positive_int, required=True)
    fov.set_defaults(func=_cmd_fov)

    ens = sub.add_parser("ensemble", help="run a subcommand over a seeded ensemble")
    ens.add_argument("--kind", required=True, choices=KINDS)
    ens.add_argument("--dim", type=_positive_int, required=True)
    ens.add_argument("--count", type=_positive_int, required=True)
    ens.add_argument("--seed", type=int, default=0)
    ens.add_argument("--params", type=float, nargs="*", default=[])
    ens.add_argument("--run", nargs=argparse.REMAINDER, required=True,
                     help="subcommand to run per matrix: estimate, orbit, normaloid, or compare")
    ens.set_defaults(func=_cmd_ensemble)

    cmp_ = sub.add_parser("compare", help="all estimators vs the eigenvalue oracle")
    cmp_.add_argument("--matrix", required=True)
    cmp_.add_argument("--lambda", dest="lam", type=_unit_interval, default=0.5)
    cmp_.add_argument("--n", type=_nonneg_int, default=1)
    cmp_.add_argument("--k-max", type=_positive_int, default=1024)
    cmp_.add_argument("--rtol", type=_positive_float, default=1e-6)
    cmp_.add_argument("--max-iters", type=_positive_int, default=300)
    cmp_.set_defaults(func=_cmd_compare)

    return p


def _run_estimate(m, args):
    tolc = ToleranceConfig(rtol=args.rtol, max_iterations=args.max_iters)
    cfg = AluthgeConfig(lam=args.lam)
    schedule = PowerSchedule.doubling(args.k_max)
    method = args.method.replace("-", "_")
    if method == "gelfand":
        return estimate_gelfand(m, schedule, tolc)
    if method == "aluthge_iterate":
        return estimate_aluthge_iterate(m, cfg, tolc)
    if method == "aluthge_power":
        return estimate_aluthge_power(m, cfg, args.n, schedule, tolc)
    return estimate_numrad_power(m, cfg, args.n, schedule, tolc)


def _cmd_estimate(args, out=None):
    out = out or sys.stdout
    m = read_matrix(args.matrix)
    est = _run_estimate(m, args)
    if args.csv:
        out.write("index,value\n")
        for k, v in est.trace:
            out.write(f"{k},{f17(v)}\n")
    else:
        out.write(est.to_json() + "\n")
    return EXIT_OK


def _build_objective(args, m):
    kind = args.objective.replace("-", "_")
    theta = None
    if kind in ("rotated_realpart_norm", "rotated_realpart_numrad"):
        theta = peripheral_angle(m) if args.theta == "auto" else Angle(args.theta)
    return OrbitObjective(kind=kind, lam=args.lam, n=args.n, theta=theta)


def _cmd_orbit(args, out=None):
    out = out or sys.stdout
    m = read_matrix(args.matrix)
    obj = _build_objective(args, m)
    res = minimize_orbit(m, obj, budget=args.budget, radius=args.radius, seed=args.seed)
    out.write(res.to_json() + "\n")
    return EXIT_OK


def _cmd_trace(args, out=None):
    out = out or sys.stdout
    m = read_matrix(args.matrix)
    tr = iterate_trace(m, AluthgeConfig(lam=args.lam), n_max=args.iters,
                       record_w=args.with_numrad)
    out.write(tr.to_csv())
    return EXIT_OK


def _cmd_normaloid(args, out=None):
    out = out or sys.stdout
    m = read_matrix(args.matrix)
    if args.verify:
        verdict = verify_characterizations(m, budget=args.budget, seed=args.seed)
    else:
        verdict = normaloid_check(m)
    out.write(verdict.to_json() + "\n")
    return EXIT_OK


def _cmd_fov(args, out=None):
    out = out or sys.stdout
    m = read_matrix(args.matrix)
    pts = fov_boundary(m, args.samples)
    out.write("re,im\n")
    for z in pts:
        out.write(f"{f17(z.real)},{f17(z.imag)}\n")
    return EXIT_OK


def _compare_rows(m, args):
    oracle = spectral_radius_oracle(m)
    rows = []
    for flag in _METHOD_FLAGS:
        sub = argparse.Namespace(
            method=flag, lam=args.lam, n=args.n, k_max=args.k_max,
            rtol=args.rtol, max_iters=args.max_iters,
        )
        est = _run_estimate(m, sub)
        rows.append((flag.replace("-", "_"), est.value, oracle, est.value - oracle,
                     est.converged))
    return rows


def _cmd_compare(args, out=None):
    out = out or sys.stdout
    m = read_matrix(args.matrix)
    out.write("method,value,oracle_r,gap,converged\n")
    for name, value, oracle, gap, converged in _compare_rows(m, args):
        out.write(f"{name},{f17(value)},{f17(oracle)},{f17(gap)},"
                  f"{'true' if converged else 'false'}\n")
    return EXIT_OK


def _ensemble_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f17(value)


def _summarize_run(m, run_args, index):
    """One ensemble row: run the requested subcommand on one matrix."""
    parser = build_parser()
    cmd = run_args[0]
    oracle = spectral_radius_oracle(m)
    if cmd == "estimate":
        ns = parser.parse_args(run_args + ["--matrix", "-"])
        est = _run_estimate(m, ns)
        return [("value", est.value), ("gap", est.value - oracle),
                ("converged", est.converged)]
    if cmd == "compare":
        ns = parser.parse_args(run_args + ["--matrix", "-"])
        cells = []
        for name, value, _oracle, gap, _conv in _compare_rows(m, ns):
            cells.append((name, value))
            cells.append((f"{name}_gap", gap))
        return cells
    if cmd == "orbit":
        ns = parser.parse_args(run_args + ["--matrix", "-"])
        obj = _build_objective(ns, m)
        res = minimize_orbit(m, obj, budget=ns.budget, radius=ns.radius,
                             seed=ns.seed ^ index)
        return [("best_value", res.best_value), ("gap", res.best_value - oracle),
                ("boundary_hit", res.boundary_hit), ("evaluations", res.evaluations)]
    if cmd == "normaloid":
        ns = parser.parse_args(run_args + ["--matrix", "-"])
        if ns.verify:
            verdict = verify_characterizations(m, budget=ns.budget, seed=ns.seed ^ index)
        else:
            verdict = normaloid_check(m)
        return [("is_normaloid", verdict.is_normaloid), ("norm", verdict.norm),
                ("relative_gap", verdict.relative_gap)]
    raise InvalidInputError(
        f"ensemble cannot aggregate subcommand {cmd!r}; "
        "use estimate, compare, orbit, or normaloid"
    )


def _cmd_ensemble(args, out=None):
    out = out or sys.stdout
    if not args.run:
        raise InvalidInputError("ensemble needs --run <subcommand args>")
    if args.run[0] not in ("estimate", "compare", "orbit", "normaloid"):
        raise InvalidInputError(
            f"ensemble cannot aggregate subcommand {args.run[0]!r}; "
            "use estimate, compare, orbit, or normaloid"
        )

    def one(index):
        spec = EnsembleSpec(kind=args.kind, dim=args.dim, seed=args.seed ^ index,
                            params=tuple(args.params))
        m = generate(spec)
        cells = _summarize_run(m, list(args.run), index)
        return index, spectral_radius_oracle(m), cells

    threads = int(os.environ.get("SPECTRAD_THREADS", "1"))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(args.count)))
    else:
        results = [one(i) for i in range(args.count)]

    header = ["index", "oracle_r"] + [name for name, _ in results[0][2]]
    out.write(",".join(header) + "\n")
    for index, oracle, cells in results:
        row = [str(index), f17(oracle)] + [_ensemble_cell(v) for _, v in cells]
        out.write(",".join(row) + "\n")
    return EXIT_OK


def cli_dispatch(argv=None):
    """Parse argv, run the subcommand, and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except SystemExit as exc:  # nested parse inside ensemble --run
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except (MatrixParseError, InvalidInputError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalFailureError, RangeOverflowError, NotPositiveSemidefiniteError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
