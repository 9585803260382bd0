"""Command-line interface.

Subcommands expose every module: exact absorption values, coefficient rows,
Monte Carlo simulation, arrangement queries, conic geometry, asymptotic
tables, and the self-verification suites.  All randomized commands default
to a fixed seed so bare invocations are byte-for-byte reproducible; pass
``--seed random`` to opt into entropy.
"""
from __future__ import annotations

import argparse
import json
import math
import secrets
import sys
from fractions import Fraction

import numpy as np

from . import arrangements as arr_mod
from . import asymptotics as asy
from . import cones, mc, verify, walks
from .absorption import KINDS, WalkFamily, absorption_probability, absorption_probability_float
from .coefficients import b_prefix, b_row, d_prefix, d_row, stirling_prefix, stirling_row


def _seed_value(raw: str) -> int:
    if raw == "random":
        return secrets.randbits(63)
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer or 'random'")


def _steps_value(raw: str):
    parts = [p for p in raw.split(",") if p]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError("steps must be an integer or comma list")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("steps must be positive")
    return values[0] if len(values) == 1 else tuple(values)


def _json_safe(value):
    """JSON with exact values kept exact: big integers and rationals become
    decimal strings so nothing silently truncates to 64-bit floats."""
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return value if abs(value) < 2**53 else str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [_json_safe(v) for v in value.tolist()]
    return value


def _emit(config: dict, result: dict, fmt: str, csv_rows=None) -> None:
    if fmt == "json":
        print(json.dumps({"config": _json_safe(config), "result": _json_safe(result)}, indent=2))
        return
    if fmt == "csv":
        for key, val in config.items():
            print(f"# {key}={val}")
        if csv_rows is None:
            csv_rows = [list(result.keys()), [result[k] for k in result]]
        for row in csv_rows:
            print(",".join(str(x) for x in row))
        return
    for key, val in config.items():
        print(f"# {key}={val}")
    for key, val in result.items():
        print(f"{key}: {_plain(val)}")


def _plain(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(str(_plain(v)) for v in value) + "]"
    return value


def _family_from_args(args) -> WalkFamily:
    return WalkFamily(args.family, args.steps, args.dim)


def _cmd_exact(args) -> int:
    family = _family_from_args(args)
    config = {
        "subcommand": "exact",
        "family": args.family,
        "steps": args.steps,
        "dim": args.dim,
        "format": args.format,
    }
    if args.float_mode:
        absorb = absorption_probability_float(family)
        result = {
            "absorb_float": absorb,
            "non_absorb_float": 1.0 - absorb,
            "within_hypotheses": family.within_hypotheses,
        }
    else:
        res = absorption_probability(family)
        result = {
            "absorb": res.absorb,
            "non_absorb": res.non_absorb,
            "absorb_float": float(res.absorb),
            "non_absorb_float": float(res.non_absorb),
            "within_hypotheses": res.within_hypotheses,
        }
    _emit(config, result, args.format)
    return 0


_ROWS = {"A": (stirling_row, stirling_prefix), "B": (b_row, b_prefix), "D": (d_row, d_prefix)}


def _cmd_coeffs(args) -> int:
    row_fn, prefix_fn = _ROWS[args.type]
    config = {
        "subcommand": "coeffs",
        "type": args.type,
        "n": args.n,
        "kmax": args.kmax,
        "format": args.format,
    }
    if args.kmax is not None:
        coeffs = list(prefix_fn(args.n, args.kmax))
    else:
        coeffs = list(row_fn(args.n).coeffs)
    result = {"coefficients": coeffs}
    rows = [["k", "coefficient"]] + [[k, str(c)] for k, c in enumerate(coeffs)]
    _emit(config, result, args.format, csv_rows=rows)
    return 0


def _cmd_simulate(args) -> int:
    family = _family_from_args(args)
    model = walks.IncrementModel(args.model, args.dim)
    config = {
        "subcommand": "simulate",
        "model": args.model,
        "family": args.family,
        "steps": args.steps,
        "dim": args.dim,
        "samples": args.samples,
        "seed": args.seed,
        "tol": args.tol,
        "threads": mc.resolve_threads(args.threads),
        "format": args.format,
    }
    est = walks.estimate_absorption(
        model, family, args.samples, seed=args.seed, tol=args.tol, threads=args.threads
    )
    exact = float(absorption_probability(family).absorb)
    lo, hi = est.ci()
    result = {
        "family": args.family,
        "n": family.n_total,
        "d": args.dim,
        "model": args.model,
        "samples": est.samples,
        "seed": est.seed,
        "p_hat": est.estimate,
        "stderr": est.stderr,
        "ci_lo": lo,
        "ci_hi": hi,
        "exact": exact,
        "z_score": est.z_score(exact),
        "ambiguous_fraction": est.ambiguous_fraction,
    }
    _emit(config, result, args.format)
    return 0


def _load_arrangement(args) -> arr_mod.Arrangement:
    if args.file:
        with open(args.file) as fh:
            return arr_mod.parse_arrangement(fh.read())
    if args.type and args.n:
        return arr_mod.build_reflection_arrangement(args.type, args.n)
    raise SystemExit2("arrangement commands need --file or --type with --n")


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2."""


def _cmd_arrangement(args) -> int:
    arr = _load_arrangement(args)
    config = {
        "subcommand": f"arrangement {args.action}",
        "source": args.file or f"{args.type}{args.n}",
        "format": args.format,
    }
    if args.action == "charpoly":
        chi = arr_mod.whitney_characteristic_polynomial(arr)
        result = {"a": list(chi.a), "regions": arr_mod.zaslavsky_region_count(chi)}
    elif args.action == "regions":
        chi = arr_mod.whitney_characteristic_polynomial(arr)
        result = {
            "zaslavsky": arr_mod.zaslavsky_region_count(chi),
            "enumerated": len(arr_mod.enumerate_regions(arr)),
        }
    else:  # intersect
        if args.codim is None:
            raise SystemExit2("intersect needs --codim")
        chi = arr_mod.whitney_characteristic_polynomial(arr)
        config["codim"] = args.codim
        result = {"count": arr_mod.intersected_region_count(chi, args.codim)}
    _emit(config, result, args.format)
    return 0


def _cmd_cone(args) -> int:
    config = {
        "subcommand": f"cone {args.action}",
        "type": args.type,
        "n": args.n,
        "format": args.format,
    }
    v = cones.weyl_intrinsic_volumes(args.type, args.n)
    if args.action == "volumes":
        result = {"v": list(v.v), "v_float": v.as_floats()}
    elif args.action == "steiner":
        grid = np.linspace(0.0, 1.0, args.grid)
        config["grid"] = args.grid
        rows = [["lambda", "cdf"]]
        rows += [[f"{x:.6f}", f"{cones.steiner_tail_cdf(v, float(x)):.10f}"] for x in grid]
        result = {r[0]: r[1] for r in rows[1:]}
        _emit(config, result, args.format, csv_rows=rows)
        return 0
    else:  # crofton
        if args.codim is None:
            raise SystemExit2("crofton needs --codim")
        config.update(
            {
                "codim": args.codim,
                "samples": args.samples,
                "seed": args.seed,
                "threads": mc.resolve_threads(args.threads),
            }
        )
        chamber = cones.WeylChamber(args.type, args.n)
        est = cones.crofton_mc_estimate(
            chamber, args.codim, args.samples, seed=args.seed, threads=args.threads
        )
        exact = float(cones.half_tail(v, args.codim + 1).value)
        result = {
            "h_estimate": est.estimate,
            "stderr": est.stderr,
            "exact": exact,
            "z_score": est.z_score(exact),
            "samples": est.samples,
            "seed": est.seed,
            "ambiguous_fraction": est.ambiguous_fraction,
        }
    _emit(config, result, args.format)
    return 0


def _cmd_asympt(args) -> int:
    ns = [int(float(tok)) for tok in args.n_grid.split(",") if tok]
    case = args.case
    kind = "bridge-A" if case == "A" else f"walk-{case}"
    u = asy.scale_parameter(case)
    config = {
        "subcommand": "asympt",
        "case": case,
        "regime": args.regime,
        "d": args.d,
        "x": args.x,
        "n_grid": args.n_grid,
        "format": args.format,
    }
    rows = [["n", "d", "exact_float", "asymptotic", "ratio"]]
    for n in ns:
        if args.regime == "fixed":
            d = args.d
            approx = asy.fixed_dimension_asymptotic(case, n, d)
            exact = 1.0 - absorption_probability_float(WalkFamily(kind, n, d))
        elif args.regime == "clt":
            d = args.d if args.d else round(u * math.log(n))
            approx = asy.clt_approximation(case, n, d)
            exact = 1.0 - absorption_probability_float(WalkFamily(kind, n, d))
        else:  # ld
            d = max(1, round(args.x * u * math.log(n)))
            approx, side = asy.large_deviation_asymptotic(case, n, d)
            p = absorption_probability_float(WalkFamily(kind, n, d))
            exact = p if side == "absorb" else 1.0 - p
        rows.append([n, d, f"{exact:.6e}", f"{approx:.6e}", f"{exact / approx:.6f}"])
    result = {f"n={r[0]}": dict(zip(rows[0][1:], r[1:])) for r in rows[1:]}
    _emit(config, result, args.format, csv_rows=rows)
    return 0


def _cmd_verify(args) -> int:
    config = {
        "subcommand": "verify",
        "suite": args.suite,
        "samples": args.samples,
        "seed": args.seed,
        "threads": mc.resolve_threads(args.threads),
        "format": args.format,
    }
    report = verify.run_suite(args.suite, samples=args.samples, seed=args.seed, threads=args.threads)
    failures = 0
    if args.format == "json":
        payload = {}
        for number, results in report.items():
            name = verify.CRITERIA[number][0]
            payload[f"{number}: {name}"] = [
                {
                    "check": r.name,
                    "expected": r.expected,
                    "observed": r.observed,
                    "verdict": "pass" if r.passed else "FAIL",
                }
                for r in results
            ]
            failures += sum(not r.passed for r in results)
        print(json.dumps({"config": _json_safe(config), "result": payload}, indent=2))
    else:
        for key, val in config.items():
            print(f"# {key}={val}")
        for number, results in report.items():
            name = verify.CRITERIA[number][0]
            bad = [r for r in results if not r.passed]
            failures += len(bad)
            verdict = "pass" if not bad else "FAIL"
            print(f"[{verdict}] criterion {number} ({name}): {len(results) - len(bad)}/{len(results)}")
            for r in bad:
                print(f"    FAIL {r.name}: expected {r.expected}, observed {r.observed}")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylhull",
        description="Convex hulls of random walks, reflection arrangements, conic geometry.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, formats=("json", "csv", "plain")):
        p.add_argument("--format", choices=formats, default="plain")

    p = sub.add_parser("exact", help="exact absorption probabilities")
    p.add_argument("--family", choices=KINDS, required=True)
    p.add_argument("--steps", type=_steps_value, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--float", dest="float_mode", action="store_true",
                   help="float evaluation only (for very large n)")
    add_common(p)
    p.set_defaults(fn=_cmd_exact)

    p = sub.add_parser("coeffs", help="coefficient rows of the three families")
    p.add_argument("--type", choices=("A", "B", "D"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int, default=None, help="emit only indices 0..kmax")
    add_common(p)
    p.set_defaults(fn=_cmd_coeffs)

    p = sub.add_parser("simulate", help="Monte Carlo absorption estimate")
    p.add_argument("--model", choices=walks.MODEL_FAMILIES[:-1], required=True)
    p.add_argument("--family", choices=KINDS, required=True)
    p.add_argument("--steps", type=_steps_value, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=_seed_value, default=mc.DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=walks.DEFAULT_TOL)
    p.add_argument("--threads", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("arrangement", help="hyperplane arrangement queries")
    p.add_argument("action", choices=("charpoly", "regions", "intersect"))
    p.add_argument("--file", default=None, help="arrangement file ('dim n' + integer rows)")
    p.add_argument("--type", choices=("A", "B", "D"), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--codim", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_arrangement)

    p = sub.add_parser("cone", help="conic intrinsic volume queries")
    p.add_argument("action", choices=("volumes", "steiner", "crofton"))
    p.add_argument("--type", choices=("A", "B", "D"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--codim", type=int, default=None)
    p.add_argument("--grid", type=int, default=11, help="lambda grid size for steiner")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=_seed_value, default=mc.DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=_cmd_cone)

    p = sub.add_parser("asympt", help="asymptotic comparison tables")
    p.add_argument("--case", choices=("A", "B", "D"), required=True)
    p.add_argument("--regime", choices=("fixed", "clt", "ld"), required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--x", type=float, default=0.5, help="tail parameter for the ld regime")
    p.add_argument("--n-grid", default="1000,10000,100000,1000000")
    add_common(p)
    p.set_defaults(fn=_cmd_asympt)

    p = sub.add_parser("verify", help="self-verification suites")
    p.add_argument("--suite", choices=tuple(verify.SUITES), default="all")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=_seed_value, default=mc.DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=None)
    add_common(p, formats=("json", "plain"))
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
