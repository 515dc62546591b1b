"""Command-line interface.

Subcommands:

* ``compute`` -- one constant on one space, one JSON object or CSV row
* ``verify``  -- run the verification suite on a space; exit 0 only when
                 every non-informational check passes
* ``sweep``   -- skew estimates with bounds over a (xi, nu, p) grid
* ``catalog`` -- list the built-in norm families

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 computation
error.  Output is UTF-8 JSON-lines or CSV with a header row; floats are
serialized with shortest round-trip precision, so re-parsing a row
reproduces the in-memory values exactly.  The only environment variable
honored is BANACHCONST_SEED, a default for --seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import closed_forms as cf
from .estimators import (
    SearchOptions,
    SkewParams,
    estimate_convexity_characteristic,
    estimate_convexity_modulus,
    estimate_gen_nj_tilde,
    estimate_james,
    estimate_lyj,
    estimate_skew_nj,
    estimate_skew_nj_global,
)
from .spaces import (
    NormedSpace,
    l1_linf_space,
    lp_space,
    polyhedral_space_from_file,
    weighted_c0_space,
)
from .verifiers import Report, SuiteConfig, VerifierOptions, run_suite, suite_passed

__all__ = ["main"]

_SPACE_KINDS = ("lp", "l1linf", "weighted-c0", "polyhedral")
_CONSTANTS = (
    "skew-nj",
    "skew-nj-global",
    "gen-nj",
    "james",
    "delta",
    "eps0",
    "lyj",
    "lyj-prime",
)

_COMPUTE_FIELDS = [
    "space",
    "constant",
    "xi",
    "nu",
    "p",
    "eps",
    "value",
    "certified",
    "method",
    "witness_x",
    "witness_y",
    "evaluations",
    "seed",
]

_REPORT_FIELDS = [
    "check_id",
    "space",
    "xi",
    "nu",
    "p",
    "lhs",
    "rhs_lower",
    "rhs_upper",
    "slack",
    "passed",
    "informational",
    "witness_x",
    "witness_y",
    "notes",
]

_SWEEP_FIELDS = [
    "space",
    "xi",
    "nu",
    "p",
    "value",
    "lower_bound",
    "upper_bound",
    "ns_threshold",
    "certified",
]


class _Usage(Exception):
    pass


def _parse_r(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise _Usage(f"invalid --r value: {text!r}")


def _build_space(args) -> NormedSpace:
    kind = args.space
    if kind == "lp":
        if args.r is None:
            raise _Usage("--space lp requires --r")
        dim = args.dim if args.dim is not None else 2
        return lp_space(_parse_r(args.r), dim)
    if kind == "l1linf":
        if args.dim not in (None, 2):
            raise _Usage("--space l1linf is two-dimensional")
        return l1_linf_space()
    if kind == "weighted-c0":
        dim = args.dim if args.dim is not None else 3
        return weighted_c0_space(dim)
    if kind == "polyhedral":
        if args.points_file is None:
            raise _Usage("--space polyhedral requires --points-file")
        return polyhedral_space_from_file(args.points_file, name=args.name)
    raise _Usage(f"unknown space kind {kind!r}")


def _add_space_args(sub):
    sub.add_argument("--space", required=True, choices=_SPACE_KINDS)
    sub.add_argument("--r", default=None, help="lp exponent, a float or 'inf'")
    sub.add_argument("--dim", type=int, default=None)
    sub.add_argument("--points-file", default=None)
    sub.add_argument("--name", default=None, help="name for a polyhedral space")


def _add_output_args(sub, default_fmt="json"):
    sub.add_argument("--output", choices=("json", "csv"), default=default_fmt)
    sub.add_argument("--out", default=None, help="write to a file instead of stdout")


def _default_seed() -> int:
    return int(os.environ.get("BANACHCONST_SEED", "0"))


def _search_opts(args) -> SearchOptions:
    kw = {}
    if getattr(args, "grid_steps", None) is not None:
        kw["grid_steps"] = args.grid_steps
    if getattr(args, "starts", None) is not None:
        kw["starts"] = args.starts
    if getattr(args, "step_tol", None) is not None:
        kw["step_tol"] = args.step_tol
    return SearchOptions(**kw)


def _fnum(v):
    """Shortest round-trip float text; empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, float) and math.isinf(v):
        return ""
    return repr(float(v))


def _vec_text(v) -> str:
    if v is None:
        return ""
    return " ".join(repr(float(c)) for c in np.asarray(v, dtype=float))


def _json_value(v):
    if v is None:
        return None
    if isinstance(v, float) and math.isinf(v):
        return None
    return v


def _write_rows(rows, fields, fmt, out_path):
    if fmt == "json":
        buf = io.StringIO()
        for row in rows:
            obj = {}
            for k in fields:
                v = row.get(k)
                if isinstance(v, np.ndarray):
                    v = [float(c) for c in v]
                obj[k] = _json_value(v)
            buf.write(json.dumps(obj, separators=(",", ":")) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            rec = []
            for k in fields:
                v = row.get(k)
                if v is None:
                    rec.append("")
                elif isinstance(v, bool):
                    rec.append("true" if v else "false")
                elif isinstance(v, float):
                    rec.append(_fnum(v))
                elif isinstance(v, np.ndarray):
                    rec.append(_vec_text(v))
                else:
                    rec.append(str(v))
            writer.writerow(rec)
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def _cmd_compute(args) -> int:
    space = _build_space(args)
    seed = args.seed if args.seed is not None else _default_seed()
    opts = _search_opts(args)
    constant = args.constant
    if args.method != "auto" and constant != "skew-nj":
        raise _Usage("--method applies to --constant skew-nj only")

    row = {k: None for k in _COMPUTE_FIELDS}
    row.update(space=space.name, constant=constant, seed=seed)

    if constant in ("skew-nj", "skew-nj-global", "lyj", "lyj-prime", "gen-nj"):
        if constant == "gen-nj":
            params = SkewParams(1.0, 1.0, args.p)
        elif constant in ("lyj", "lyj-prime"):
            params = SkewParams(args.xi, args.nu, 2.0)
        else:
            params = SkewParams(args.xi, args.nu, args.p)
        if constant == "skew-nj":
            est = estimate_skew_nj(space, params, opts, seed, method=args.method)
        elif constant == "skew-nj-global":
            est = estimate_skew_nj_global(space, params, opts, seed)
        elif constant == "gen-nj":
            est = estimate_gen_nj_tilde(space, params.p, opts, seed)
        elif constant == "lyj":
            est = estimate_lyj(space, params.xi, params.nu, "global", opts, seed)
        else:
            est = estimate_lyj(space, params.xi, params.nu, "sphere", opts, seed)
        row.update(
            xi=params.xi,
            nu=params.nu,
            p=params.p,
            value=est.value,
            certified=est.certified,
            method=est.method,
            witness_x=est.witness.x,
            witness_y=est.witness.y,
            evaluations=est.evaluations,
        )
    elif constant == "james":
        est = estimate_james(space, opts, seed)
        row.update(
            value=est.value,
            certified=est.certified,
            method=est.method,
            witness_x=est.witness.x,
            witness_y=est.witness.y,
            evaluations=est.evaluations,
        )
    elif constant == "delta":
        if args.eps is None:
            raise _Usage("--constant delta requires --eps")
        conv = estimate_convexity_modulus(space, args.eps, opts, seed)
        row.update(
            eps=conv.eps,
            value=conv.delta,
            certified=False,
            method="grid2d" if space.dim == 2 else "multistart",
            witness_x=conv.witness.x,
            witness_y=conv.witness.y,
        )
    elif constant == "eps0":
        value = estimate_convexity_characteristic(space, opts, seed)
        row.update(
            value=value,
            certified=False,
            method="grid2d" if space.dim == 2 else "multistart",
        )
    else:
        raise _Usage(f"unknown constant {constant!r}")

    _write_rows([row], _COMPUTE_FIELDS, args.output, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _report_row(report: Report, space: NormedSpace) -> dict:
    prm = report.params
    wit = report.witnesses[0] if report.witnesses else None
    return {
        "check_id": report.check_id,
        "space": space.name,
        "xi": prm.xi if prm else None,
        "nu": prm.nu if prm else None,
        "p": prm.p if prm else None,
        "lhs": report.lhs,
        "rhs_lower": report.rhs.lower,
        "rhs_upper": report.rhs.upper,
        "slack": report.slack,
        "passed": report.passed,
        "informational": report.informational,
        "witness_x": wit.x if wit else None,
        "witness_y": wit.y if wit else None,
        "notes": report.notes,
    }


def _cmd_verify(args) -> int:
    space = _build_space(args)
    seed = args.seed if args.seed is not None else _default_seed()
    config = SuiteConfig(
        seed=seed,
        opts=VerifierOptions(search=_search_opts(args)),
        eps_grid_size=args.eps_grid,
        lemma27_samples=args.samples,
    )
    reports = run_suite(space, config)
    _write_rows(
        [_report_row(r, space) for r in reports], _REPORT_FIELDS, args.output, args.out
    )
    failed = sum(1 for r in reports if not r.passed and not r.informational)
    informational = sum(1 for r in reports if r.informational)
    passed = len(reports) - failed - informational
    print(
        f"checks: {passed} passed, {failed} failed, {informational} informational",
        file=sys.stderr,
    )
    return 0 if suite_passed(reports) else 1


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _parse_range(text: str, flag: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _Usage(f"{flag} expects start:stop:steps, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise _Usage(f"{flag} expects numeric start:stop:steps, got {text!r}")
    if steps < 1:
        raise _Usage(f"{flag}: empty range ({steps} steps)")
    return [float(v) for v in np.linspace(start, stop, steps)]


def _parse_plist(text: str) -> list[float]:
    vals = [tok for tok in text.split(",") if tok.strip()]
    if not vals:
        raise _Usage("--p: empty exponent list")
    try:
        return [float(tok) for tok in vals]
    except ValueError:
        raise _Usage(f"--p expects comma-separated floats, got {text!r}")


def _cmd_sweep(args) -> int:
    space = _build_space(args)
    seed = args.seed if args.seed is not None else _default_seed()
    opts = _search_opts(args)
    xis = _parse_range(args.xi, "--xi")
    nus = _parse_range(args.nu, "--nu")
    ps = _parse_plist(args.p)
    rows = []
    for xi in sorted(xis):
        for nu in sorted(nus):
            for p in sorted(ps):
                params = SkewParams(xi, nu, p)
                est = estimate_skew_nj(space, params, opts, seed)
                bounds = cf.bounds_general(params)
                rows.append(
                    {
                        "space": space.name,
                        "xi": xi,
                        "nu": nu,
                        "p": p,
                        "value": est.value,
                        "lower_bound": bounds.lower,
                        "upper_bound": bounds.upper,
                        "ns_threshold": cf.normal_structure_threshold(params),
                        "certified": est.certified,
                    }
                )
    _write_rows(rows, _SWEEP_FIELDS, args.output, args.out)
    return 0


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


_CATALOG_TEXT = """\
lp           r-power norms, --r in [1, inf], --dim >= 2 (default 2);
             certified skew estimates only for r in {1, inf}
l1linf       dim 2; sup-norm/1-norm mix by quadrant sign; six extreme points
             (unit-ball hexagon); certified skew estimates
weighted-c0  max|x_i| + (sum x_i^2/4^i)^(1/2), --dim >= 2 (default 3);
             truncation tail bound sup|x_i| * sqrt(4^-dim/3); no certified
             constants (strictly convex ball)
polyhedral   gauge of conv(points) from --points-file (one point per line,
             closed under negation automatically); certified skew estimates
             via vertex enumeration
"""


def _cmd_catalog(args) -> int:
    sys.stdout.write(_CATALOG_TEXT)
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banachconst",
        description="Geometric constants of finite-dimensional normed spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute one constant")
    _add_space_args(p_compute)
    p_compute.add_argument("--constant", required=True, choices=_CONSTANTS)
    p_compute.add_argument("--xi", type=float, default=1.0)
    p_compute.add_argument("--nu", type=float, default=1.0)
    p_compute.add_argument("--p", type=float, default=2.0)
    p_compute.add_argument("--eps", type=float, default=None)
    p_compute.add_argument(
        "--method", choices=("auto", "extreme", "grid", "multistart"), default="auto"
    )
    p_compute.add_argument("--seed", type=int, default=None)
    p_compute.add_argument("--grid-steps", type=int, default=None)
    p_compute.add_argument("--starts", type=int, default=None)
    p_compute.add_argument("--step-tol", type=float, default=None)
    _add_output_args(p_compute)
    p_compute.set_defaults(func=_cmd_compute)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    _add_space_args(p_verify)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--eps-grid", type=int, default=64)
    p_verify.add_argument("--samples", type=int, default=1000)
    p_verify.add_argument("--grid-steps", type=int, default=None)
    p_verify.add_argument("--starts", type=int, default=None)
    p_verify.add_argument("--step-tol", type=float, default=None)
    _add_output_args(p_verify)
    p_verify.set_defaults(func=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="skew constant over a parameter grid")
    _add_space_args(p_sweep)
    p_sweep.add_argument("--xi", required=True, help="start:stop:steps")
    p_sweep.add_argument("--nu", required=True, help="start:stop:steps")
    p_sweep.add_argument("--p", required=True, help="comma-separated exponents")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--grid-steps", type=int, default=None)
    p_sweep.add_argument("--starts", type=int, default=None)
    p_sweep.add_argument("--step-tol", type=float, default=None)
    _add_output_args(p_sweep, default_fmt="csv")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_catalog = sub.add_parser("catalog", help="list the built-in norm families")
    p_catalog.set_defaults(func=_cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
