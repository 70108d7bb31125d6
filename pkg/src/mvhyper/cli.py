"""Command-line front end.

Every output starts with a header recording the version, the seed, the
truncation policy and the exact argument list, so re-running the recorded
arguments reproduces the file.  CSV headers are ``#``-prefixed JSON lines;
JSON outputs carry the header under the ``"header"`` key.

Exit codes: 0 success, 1 a verification check failed, 2 usage or
configuration error (including parameter-bound violations).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .errors import DimensionError, DivergenceError, DomainError, PoleError, ResourceError, UnsupportedCaseError
from .families import from_spec
from .hypergeom import HypergeomSpec, TruncationPolicy, hyperg_auto, hyperg_eigen
from .matrixops import parse_matrix
from .partitions import Partition, enumerate_partitions
from .samplers import RngStream
from .zonal import TABLE_DIR_ENV, build_zonal_table, dump_table, zonal_eval

DEFAULT_SEED = 7

CONFIG_ERRORS = (DomainError, DimensionError, DivergenceError, PoleError, ResourceError,
                 UnsupportedCaseError, ValueError, KeyError, OSError, json.JSONDecodeError)


class UsageError(Exception):
    pass


# --------------------------------------------------------------- helpers


def _floats(text: str) -> List[float]:
    try:
        return [float(t) for t in text.replace(",", " ").split()] if text else []
    except ValueError:
        raise UsageError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _load_json(path: str, what: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON in {what} at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_points(text: str) -> List[np.ndarray]:
    """Points as a JSON list of matrices (or one matrix), or text blocks separated by blank lines."""
    stripped = text.strip()
    if stripped.startswith("["):
        data = json.loads(stripped)
        arr = np.asarray(data, dtype=float)
        if arr.ndim <= 2:
            return [np.atleast_2d(arr)]
        return [np.atleast_2d(x) for x in arr]
    blocks, cur = [], []
    for line in stripped.splitlines():
        if line.lstrip().startswith("#"):
            continue
        if line.strip():
            cur.append(line)
        elif cur:
            blocks.append(cur)
            cur = []
    if cur:
        blocks.append(cur)
    return [parse_matrix("\n".join(b)) for b in blocks]


def _truncation(args) -> TruncationPolicy:
    return TruncationPolicy(max_degree=args.max_degree, tol=args.tol, accelerate=not args.no_accelerate)


def _header(args, argv: Sequence[str], **extra) -> dict:
    pol = _truncation(args) if hasattr(args, "max_degree") else None
    out = {
        "tool": "mvhyper",
        "version": __version__,
        "command": args.command,
        "argv": list(argv),
        "seed": getattr(args, "seed", None),
    }
    if pol is not None:
        out["truncation"] = {"max_degree": pol.max_degree, "tol": pol.tol, "accelerate": pol.accelerate}
    out.update(extra)
    return out


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: dict, columns: Sequence[str], rows) -> str:
    buf = io.StringIO()
    for key, value in header.items():
        buf.write(f"# {key}: {json.dumps(value, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def read_csv_header(path) -> dict:
    """The ``# key: value`` header block of a CSV written by this tool."""
    out = {}
    for line in Path(path).read_text().splitlines():
        if not line.startswith("# "):
            break
        key, _, value = line[2:].partition(": ")
        out[key] = json.loads(value)
    return out


def _apply_truncation(fam, args):
    params = fam.get_params()
    upd = {}
    if "max_degree" in params and args.max_degree_set:
        upd["max_degree"] = args.max_degree
    if "tol" in params and args.tol_set:
        upd["tol"] = args.tol
    if "accelerate" in params and args.no_accelerate:
        upd["accelerate"] = False
    if upd:
        fam.set_params(**upd).fit()
    return fam


# ------------------------------------------------------------ subcommands


def cmd_eval_density(args, argv) -> int:
    spec = _load_json(args.spec, "spec")
    fam = _apply_truncation(from_spec(spec), args)
    points = parse_points(Path(args.points).read_text())
    rows = []
    for i, x in enumerate(points):
        lp = fam.logpdf(x)
        rows.append([i, lp, math.exp(lp)] if args.exp else [i, lp])
    cols = ["index", "logpdf"] + (["pdf"] if args.exp else [])
    header = _header(args, argv, spec=fam.to_spec())
    _emit(_csv_text(header, cols, rows), args.out)
    return 0


def cmd_eval_hyperg(args, argv) -> int:
    if args.matrix and args.eigenvalues:
        raise UsageError("give either --matrix or --eigenvalues, not both")
    if args.matrix:
        Y = parse_matrix(Path(args.matrix).read_text())
        if Y.shape[0] != Y.shape[1] or not np.allclose(Y, Y.T):
            raise DomainError("the matrix argument must be square and symmetric")
        eig = np.linalg.eigvalsh(Y)
    elif args.eigenvalues:
        eig = np.asarray(_floats(args.eigenvalues))
    else:
        raise UsageError("one of --matrix or --eigenvalues is required")
    spec = HypergeomSpec(tuple(_floats(args.upper)), tuple(_floats(args.lower)), _truncation(args))
    if args.series:
        value, report = hyperg_eigen(spec, eig, full_output=True)
        info = report._asdict()
    else:
        value, info = hyperg_auto(spec, eig), {}
    if args.out:
        doc = {"header": _header(args, argv), "upper": list(spec.upper), "lower": list(spec.lower),
               "eigenvalues": [float(v) for v in eig], "value": value, **info}
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        print(repr(float(value)))
    return 0


def cmd_zonal(args, argv) -> int:
    eig = np.asarray(_floats(args.eigenvalues))
    if eig.size == 0:
        raise UsageError("--eigenvalues is required")
    m = eig.size
    if args.kappa is not None:
        kappa = Partition(int(v) for v in _floats(args.kappa))
        kappas = [kappa]
        K = kappa.weight
    else:
        kappas = list(enumerate_partitions(args.degree, m))
        K = args.degree
    table = build_zonal_table(K, m)
    rows = [[",".join(map(str, k)) or "-", zonal_eval(table, k, eig)] for k in kappas]
    header = {"tool": "mvhyper", "version": __version__, "command": "zonal", "argv": list(argv)}
    _emit(_csv_text(header, ["kappa", "value"], rows), args.out)
    return 0


def cmd_sample(args, argv) -> int:
    spec = _load_json(args.spec, "spec")
    fam = from_spec(spec)
    if args.n < 1:
        raise UsageError("--n must be positive")
    draws = fam.sample(args.n, RngStream(args.seed, args.stream))
    shape = draws.shape[1:]
    cols = ["draw"] + [f"x_{i}_{j}" for i in range(shape[0]) for j in range(shape[1])]
    rows = [[k] + list(d.ravel()) for k, d in enumerate(draws)]
    header = _header(args, argv, spec=fam.to_spec(), stream=args.stream)
    _emit(_csv_text(header, cols, rows), args.out)
    return 0


def _report_doc(header, reports, timing) -> str:
    doc = {
        "header": header,
        "summary": {"checks": len(reports), "failed": sum(not r.passed for r in reports)},
        "checks": [r.to_dict(timing=timing) for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _print_summary(reports, stream=sys.stderr):
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} err={r.rel_error:.3g} tol={r.tolerance:.3g}", file=stream)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed", file=stream)


def cmd_verify(args, argv) -> int:
    from .verify import run_suite

    reports = run_suite(args.suite, args.seed, n_samples=args.samples, n_ks=args.ks_samples)
    header = _header(args, argv, suite=args.suite, samples=args.samples, ks_samples=args.ks_samples)
    _emit(_report_doc(header, reports, args.timing), args.out)
    if not args.quiet:
        _print_summary(reports)
    return 0 if all(r.passed for r in reports) else 1


def cmd_mellin_check(args, argv) -> int:
    from .verify import check_mellin_1f1, check_mellin_2f1, check_mellin_limit

    rng = RngStream(args.seed, 0)
    if args.kind == "gauss":
        if args.a is None:
            raise UsageError("--a is required for the gauss kernel")
        reports = [check_mellin_2f1(args.alpha, args.a, args.b, args.c, args.m, args.samples, rng)]
    elif args.kind == "confluent":
        reports = [check_mellin_1f1(args.alpha, args.b, args.c, args.m, args.samples, rng)]
    else:
        reports = [check_mellin_limit(args.alpha, args.b, args.c, args.m)]
    header = _header(args, argv, kind=args.kind)
    _emit(_report_doc(header, reports, False), args.out)
    if not args.quiet:
        _print_summary(reports)
    return 0 if all(r.passed for r in reports) else 1


def cmd_dump_tables(args, argv) -> int:
    out_dir = args.out_dir or os.environ.get(TABLE_DIR_ENV)
    if not out_dir:
        raise UsageError(f"give --out-dir or set {TABLE_DIR_ENV}")
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    for m in range(1, args.max_parts + 1):
        path = Path(out_dir) / f"zonal_K{args.max_degree}_m{m}.txt"
        dump_table(build_zonal_table(args.max_degree, m), path)
        print(path)
    return 0


# ----------------------------------------------------------------- parser


def _add_truncation(p):
    p.add_argument("--max-degree", type=int, default=None, help="series truncation degree K (default 30)")
    p.add_argument("--tol", type=float, default=None, help="early-stopping tolerance (default 1e-10)")
    p.add_argument("--no-accelerate", action="store_true", help="disable Wynn extrapolation at degree K")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvhyper", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mvhyper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-density", help="log-density of a distribution spec at points")
    p.add_argument("--spec", required=True, help="JSON distribution spec with a 'family' tag")
    p.add_argument("--points", required=True, help="points file: JSON list of matrices or blank-line separated text blocks")
    p.add_argument("--out", help="CSV output (default stdout)")
    p.add_argument("--exp", action="store_true", help="add the exponentiated density column")
    _add_truncation(p)
    p.set_defaults(func=cmd_eval_density)

    p = sub.add_parser("eval-hyperg", help="pFq of a matrix argument")
    p.add_argument("--upper", default="", help="comma-separated upper parameters")
    p.add_argument("--lower", default="", help="comma-separated lower parameters")
    p.add_argument("--matrix", help="symmetric matrix file (text or JSON)")
    p.add_argument("--eigenvalues", help="comma-separated eigenvalues instead of a matrix")
    p.add_argument("--series", action="store_true", help="force the zonal series and report its convergence")
    p.add_argument("--out", help="JSON output (default: print the value)")
    _add_truncation(p)
    p.set_defaults(func=cmd_eval_hyperg)

    p = sub.add_parser("zonal", help="zonal polynomials at given eigenvalues")
    p.add_argument("--eigenvalues", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--kappa", help="one partition, e.g. 2,1")
    g.add_argument("--degree", type=int, help="all partitions of this weight")
    p.add_argument("--out")
    p.set_defaults(func=cmd_zonal)

    p = sub.add_parser("sample", help="draws from a family with an exact sampler")
    p.add_argument("--spec", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--stream", type=int, default=0, help="independent stream id under the same seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all",
                   choices=["specialfun", "zonal", "hypergeom", "lemmas", "densities", "compound", "all"])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=20000, help="Monte-Carlo draws per SPD-cone check")
    p.add_argument("--ks-samples", type=int, default=100000, help="draws per KS sampler check")
    p.add_argument("--timing", action="store_true", help="include wall times (makes reports run-dependent)")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--out", help="JSON report (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mellin-check", help="check one Mellin-transform identity")
    p.add_argument("--kind", choices=["gauss", "confluent", "limit"], required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--m", type=int, default=1, choices=[1, 2])
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mellin_check)

    p = sub.add_parser("dump-tables", help="write zonal coefficient tables as exact rationals")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--max-parts", type=int, required=True)
    p.add_argument("--out-dir", help=f"target directory (default ${TABLE_DIR_ENV})")
    p.set_defaults(func=cmd_dump_tables)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return 0 if exc.code == 0 else 2
    if hasattr(args, "tol") and args.command != "dump-tables":
        args.max_degree_set = args.max_degree is not None
        args.tol_set = args.tol is not None
        args.max_degree = 30 if args.max_degree is None else args.max_degree
        args.tol = 1e-10 if args.tol is None else args.tol
    try:
        return args.func(args, argv)
    except UsageError as exc:
        print(f"mvhyper {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except CONFIG_ERRORS as exc:
        print(f"mvhyper {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
