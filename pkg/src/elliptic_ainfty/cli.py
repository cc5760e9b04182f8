"""Command-line front end: ``eis``, ``m-table``, ``verify`` and ``trees``.

Output is JSON (fixed key order, complex numbers as ``[re, im]``) or CSV on
stdout.  Exit codes: 0 success, 1 a verification failed, 2 invalid input.
The default tolerance can be overridden with ``ELLIPTIC_AINFTY_TOL``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import numbers
import os
import sys
from typing import Any, Sequence

import numpy as np

from . import trees
from .eisenstein import METHODS, EisensteinIndex, eisenstein_value
from .lattice import Lattice, LatticeError, SummationConfig
from .structure import full_table
from .verify import SUITE_GROUPS, run_suite

TOL_ENV = "ELLIPTIC_AINFTY_TOL"
DEFAULT_TOL = 1e-10
DEFAULT_MARGIN = 1.2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits with 2 already; keep the message on stderr
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _env_tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from exc
    if not value > 0:
        raise UsageError(f"{TOL_ENV} must be positive")
    return value


def _pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        re, im = (float(p) for p in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from exc
    return complex(re, im)


def _cplx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _jsonable(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, numbers.Integral):
        return int(x)
    if isinstance(x, numbers.Real):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, numbers.Complex):
        return _cplx(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _record(command: str, inputs: dict, results: list[dict], suite: list[dict] | None = None) -> dict:
    return {"command": command, "inputs": inputs, "results": results, "suite": suite}


def _lattice(args: argparse.Namespace) -> Lattice:
    if args.omega1 is not None or args.omega2 is not None:
        if args.omega1 is None or args.omega2 is None:
            raise UsageError("--omega1 and --omega2 must be given together")
        return Lattice(args.omega1, args.omega2)
    tau = args.tau if args.tau is not None else 1j
    if not tau.imag > 0:
        raise UsageError("tau must lie in the upper half-plane")
    return Lattice(1.0, tau)


def _config(tol: float) -> SummationConfig:
    return SummationConfig(target_epsilon=min(tol, 1e-14), radius_margin=DEFAULT_MARGIN)


def cmd_eis(args: argparse.Namespace) -> tuple[dict, int]:
    if args.n < 2 or args.n % 2:
        raise UsageError("n must be even ≥ 2")
    L = _lattice(args)
    val = eisenstein_value(L, EisensteinIndex(args.n), args.method, _config(args.tol))
    inputs = {"omega1": _cplx(L.omega1), "omega2": _cplx(L.omega2), "n": args.n, "method": args.method, "tol": args.tol}
    results = [{"index": f"e*_{args.n}", "value": _cplx(val.value), "tail_bound": val.tail_bound}]
    return _record("eis", inputs, results), 0


def cmd_table(args: argparse.Namespace) -> tuple[dict, int]:
    if args.n_max < 2:
        raise UsageError("n-max must be >= 2")
    L = _lattice(args)
    table = full_table(L, args.n_max, _config(args.tol))
    results = [
        {
            "index": e.key,
            "family": e.index.family if e.index else "m2",
            "exponents": list(e.index.exponents) if e.index else [],
            "inputs": [x.name for x in e.inputs],
            "output": e.output.name,
            "value": _cplx(e.coefficient),
            "tail_bound": e.tail_bound,
        }
        for e in table
    ]
    inputs = {"omega1": _cplx(L.omega1), "omega2": _cplx(L.omega2), "n_max": args.n_max, "tol": args.tol}
    return _record("m-table", inputs, results), 0


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    only = None
    if args.only:
        unknown = set(args.only) - set(SUITE_GROUPS)
        if unknown:
            raise UsageError(f"unknown check group(s) {sorted(unknown)}; choose from {list(SUITE_GROUPS)}")
        only = args.only
    kwargs: dict[str, Any] = {}
    if args.im_tau:
        if any(y <= 0 for y in args.im_tau):
            raise UsageError("--im-tau values must be positive")
        kwargs["im_tau_list"] = args.im_tau
    tol = args.tol if args.tol_given else None
    reports = run_suite(only=only, tol=tol, literal=args.literal, **kwargs)
    suite = [_jsonable(r.as_dict()) for r in reports]
    failures = [r for r in reports if not r.passed]
    results = [{"index": "summary", "checks": len(reports), "failures": len(failures)}]
    inputs = {"only": only, "tol": tol, "literal": args.literal, "im_tau": args.im_tau}
    if failures:
        for r in failures:
            print(f"FAIL {r.name} {json.dumps(_jsonable(r.inputs))} residual={r.residual:.3e} tol={r.tolerance:.1e}",
                  file=sys.stderr)
    return _record("verify", inputs, results, suite), (1 if failures else 0)


def cmd_trees(args: argparse.Namespace) -> tuple[dict, int]:
    if args.leaves < 2 or args.leaves > trees.MAX_LEAVES:
        raise UsageError(f"leaves must be between 2 and {trees.MAX_LEAVES}")
    counts = []
    for n in range(2, args.leaves + 1):
        all_trees = trees.enumerate_trees([0] * n)
        counts.append({"leaves": n, "trees": len(all_trees), "catalan": trees.catalan(n - 1)})
    results: list[dict] = [{"index": "counts", "rows": counts}]
    if args.string is not None:
        a, b, c, d = args.string
        buckets = trees.aggregate_by_case(a, b, c, d)
        closed = trees.binomial_sum_by_family(a, b, c, d)
        for case in ("i", "ii"):
            results.append({
                "index": f"case_{case}",
                "tree_sum": [[list(k), v] for k, v in buckets[case].items()],
                "binomial": [[list(k), v] for k, v in closed[case].items()],
            })
    return _record("trees", {"leaves": args.leaves, "string": args.string}, results), 0


def _add_lattice_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau", type=_pair, help="tau as 're,im' (lattice Z + Z tau)")
    p.add_argument("--omega1", type=_pair, help="first period as 're,im'")
    p.add_argument("--omega2", type=_pair, help="second period as 're,im'")


def build_parser(default_tol: float) -> argparse.ArgumentParser:
    parser = _Parser(prog="elliptic-ainfty", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eis", help="evaluate e*_n")
    _add_lattice_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="rapid")
    p.add_argument("--tol", type=float, default=default_tol)
    p.set_defaults(func=cmd_eis)

    p = sub.add_parser("m-table", help="structure constants up to n-max")
    _add_lattice_args(p)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--tol", type=float, default=default_tol)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the identity checks")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--only", nargs="+", metavar="GROUP")
    p.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p.add_argument("--im-tau", type=float, nargs="+", help="Im tau samples for the cusp checks")
    p.add_argument("--literal", action="store_true", help="also run the uncorrected forms of the three identities that need a correction")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trees", help="tree counts and tree-sum coefficient tables")
    p.add_argument("--leaves", type=int, default=8)
    p.add_argument("--string", type=int, nargs=4, metavar=("A", "B", "C", "D"))
    p.set_defaults(func=cmd_trees)
    return parser


_CSV_FIELDS = ("index", "family", "exponents", "inputs", "output", "re", "im", "tail_bound")


def _to_csv(record: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CSV_FIELDS)
    for r in record["results"]:
        w.writerow([
            r["index"], r.get("family", ""), " ".join(map(str, r.get("exponents", []))),
            " ".join(r.get("inputs", [])), r.get("output", ""), repr(r["value"][0]), repr(r["value"][1]),
            repr(r["tail_bound"]),
        ])
    return buf.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    try:
        default_tol = _env_tolerance()
        parser = build_parser(default_tol)
        args = parser.parse_args(argv)
        if args.command == "verify":
            args.tol_given = args.tol is not None
        if getattr(args, "tol", None) is not None and not args.tol > 0:
            raise UsageError("tol must be positive")
        record, code = args.func(args)
    except (UsageError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "format", "json") == "csv":
        sys.stdout.write(_to_csv(record))
    else:
        sys.stdout.write(json.dumps(_jsonable(record), ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
