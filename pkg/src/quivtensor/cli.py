"""Command line front end.

Exit codes: 0 ok, 1 verification mismatch, 2 parse error, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import verify
from .decompose import (
    Decomposition,
    cached_fusion_table,
    fusion_product,
    krull_schmidt,
    nth_root_string,
    tensor_power_decomposition,
    tensor_powers,
)
from .delta import (
    PartitionSpec,
    delta_power_decomposition,
    delta_tensor_decomposition,
    enumerate_partitioning_morphisms,
    is_coassociative,
    validate_spec,
)
from .errors import BoundExceededError, ParseError, UnsupportedShapeError
from .formulas import DEFAULT_TWIN_BRANCH, TWIN_BRANCHES, b_n_formula
from .quiver import Quiver, ShapeInfo, detect_shape, enumerate_positive_roots, type_a_quiver, type_d_quiver
from .rep import Representation

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_UNSUPPORTED = 0, 1, 2, 3

SUITES = ("formulaA", "formulaD", "twin-branch", "delta", "power-identity", "chains", "krull-schmidt", "growth")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", EXIT_PARSE) from exc


def load_quiver(path: str) -> Quiver:
    return Quiver.from_dict(_read_json(path))


def load_shape(path: str) -> ShapeInfo:
    shape = detect_shape(load_quiver(path))
    if shape.dynkin not in ("A", "D"):
        raise UnsupportedShapeError(f"{path}: quiver is not of type A or D")
    return shape


def load_module(shape: ShapeInfo, path: str) -> Decomposition:
    """Read a module given by roots (``entries``) or by explicit matrices (``dims``/``maps``)."""
    data = _read_json(path)
    if "entries" in data:
        return Decomposition.from_dict(shape, data)
    if "dims" in data:
        return krull_schmidt(Representation.from_dict(shape.quiver, data), shape)
    raise ParseError(f"{path}: expected an 'entries' or 'dims' key")


def _emit(payload, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    rows = payload if isinstance(payload, list) else payload.get("rows", [])
    if not rows:
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    out.write(buf.getvalue())


def _entries_rows(a: Decomposition) -> list[dict]:
    # one row keyed by root id, so tables from different runs join on column names
    return [{r.id: str(m) for r, m in a.items()}] if a else []


def _check_bound(size: int, bound: int, what: str) -> None:
    if size > bound:
        raise BoundExceededError(f"{what} has total dimension {size}, above the bound {bound} (raise --max-dim)")


# ---------------------------------------------------------------------------
# subcommands


def cmd_roots(args, out) -> int:
    shape = load_shape(args.quiver)
    rows = [{"root": r.id, "kind": r.kind, "length": r.length} for r in enumerate_positive_roots(shape)]
    _emit(rows if args.format == "csv" else {"shape": shape.name, "rows": rows}, args.format, out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    shape = load_shape(args.quiver)
    a = load_module(shape, _one_module(args))
    _emit(a.to_dict() if args.format == "json" else _entries_rows(a), args.format, out)
    return EXIT_OK


def _one_module(args) -> str:
    if not args.module:
        raise CliError("a module file is required (-m)", EXIT_PARSE)
    return args.module[0]


def _partition(args, shape: ShapeInfo) -> PartitionSpec | None:
    if not args.partition:
        return None
    p = PartitionSpec.from_dict(shape.quiver, _read_json(args.partition))
    report = validate_spec(p)
    if not report.ok:
        raise CliError("invalid partitioning morphism: " + "; ".join(report.problems), EXIT_UNSUPPORTED)
    if not is_coassociative(p):
        raise CliError("partitioning morphism is not coassociative", EXIT_UNSUPPORTED)
    return p


def cmd_tensor(args, out) -> int:
    shape = load_shape(args.quiver)
    if not args.module or len(args.module) != 2:
        raise CliError("tensor needs exactly two -m module files", EXIT_PARSE)
    a, b = (load_module(shape, m) for m in args.module)
    da, db = (x.dim_vector(shape.rank) for x in (a, b))
    p = _partition(args, shape)
    size = sum(da) * sum(db) if p else sum(x * y for x, y in zip(da, db))
    _check_bound(size, args.max_dim, "the tensor product")
    table = cached_fusion_table(shape, args.cache_dir)
    result = delta_tensor_decomposition(a, b, p, table) if p else fusion_product(a, b, table)
    _emit(result.to_dict() if args.format == "json" else _entries_rows(result), args.format, out)
    return EXIT_OK


def cmd_power(args, out) -> int:
    shape = load_shape(args.quiver)
    a = load_module(shape, _one_module(args))
    n = _require_n(args.n)
    dims = a.dim_vector(shape.rank)
    p = _partition(args, shape)
    size = sum(dims) ** n if p else sum(x**n for x in dims)
    _check_bound(size, args.max_dim, f"the {n}-th tensor power")
    table = cached_fusion_table(shape, args.cache_dir)
    result = delta_power_decomposition(a, n, p, table) if p else tensor_power_decomposition(a, n, table)
    _emit(result.to_dict() if args.format == "json" else _entries_rows(result), args.format, out)
    return EXIT_OK


def _require_n(n: int | None) -> int:
    if n is None or n < 1:
        raise CliError("n must be a positive integer", EXIT_PARSE)
    return n


def _b_sequence(args, shape: ShapeInfo, a: Decomposition) -> list[int]:
    n_max = _require_n(args.n_max)
    if args.method == "formula":
        return [b_n_formula(a, n, shape, args.twin_branch) for n in range(1, n_max + 1)]
    dims = a.dim_vector(shape.rank)
    _check_bound(sum(x**n_max for x in dims), args.max_dim, f"the {n_max}-th tensor power")
    table = cached_fusion_table(shape, args.cache_dir)
    return [p.total() for p in tensor_powers(a, n_max, table)]


def cmd_bn(args, out) -> int:
    shape = load_shape(args.quiver)
    a = load_module(shape, _one_module(args))
    dims = a.dim_vector(shape.rank)
    rows = []
    for n, b in enumerate(_b_sequence(args, shape, a), start=1):
        bd = b + sum(dims) ** n - sum(x**n for x in dims)
        rows.append({"n": n, "b_n": str(b), "b_n_delta": str(bd), "b_n_root": nth_root_string(b, n, args.digits)})
    _emit(rows if args.format == "csv" else {"shape": shape.name, "rows": rows}, args.format, out)
    return EXIT_OK


def cmd_beta(args, out) -> int:
    shape = load_shape(args.quiver)
    a = load_module(shape, _one_module(args))
    dims = a.dim_vector(shape.rank)
    rows = []
    for n, b in enumerate(_b_sequence(args, shape, a), start=1):
        bd = b + sum(dims) ** n - sum(x**n for x in dims)
        rows.append(
            {"n": n, "beta": nth_root_string(b, n, args.digits), "beta_delta": nth_root_string(bd, n, args.digits)}
        )
    payload = {
        "shape": shape.name,
        "max_vertex_dim": max(dims, default=0),
        "total_dim": sum(dims),
        "rows": rows,
    }
    _emit(rows if args.format == "csv" else payload, args.format, out)
    return EXIT_OK


def cmd_delta_enum(args, out) -> int:
    q = load_quiver(args.quiver)
    if args.partition:
        p = PartitionSpec.from_dict(q, _read_json(args.partition))
        report = validate_spec(p)
        payload = {
            "disjoint": report.disjoint,
            "covering": report.covering,
            "diagonal": report.diagonal,
            "problems": report.problems,
            "coassociative": is_coassociative(p) if report.ok else None,
        }
        _emit(payload, "json", out)
        return EXIT_OK
    specs = enumerate_partitioning_morphisms(q)
    rows = []
    for p in specs:
        co = is_coassociative(p)
        if co or not args.coassociative_only:
            rows.append({"partition": p.to_dict()["E"], "coassociative": co})
    payload = {"candidates": len(specs), "coassociative": sum(is_coassociative(p) for p in specs), "rows": rows}
    if args.format == "csv":
        rows = [{"index": i, "coassociative": r["coassociative"], "partition": json.dumps(r["partition"])} for i, r in enumerate(rows)]
        _emit(rows, "csv", out)
    else:
        _emit(payload, "json", out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    suite = args.suite
    quivers = [load_quiver(args.quiver)] if args.quiver else None
    trials = args.trials
    seed = args.seed
    if suite in ("formulaA", "formulaD"):
        kind = suite[-1]
        qs = quivers or verify.default_quivers(kind)
        for q in qs:
            if detect_shape(q).dynkin != kind:
                raise UnsupportedShapeError(f"suite {suite} needs type {kind} quivers")
        trials = trials or (50 if kind == "A" else 30)
        n_max = args.n or (5 if kind == "A" else 4)
        report = verify.formula_suite(qs, trials, n_max, seed, args.twin_branch, suite)
    elif suite == "twin-branch":
        qs = quivers or verify.default_quivers("D")
        report = verify.twin_branch_suite(qs, trials or 10, args.n or 3, seed)
    elif suite == "delta":
        q = quivers[0] if quivers else _need_quiver(suite)
        report = verify.delta_suite(q, trials or 10, args.n or 4, seed)
    elif suite == "chains":
        q = quivers[0] if quivers else _need_quiver(suite)
        report = verify.chains_suite(q, args.n or 4)
    elif suite == "power-identity":
        qs = quivers or [type_a_quiver(3), type_d_quiver(4)]
        report = verify.power_identity_suite(qs, trials or 20, args.n or 4, seed)
    elif suite == "krull-schmidt":
        qs = quivers or [type_a_quiver(4), type_d_quiver(4)]
        report = verify.krull_schmidt_suite(qs, trials or 100, seed)
    elif suite == "growth":
        qs = quivers or [type_a_quiver(3), type_d_quiver(4)]
        report = verify.growth_suite(qs, trials or 20, seed)
    else:  # argparse restricts choices
        raise CliError(f"unknown suite {suite}", EXIT_PARSE)
    if args.brief:
        report.pop("points", None)
    _emit(report, "json", out)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def _need_quiver(suite: str):
    raise CliError(f"suite {suite} needs a quiver (-q)", EXIT_PARSE)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quivtensor", description="Tensor powers of quiver representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, module=False):
        p.add_argument("-q", "--quiver", required=True, help="quiver JSON file")
        if module:
            p.add_argument("-m", "--module", action="append", help="module JSON (by roots or explicit matrices)")
            p.add_argument("-p", "--partition", help="partitioning morphism JSON")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--cache-dir", help="directory for fusion-table cache files")
        p.add_argument("--max-dim", type=int, default=10**4, help="total-dimension bound for brute-force work")

    common(sub.add_parser("roots", help="list positive roots"))
    common(sub.add_parser("decompose", help="decompose an explicit representation"), module=True)
    common(sub.add_parser("tensor", help="decompose M (x) N"), module=True)
    p = sub.add_parser("power", help="decompose M^(x)n")
    common(p, module=True)
    p.add_argument("-n", "--n", type=int, required=True)
    for name, helptext in (("bn", "table of b_n, b_n^Delta and b_n^(1/n)"), ("beta", "growth-rate estimates")):
        p = sub.add_parser(name, help=helptext)
        common(p, module=True)
        p.add_argument("--n-max", type=int, default=10)
        p.add_argument("--method", choices=("formula", "brute"), default="formula")
        p.add_argument("--twin-branch", choices=TWIN_BRANCHES, default=DEFAULT_TWIN_BRANCH)
        p.add_argument("--digits", type=int, default=30)
    p = sub.add_parser("delta-enum", help="enumerate or validate partitioning morphisms")
    p.add_argument("-q", "--quiver", required=True)
    p.add_argument("-p", "--partition", help="validate this partition instead of enumerating")
    p.add_argument("--coassociative-only", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p = sub.add_parser("verify", help="run an oracle comparison suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("-q", "--quiver")
    p.add_argument("-n", "--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--twin-branch", choices=TWIN_BRANCHES, default=DEFAULT_TWIN_BRANCH)
    p.add_argument("--brief", action="store_true", help="omit per-point records")
    return parser


COMMANDS = {
    "roots": cmd_roots,
    "decompose": cmd_decompose,
    "tensor": cmd_tensor,
    "power": cmd_power,
    "bn": cmd_bn,
    "beta": cmd_beta,
    "delta-enum": cmd_delta_enum,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnsupportedShapeError, BoundExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
