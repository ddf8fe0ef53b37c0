"""Command-line interface.

Subcommands::

    tetsubdiv gen       generate a subdivision and write VTK / JSON / OFF
    tetsubdiv validate  run the exact validation suite on a mesh
    tetsubdiv info      print counts for an order without writing anything
    tetsubdiv resample  re-emit a nodal field for the subdivided mesh

Exit codes: 0 success, 2 usage or invalid input, 3 I/O error,
4 validation failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .connectivity import (
    CHUNK,
    FILL,
    ORIENTATION_POLICIES,
    POSITIVE,
    UPRIGHT,
    generate,
)
from .io import (
    PhysicalEmbedding,
    apply_ordering_permutation,
    load_permutation,
    read_field,
    read_json,
    write_json,
    write_off_boundary,
    write_vtk_legacy,
)
from .lattice import node_count
from .validation import validate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VALIDATION = 4


def _add_order_argument(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--order",
        "-n",
        type=int,
        required=required,
        help="polynomial order N of the element (N >= 1)",
    )


def _add_policy_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--orientation",
        choices=sorted(ORIENTATION_POLICIES),
        default=POSITIVE,
        help=f"node-ordering policy for generated tets (default: {POSITIVE})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tetsubdiv",
        description=(
            "Subdivide an order-N nodal tetrahedral element into N^3 linear "
            "sub-tets using only the existing nodes."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a subdivision and write it out")
    _add_order_argument(gen)
    _add_policy_argument(gen)
    gen.add_argument(
        "--format",
        choices=("vtk", "json", "off"),
        default="vtk",
        help="output format (default: vtk)",
    )
    gen.add_argument("--out", "-o", required=True, help="output path ('-' for stdout)")
    gen.add_argument(
        "--field",
        action="append",
        default=[],
        metavar="PATH",
        help="nodal field file (JSON array or whitespace-separated numbers); "
        "may be repeated",
    )
    gen.add_argument(
        "--embedding",
        nargs=12,
        type=float,
        metavar="F",
        help="physical corner positions, 12 floats: apex xyz then the three "
        "base corners xyz",
    )
    gen.add_argument(
        "--permutation",
        metavar="PATH",
        help="node-ordering permutation table (table[old_id] = new_id) applied "
        "to the mesh and any fields before writing",
    )

    val = sub.add_parser("validate", help="run the exact validation suite")
    group = val.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", "-n", type=int, help="generate and validate order N")
    group.add_argument("--in", dest="infile", metavar="PATH", help="validate a JSON mesh")
    _add_policy_argument(val)
    val.add_argument(
        "--samples",
        type=int,
        default=10_000,
        help="containment sample count (default: 10000)",
    )
    val.add_argument("--seed", type=int, default=0, help="sampling seed (default: 0)")
    val.add_argument(
        "--pairwise-limit",
        type=int,
        default=3,
        help="run the exhaustive pairwise check only for order <= LIMIT "
        "(default: 3)",
    )
    val.add_argument("--json", action="store_true", help="emit the report as JSON")

    info = sub.add_parser("info", help="print node/tet counts for an order")
    _add_order_argument(info)

    res = sub.add_parser(
        "resample",
        help="attach a nodal field to the subdivided mesh and write VTK "
        "(values transfer unchanged because subdivision adds no nodes)",
    )
    _add_order_argument(res)
    _add_policy_argument(res)
    res.add_argument("--field", required=True, metavar="PATH", help="input field file")
    res.add_argument("--out", "-o", required=True, help="output path ('-' for stdout)")
    res.add_argument(
        "--embedding",
        nargs=12,
        type=float,
        metavar="F",
        help="physical corner positions, 12 floats: apex xyz then the three "
        "base corners xyz",
    )
    res.add_argument(
        "--permutation",
        metavar="PATH",
        help="node-ordering permutation table applied to the mesh and the "
        "field before writing",
    )
    return parser


def _write_out(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as handle:
            handle.write(data)


def _parse_embedding(values: list[float] | None) -> PhysicalEmbedding | None:
    if values is None:
        return None
    corners = tuple(tuple(values[3 * c : 3 * c + 3]) for c in range(4))
    return PhysicalEmbedding(corners)


def _cmd_gen(args: argparse.Namespace) -> int:
    mesh = generate(args.order, args.orientation)
    fields = [read_field(p, args.order) for p in args.field]
    embedding = _parse_embedding(args.embedding)
    if args.permutation is not None:
        table = load_permutation(args.permutation)
        mesh = apply_ordering_permutation(mesh, table)
        fields = [apply_ordering_permutation(f, table) for f in fields]
    if args.format == "vtk":
        data = write_vtk_legacy(mesh, fields=fields, embedding=embedding)
    elif args.format == "json":
        if embedding is not None:
            raise ValueError("--embedding applies only to --format vtk")
        data = write_json(mesh, fields=fields)
    else:
        if fields or embedding is not None:
            raise ValueError("--format off accepts neither fields nor an embedding")
        data = write_off_boundary(mesh)
    _write_out(args.out, data)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    if args.infile is not None:
        mesh, _ = read_json(args.infile)
    else:
        mesh = generate(args.order, args.orientation)
    report = validate(
        mesh,
        samples=args.samples,
        seed=args.seed,
        pairwise_limit=args.pairwise_limit,
    )
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.passed else EXIT_VALIDATION


def _cmd_info(args: argparse.Namespace) -> int:
    mesh = generate(args.order)
    n = args.order
    by_kind = {UPRIGHT: 0, FILL: 0, CHUNK: 0}
    by_level = [0] * (n + 1)
    for t in mesh.tets:
        by_kind[t.kind] += 1
        by_level[t.level] += 1
    print(f"order:            {n}")
    print(f"nodes:            {node_count(n)}")
    print(f"tets:             {len(mesh.tets)}  (= {n}^3)")
    print(f"per-level counts: {' '.join(str(c) for c in by_level[1:])}")
    print(
        "per-kind counts:  "
        f"upright={by_kind[UPRIGHT]} fill={by_kind[FILL]} chunk={by_kind[CHUNK]}"
    )
    return EXIT_OK


def _cmd_resample(args: argparse.Namespace) -> int:
    mesh = generate(args.order, args.orientation)
    field = read_field(args.field, args.order)
    if args.permutation is not None:
        table = load_permutation(args.permutation)
        mesh = apply_ordering_permutation(mesh, table)
        field = apply_ordering_permutation(field, table)
    embedding = _parse_embedding(args.embedding)
    data = write_vtk_legacy(mesh, fields=[field], embedding=embedding)
    _write_out(args.out, data)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "validate": _cmd_validate,
    "info": _cmd_info,
    "resample": _cmd_resample,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
