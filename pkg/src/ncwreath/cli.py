"""Command-line front end.

Every library operation with a stable textual answer is exposed as a
subcommand so results can be scripted and diffed:

* ``partitions`` — enumerate diagrams, compose, adjoint, tensor.
* ``tmap`` — build a diagram's matrix over an algebra, verify the
  composition rescaling, compute Gram ranks.
* ``algebra`` — check the delta-form property, decompose a state.
* ``decorated`` — count or list admissibly labeled diagrams.
* ``fusion`` — word fusion products, dimensions, trivial multiplicities,
  and the free-product ring.

Output is human-readable text by default; ``--format json`` emits a JSON
document that re-parses to the same value. Exit codes: 0 success, 1 a
verification that ran but exceeded its tolerance, 2 bad input (``parse
error:`` / ``file error:`` on standard error), 3 a resource bound was hit
(``bound error:``). No command writes to any input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .algebra import DEFAULT_TOLERANCE, MultiMatrixAlgebra
from .decorated import enumerate_decorated
from .errors import BoundError, NcwreathError, ValidationError
from .fusion import (
    AlternatingWord,
    Word,
    WordRing,
    a_rep_trivial_multiplicity,
    dimension,
    free_product_fusion,
    fusion_product,
    multiplicity_of_trivial,
    sorted_combination,
)
from .groups import Group, parse_group_spec, parse_word_text
from .partitions import (
    DEFAULT_MAX_POINTS,
    Partition,
    adjoint,
    compose,
    enumerate_partitions,
    tensor,
)
from .tensor_maps import (
    DEFAULT_MAX_ENTRIES,
    build_map,
    gram_rank,
    hom_dimension,
    verify_composition,
)


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures match the CLI error contract."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"parse error: {message}", file=sys.stderr)
        raise SystemExit(2)


# -- input loading ------------------------------------------------------------


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def _load_partition(path: str) -> Partition:
    return Partition.from_dict(_load_json(path))


def _load_algebra(path: str) -> MultiMatrixAlgebra:
    return MultiMatrixAlgebra.from_dict(_load_json(path))


def _parse_factors(text: str) -> tuple[WordRing, ...]:
    """Parse a factor-ring list such as ``"cyclic:2@4,cyclic:2@5"``."""
    rings = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if "@" not in chunk:
            raise ValidationError(
                f"factor {chunk!r} must look like <groupspec>@<dimension>"
            )
        spec, _, dim_text = chunk.rpartition("@")
        try:
            dim = int(dim_text)
        except ValueError:
            raise ValidationError(f"bad factor dimension {dim_text!r}") from None
        rings.append(WordRing(parse_group_spec(spec), dim))
    if not rings:
        raise ValidationError("at least one factor ring is required")
    return tuple(rings)


def _parse_alternating(rings: Sequence[WordRing], text: str) -> AlternatingWord:
    """Parse an alternating word such as ``"0:s,s|1:e"``; ``""`` is empty."""
    text = text.strip()
    if not text:
        return AlternatingWord(())
    entries = []
    for chunk in text.split("|"):
        index_text, sep, letters_text = chunk.partition(":")
        if not sep:
            raise ValidationError(
                f"entry {chunk!r} must look like <factor>:<letters>"
            )
        try:
            index = int(index_text)
        except ValueError:
            raise ValidationError(f"bad factor index {index_text!r}") from None
        if not 0 <= index < len(rings):
            raise ValidationError(
                f"factor index {index} out of range for {len(rings)} factors"
            )
        group = rings[index].group
        entries.append((index, Word(group, parse_word_text(group, letters_text))))
    return AlternatingWord(tuple(entries))


# -- output helpers -----------------------------------------------------------


def _print_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2))


def format_word(word: Word) -> str:
    if not word.letters:
        return "∅"
    return "(" + ",".join(word.names()) + ")"


def format_alternating(word: AlternatingWord) -> str:
    if not word.entries:
        return "∅"
    return "|".join(
        f"{index}:{','.join(label.names())}" for index, label in word.entries
    )


def _word_combination_payload(combination) -> list[dict]:
    return [
        {"word": word.names(), "mult": mult}
        for word, mult in sorted_combination(combination)
    ]


def _alternating_combination_payload(combination) -> list[dict]:
    return [
        {
            "word": [
                {"factor": index, "letters": label.names()}
                for index, label in word.entries
            ],
            "mult": mult,
        }
        for word, mult in sorted_combination(combination)
    ]


def _print_combination(combination, fmt: str, payload_fn, text_fn) -> None:
    if fmt == "json":
        _print_json(payload_fn(combination))
    else:
        for word, mult in sorted_combination(combination):
            print(f"{text_fn(word)}: {mult}")


def _matrix_rows(matrix) -> list[list[float]]:
    return [[float(x) for x in row] for row in matrix]


# -- partitions ---------------------------------------------------------------


def _cmd_partitions_enumerate(args: argparse.Namespace) -> int:
    if args.count_only:
        # the count is known in closed form; skip materializing the diagrams
        count = hom_dimension(args.upper, args.lower, max_points=args.max_points)
        if args.format == "json":
            _print_json({"upper": args.upper, "lower": args.lower, "count": count})
        else:
            print(count)
        return 0
    parts = enumerate_partitions(args.upper, args.lower, max_points=args.max_points)
    if args.format == "json":
        _print_json(
            {
                "upper": args.upper,
                "lower": args.lower,
                "count": len(parts),
                "partitions": [p.to_dict() for p in parts],
            }
        )
    else:
        for p in parts:
            print(p)
    return 0


def _cmd_partitions_compose(args: argparse.Namespace) -> int:
    p = _load_partition(args.p)
    q = _load_partition(args.q)
    result = compose(p, q)
    payload = {
        "result": result.result.to_dict(),
        "blocks_p": p.block_count,
        "blocks_q": q.block_count,
        "blocks_result": result.result.block_count,
        "central_blocks": result.central_blocks,
        "cycles": result.cycles,
    }
    if args.format == "json":
        _print_json(payload)
    else:
        print(f"result: {result.result}")
        for key in (
            "blocks_p",
            "blocks_q",
            "blocks_result",
            "central_blocks",
            "cycles",
        ):
            print(f"{key}: {payload[key]}")
    return 0


def _cmd_partitions_adjoint(args: argparse.Namespace) -> int:
    result = adjoint(_load_partition(args.partition))
    if args.format == "json":
        _print_json(result.to_dict())
    else:
        print(result)
    return 0


def _cmd_partitions_tensor(args: argparse.Namespace) -> int:
    result = tensor(_load_partition(args.p), _load_partition(args.q))
    if args.format == "json":
        _print_json(result.to_dict())
    else:
        print(result)
    return 0


# -- tensor maps --------------------------------------------------------------


def _cmd_tmap_build(args: argparse.Namespace) -> int:
    algebra = _load_algebra(args.algebra)
    p = _load_partition(args.partition)
    t = build_map(algebra, p, max_entries=args.max_entries)
    rows, cols = t.matrix.shape
    if args.format == "json":
        _print_json(
            {
                "algebra": algebra.to_dict(),
                "partition": p.to_dict(),
                "rows": rows,
                "cols": cols,
                "matrix": _matrix_rows(t.matrix),
            }
        )
    elif args.format == "csv":
        for row in t.matrix:
            print(",".join(format(float(x), ".17g") for x in row))
    else:
        basis = " ".join(
            f"({ix.block},{ix.row},{ix.col})" for ix in algebra.basis_indices()
        )
        print(f"matrix: {rows} x {cols}")
        print(f"basis order (block,row,col): {basis}")
        print("rows/columns are tuples over the basis, first factor most significant")
        for row in t.matrix:
            print(" ".join(format(float(x), ".10g") for x in row))
    return 0


def _cmd_tmap_verify(args: argparse.Namespace) -> int:
    algebra = _load_algebra(args.algebra)
    p = _load_partition(args.p)
    q = _load_partition(args.q)
    deviation = verify_composition(algebra, p, q, max_entries=args.max_entries)
    cycles = compose(p, q).cycles
    ok = deviation <= args.tolerance
    if args.format == "json":
        _print_json(
            {
                "deviation": deviation,
                "tolerance": args.tolerance,
                "cycles": cycles,
                "ok": ok,
            }
        )
    else:
        print(f"deviation: {deviation:.3e}")
        print(f"tolerance: {args.tolerance:.3e}")
        print(f"cycles: {cycles}")
        print(f"ok: {'true' if ok else 'false'}")
    return 0 if ok else 1


def _cmd_tmap_gram_rank(args: argparse.Namespace) -> int:
    algebra = _load_algebra(args.algebra)
    parts = enumerate_partitions(args.upper, args.lower, max_points=args.max_points)
    maps = [build_map(algebra, p, max_entries=args.max_entries) for p in parts]
    rank = gram_rank(maps)
    if args.format == "json":
        _print_json(
            {
                "upper": args.upper,
                "lower": args.lower,
                "count": len(parts),
                "rank": rank,
            }
        )
    else:
        print(f"count: {len(parts)}")
        print(f"rank: {rank}")
    return 0


# -- algebra ------------------------------------------------------------------


def _algebra_path(args: argparse.Namespace) -> str:
    path = args.algebra or args.spec
    if path is None:
        raise ValidationError("an algebra file is required (--algebra or --spec)")
    return path


def _cmd_algebra_check(args: argparse.Namespace) -> int:
    algebra = _load_algebra(_algebra_path(args))
    delta = algebra.is_delta_form(args.tolerance)
    payload = {
        "is_delta_form": delta is not None,
        "delta": delta,
        "factors": len(algebra.decompose_by_delta(args.tolerance)),
    }
    if args.format == "json":
        _print_json(payload)
    else:
        print(json.dumps(payload))
    return 0


def _cmd_algebra_decompose(args: argparse.Namespace) -> int:
    algebra = _load_algebra(_algebra_path(args))
    factors = algebra.decompose_by_delta(args.tolerance)
    if args.format == "json":
        _print_json(
            {
                "factors": [
                    {
                        "delta": f.delta,
                        "block_indices": list(f.block_indices),
                        "algebra": f.algebra.to_dict(),
                    }
                    for f in factors
                ]
            }
        )
    else:
        print(f"factors: {len(factors)}")
        for rank, f in enumerate(factors, start=1):
            blocks = ",".join(str(b) for b in f.block_indices)
            sizes = ",".join(str(s) for s in f.algebra.block_sizes)
            print(f"factor {rank}: delta={f.delta:g} blocks=[{blocks}] sizes=[{sizes}]")
    return 0


# -- decorated ----------------------------------------------------------------


def _decorated_args(args: argparse.Namespace):
    group = parse_group_spec(args.group)
    upper = parse_word_text(group, args.x)
    lower = parse_word_text(group, args.y)
    return group, upper, lower


def _cmd_decorated_count(args: argparse.Namespace) -> int:
    group, upper, lower = _decorated_args(args)
    found = enumerate_decorated(group, upper, lower, max_points=args.max_points)
    if args.format == "json":
        _print_json(
            {
                "group": group.describe(),
                "upper": [group.element_name(g) for g in upper],
                "lower": [group.element_name(g) for g in lower],
                "count": len(found),
            }
        )
    else:
        print(len(found))
    return 0


def _cmd_decorated_list(args: argparse.Namespace) -> int:
    group, upper, lower = _decorated_args(args)
    found = enumerate_decorated(group, upper, lower, max_points=args.max_points)
    if args.format == "json":
        _print_json(
            {
                "group": group.describe(),
                "upper": [group.element_name(g) for g in upper],
                "lower": [group.element_name(g) for g in lower],
                "count": len(found),
                "partitions": [dp.to_dict() for dp in found],
            }
        )
    else:
        for dp in found:
            print(dp)
    return 0


# -- fusion -------------------------------------------------------------------


def _fusion_group(args: argparse.Namespace) -> Group:
    return parse_group_spec(args.group)


def _cmd_fusion_product(args: argparse.Namespace) -> int:
    group = _fusion_group(args)
    x = Word(group, parse_word_text(group, args.x))
    y = Word(group, parse_word_text(group, args.y))
    _print_combination(
        fusion_product(x, y), args.format, _word_combination_payload, format_word
    )
    return 0


def _cmd_fusion_dim(args: argparse.Namespace) -> int:
    group = _fusion_group(args)
    word = Word(group, parse_word_text(group, args.word))
    value = dimension(word, args.n)
    if args.format == "json":
        _print_json(
            {
                "group": group.describe(),
                "word": word.names(),
                "n": args.n,
                "dimension": value,
            }
        )
    else:
        print(value)
    return 0


def _cmd_fusion_trivial_mult(args: argparse.Namespace) -> int:
    group = _fusion_group(args)
    x = Word(group, parse_word_text(group, args.x))
    y = Word(group, parse_word_text(group, args.y))
    value = multiplicity_of_trivial(x, y)
    if args.format == "json":
        _print_json(
            {
                "group": group.describe(),
                "x": x.names(),
                "y": y.names(),
                "multiplicity": value,
            }
        )
    else:
        print(value)
    return 0


def _cmd_fusion_a_trivial_mult(args: argparse.Namespace) -> int:
    group = _fusion_group(args)
    letters = parse_word_text(group, args.word)
    value = a_rep_trivial_multiplicity(group, letters)
    if args.format == "json":
        _print_json(
            {
                "group": group.describe(),
                "word": [group.element_name(g) for g in letters],
                "multiplicity": value,
            }
        )
    else:
        print(value)
    return 0


def _cmd_fusion_freeprod(args: argparse.Namespace) -> int:
    rings = _parse_factors(args.factors)
    w1 = _parse_alternating(rings, args.x)
    w2 = _parse_alternating(rings, args.y)
    _print_combination(
        free_product_fusion(rings, w1, w2),
        args.format,
        _alternating_combination_payload,
        format_alternating,
    )
    return 0


# -- parser wiring ------------------------------------------------------------


def _add_format(parser: argparse.ArgumentParser, *extra: str) -> None:
    parser.add_argument(
        "--format",
        choices=["text", "json", *extra],
        default="text",
        help="output format (default: text)",
    )


def _add_max_points(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-points",
        type=int,
        default=DEFAULT_MAX_POINTS,
        help=f"refuse enumerations past this many points (default {DEFAULT_MAX_POINTS})",
    )


def _add_max_entries(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-entries",
        type=int,
        default=DEFAULT_MAX_ENTRIES,
        help="refuse matrices with more entries than this",
    )


def _add_algebra_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--algebra", help="path to an algebra JSON file")
    parser.add_argument(
        "--spec", dest="spec", help="alias for --algebra", metavar="ALGEBRA"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncwreath", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="topic", required=True)

    # partitions ---------------------------------------------------------
    partitions = top.add_parser("partitions", help="noncrossing diagram operations")
    sub = partitions.add_subparsers(dest="action", required=True)

    enum = sub.add_parser("enumerate", help="list or count NC(upper, lower)")
    enum.add_argument("--upper", type=int, required=True)
    enum.add_argument("--lower", type=int, required=True)
    enum.add_argument("--count-only", action="store_true")
    _add_max_points(enum)
    _add_format(enum)
    enum.set_defaults(handler=_cmd_partitions_enumerate)

    comp = sub.add_parser("compose", help="compose two diagrams (q after p)")
    comp.add_argument("--p", required=True, help="path to the first diagram (JSON)")
    comp.add_argument("--q", required=True, help="path to the second diagram (JSON)")
    _add_format(comp)
    comp.set_defaults(handler=_cmd_partitions_compose)

    adj = sub.add_parser("adjoint", help="flip a diagram upside down")
    adj.add_argument("--partition", required=True, help="path to the diagram (JSON)")
    _add_format(adj)
    adj.set_defaults(handler=_cmd_partitions_adjoint)

    tens = sub.add_parser("tensor", help="place two diagrams side by side")
    tens.add_argument("--p", required=True, help="path to the left diagram (JSON)")
    tens.add_argument("--q", required=True, help="path to the right diagram (JSON)")
    _add_format(tens)
    tens.set_defaults(handler=_cmd_partitions_tensor)

    # tmap ----------------------------------------------------------------
    tmap = top.add_parser("tmap", help="diagram matrices over an algebra")
    sub = tmap.add_subparsers(dest="action", required=True)

    build = sub.add_parser("build", help="assemble the matrix of one diagram")
    build.add_argument("--algebra", required=True, help="path to an algebra JSON file")
    build.add_argument("--partition", required=True, help="path to the diagram (JSON)")
    _add_max_entries(build)
    _add_format(build, "csv")
    build.set_defaults(handler=_cmd_tmap_build)

    verify = sub.add_parser(
        "verify", help="check the composition rescaling for a pair of diagrams"
    )
    verify.add_argument("--algebra", required=True, help="path to an algebra JSON file")
    verify.add_argument("--p", required=True, help="path to the first diagram (JSON)")
    verify.add_argument("--q", required=True, help="path to the second diagram (JSON)")
    verify.add_argument(
        "--tolerance",
        type=float,
        default=DEFAULT_TOLERANCE,
        help=f"largest acceptable deviation (default {DEFAULT_TOLERANCE})",
    )
    _add_max_entries(verify)
    _add_format(verify)
    verify.set_defaults(handler=_cmd_tmap_verify)

    rank = sub.add_parser(
        "gram-rank", help="rank of the span of all NC(upper, lower) matrices"
    )
    rank.add_argument("--algebra", required=True, help="path to an algebra JSON file")
    rank.add_argument("--upper", type=int, required=True)
    rank.add_argument("--lower", type=int, required=True)
    _add_max_points(rank)
    _add_max_entries(rank)
    _add_format(rank)
    rank.set_defaults(handler=_cmd_tmap_gram_rank)

    # algebra ---------------------------------------------------------------
    algebra = top.add_parser("algebra", help="state analysis on an algebra file")
    sub = algebra.add_subparsers(dest="action", required=True)

    check = sub.add_parser("check", help="report the delta-form status")
    _add_algebra_input(check)
    check.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    _add_format(check)
    check.set_defaults(handler=_cmd_algebra_check)

    decompose = sub.add_parser("decompose", help="split into delta-form factors")
    _add_algebra_input(decompose)
    decompose.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    _add_format(decompose)
    decompose.set_defaults(handler=_cmd_algebra_decompose)

    # decorated --------------------------------------------------------------
    decorated = top.add_parser("decorated", help="group-labeled diagrams")
    sub = decorated.add_subparsers(dest="action", required=True)

    dcount = sub.add_parser("count", help="count admissible labelings")
    dcount.add_argument("--group", required=True, help="cyclic:<s>, integers, table:<path>")
    dcount.add_argument("--x", required=True, help="upper labels, comma-separated")
    dcount.add_argument("--y", required=True, help="lower labels, comma-separated")
    _add_max_points(dcount)
    _add_format(dcount)
    dcount.set_defaults(handler=_cmd_decorated_count)

    dlist = sub.add_parser("list", help="list admissible labelings")
    dlist.add_argument("--group", required=True, help="cyclic:<s>, integers, table:<path>")
    dlist.add_argument("--x", required=True, help="upper labels, comma-separated")
    dlist.add_argument("--y", required=True, help="lower labels, comma-separated")
    _add_max_points(dlist)
    _add_format(dlist)
    dlist.set_defaults(handler=_cmd_decorated_list)

    # fusion ------------------------------------------------------------------
    fusion = top.add_parser("fusion", help="word fusion ring operations")
    sub = fusion.add_subparsers(dest="action", required=True)

    product = sub.add_parser("product", help="fuse two words")
    product.add_argument("--group", required=True)
    product.add_argument("--x", required=True, help="first word, comma-separated")
    product.add_argument("--y", required=True, help="second word, comma-separated")
    _add_format(product)
    product.set_defaults(handler=_cmd_fusion_product)

    dim = sub.add_parser("dim", help="dimension of a word representation")
    dim.add_argument("--group", required=True)
    dim.add_argument("--word", required=True, help="comma-separated word")
    dim.add_argument("--n", type=int, required=True, help="dimension parameter (>= 4)")
    _add_format(dim)
    dim.set_defaults(handler=_cmd_fusion_dim)

    tmult = sub.add_parser(
        "trivial-mult", help="multiplicity of the trivial word in a product"
    )
    tmult.add_argument("--group", required=True)
    tmult.add_argument("--x", required=True, help="first word, comma-separated")
    tmult.add_argument("--y", required=True, help="second word, comma-separated")
    _add_format(tmult)
    tmult.set_defaults(handler=_cmd_fusion_trivial_mult)

    amult = sub.add_parser(
        "a-trivial-mult",
        help="multiplicity of the trivial representation in a product of basic ones",
    )
    amult.add_argument("--group", required=True)
    amult.add_argument("--word", required=True, help="comma-separated letters")
    _add_format(amult)
    amult.set_defaults(handler=_cmd_fusion_a_trivial_mult)

    freeprod = sub.add_parser("freeprod", help="fuse words across factor rings")
    freeprod.add_argument(
        "--factors",
        required=True,
        help='factor rings, e.g. "cyclic:2@4,cyclic:2@5" (<groupspec>@<dimension>)',
    )
    freeprod.add_argument(
        "--x", required=True, help='alternating word, e.g. "0:s,s|1:e" ("" is empty)'
    )
    freeprod.add_argument(
        "--y", required=True, help='alternating word, e.g. "1:s" ("" is empty)'
    )
    _add_format(freeprod)
    freeprod.set_defaults(handler=_cmd_fusion_freeprod)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute one command line; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except BoundError as exc:
        print(f"bound error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 2
    except (NcwreathError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
