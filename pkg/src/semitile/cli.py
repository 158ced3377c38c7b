"""Command-line entry point.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 internal
invariant breach.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .blocks import search_minimal_trapped_block
from .errors import (
    CoalescibleFound, InternalPartitionBroken, InvalidTiling, MinNotAtEnd, NoBlock,
    NotSemiInteger, OracleInapplicable, ParseError, InvalidDocument, TilingError,
)
from .generator import GenParams, gen_guillotine
from .geometry import LengthPredicate, format_rational, parse_rational
from .oracle import theorem_oracle
from .reduction import PreservationFailure, reduce_step, reduce_to_one, step_to_doc, trace_to_doc
from .svg import RenderOptions, render_svg
from .tiling import validate_tiling

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

_INTERNAL = (InternalPartitionBroken, PreservationFailure, MinNotAtEnd)


def _rational(text):
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _predicate(text):
    try:
        return LengthPredicate.parse(text)
    except (ParseError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _describe_step(n, step, out):
    line = f"step {n}: {step.kind} {step.tiles_before} -> {step.tiles_after}"
    if step.kind == "Coalesce":
        m = step.ops[0]
        line += f" tiles ({m.i},{m.j}) -> {m.merged}"
    else:
        b = step.block
        line += (f" roof {b.roof} floors {list(b.floors)} branch {step.branch}"
                 f" phases {list(step.phases)}"
                 f" descent [{', '.join(format_rational(y) for y in step.descent)}]")
    print(line, file=out)


def _write_json(doc, path):
    Path(path).write_text(io.dumps(doc), encoding="utf-8")


def cmd_validate(args):
    t = io.load_tiling(args.file)
    report = validate_tiling(t, args.predicate)
    print(f"tiles: {len(t.tiles)}")
    print(f"predicate: {args.predicate}")
    print(str(report))
    return EXIT_OK if report.valid else EXIT_INVALID


def _require_admissible(t, p):
    report = validate_tiling(t, p)
    if not report.valid:
        print(str(report), file=sys.stderr)
        return False
    return True


def cmd_reduce(args):
    t = io.load_tiling(args.file)
    if not _require_admissible(t, args.predicate):
        return EXIT_INVALID
    out = sys.stdout if args.out else sys.stderr
    steps = []
    for n in range(1, args.steps + 1):
        if len(t.tiles) == 1:
            break
        t, step = reduce_step(t, args.predicate, validate=False)
        steps.append(step)
        if args.explain:
            _describe_step(n, step, out)
            report = validate_tiling(t, args.predicate)
            if not report.valid:
                raise PreservationFailure(f"after step {n}: {report}")
    print(f"applied {len(steps)} step(s); {len(t.tiles)} tile(s) remain", file=out)
    if args.out:
        io.save_tiling(t, args.out)
    else:
        sys.stdout.write(io.dumps(io.tiling_to_doc(t)))
    if args.trace:
        _write_json({"predicate": str(args.predicate), "steps": [step_to_doc(s) for s in steps]}, args.trace)
    return EXIT_OK


def cmd_prove(args):
    t = io.load_tiling(args.file)
    p = args.predicate
    if not _require_admissible(t, p):
        return EXIT_INVALID
    counter = iter(range(1, len(t.tiles)))

    def explain(_cur, step):
        _describe_step(next(counter), step, sys.stdout)
    trace = reduce_to_one(t, p, check_each=True, on_step=explain if args.explain else None)
    final = trace.final
    good_w, good_h = p(final.width), p(final.height)
    print(f"final {final}")
    print(f"steps {len(trace.steps)}")
    print(f"width {format_rational(final.width)} good={str(good_w).lower()}")
    print(f"height {format_rational(final.height)} good={str(good_h).lower()}")
    if not (good_w or good_h):
        raise PreservationFailure("final rectangle has no good side")
    if args.trace:
        _write_json(trace_to_doc(trace), args.trace)
    if args.check_oracle:
        o = theorem_oracle(t, p)
        agree = (o.tile_imbalance_sum == 0 and o.frame_imbalance == 0
                 and (o.width_integer or o.height_integer)
                 and (o.width_integer, o.height_integer) == (good_w, good_h))
        print(f"oracle imbalance {format_rational(o.tile_imbalance_sum)} "
              f"width_integer={str(o.width_integer).lower()} height_integer={str(o.height_integer).lower()} "
              f"agree={str(agree).lower()}")
        if not agree:
            return EXIT_INTERNAL
    return EXIT_OK


def cmd_generate(args):
    params = GenParams(seed=args.seed, max_tiles=args.tiles, max_denominator=args.denom,
                       big_width=args.width, big_height=args.height,
                       pinwheel_probability=args.pinwheel)
    t = gen_guillotine(params)
    io.save_tiling(t, args.out)
    print(f"wrote {len(t.tiles)} tiles to {args.out}")
    return EXIT_OK


def cmd_render(args):
    t = io.load_tiling(args.file)
    block = None
    if args.highlight:
        try:
            block = search_minimal_trapped_block(t)[0]
        except (CoalescibleFound, NoBlock) as exc:
            print(f"no block highlighted: {exc}", file=sys.stderr)
    svg = render_svg(t, RenderOptions(scale=args.scale, label_tiles=not args.no_labels, highlight=block))
    Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def cmd_oracle(args):
    t = io.load_tiling(args.file)
    report = validate_tiling(t)
    if not report.valid:
        print(str(report), file=sys.stderr)
        return EXIT_INVALID
    o = theorem_oracle(t, args.predicate)
    doc = {"predicate": str(args.predicate), "oracle": {
        "width_integer": o.width_integer,
        "height_integer": o.height_integer,
        "tile_imbalance_sum": format_rational(o.tile_imbalance_sum),
        "frame_imbalance": format_rational(o.frame_imbalance),
    }}
    sys.stdout.write(io.dumps(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--predicate", type=_predicate, default=argparse.SUPPRESS,
                        help="good-length test: 'integer' or 'multiple:<g>'")

    parser = argparse.ArgumentParser(prog="semitile", description=__doc__.splitlines()[0])
    parser.add_argument("--predicate", type=_predicate, default=LengthPredicate(),
                        help="good-length test: 'integer' (default) or 'multiple:<g>'")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a tiling document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("reduce", parents=[common], help="apply up to N reduction steps")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--explain", action="store_true")
    p.add_argument("--out")
    p.add_argument("--trace")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("prove", parents=[common], help="reduce to a single tile")
    p.add_argument("file")
    p.add_argument("--trace")
    p.add_argument("--check-oracle", action="store_true")
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("generate", parents=[common], help="write a random admissible tiling")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tiles", type=int, required=True)
    p.add_argument("--denom", type=int, default=64)
    p.add_argument("--pinwheel", type=_rational, default=Fraction(1, 4))
    p.add_argument("--width", type=_rational, default=Fraction(12))
    p.add_argument("--height", type=_rational, default=Fraction(15, 2))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("render", parents=[common], help="draw a tiling as SVG")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--scale", type=_rational, default=Fraction(40))
    p.add_argument("--highlight", action="store_true", help="highlight a minimal trapped block")
    p.add_argument("--no-labels", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", parents=[common], help="checkerboard check of the frame sides")
    p.add_argument("file")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INTERNAL as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseError, InvalidDocument, InvalidTiling, NotSemiInteger, OracleInapplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (TilingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
