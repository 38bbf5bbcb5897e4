"""Command-line interface.

Exit codes: 0 success, 1 parse or validation error, 2 resource exhaustion
(some verdict unknown), 3 a certificate failed.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .complex import Complex2, EdgePath, InvalidComplex, PathError, subdivide, subdivide_path, validate
from .cover import CoverComplex, IncompleteCover, build_cover, build_universal_ball, vertex_id
from .fileformat import ParseError, export_dot, format_cover, parse_path, read_complex
from .groupoid import carry_words, pi1_presentation
from .lifting import LiftError, lift_path, loop_lifts_to_loop
from .verification import Verdict, verify_all
from .wordproblem import EnumerationExhausted, Limits
from .words import Word, parse_word

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED, EXIT_FAILED = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cover_opts=True):
        p.add_argument("input", help="complex file (.cx)")
        p.add_argument("--subdivide", type=_nonnegative, default=0, metavar="N",
                       help="apply N derived subdivisions first")
        if cover_opts:
            p.add_argument("--subgroup", action="append", default=[], metavar="WORD",
                           help="subgroup generator word, e.g. 'a a' (repeatable)")
            p.add_argument("--radius", type=_nonnegative, metavar="R",
                           help="use the universal ball of radius R instead of a full cover")
            p.add_argument("--limit-cosets", type=_positive, default=Limits().max_cosets, metavar="N")
            p.add_argument("--limit-steps", type=_positive, default=Limits().max_steps, metavar="M")
        return p

    common(sub.add_parser("validate", help="check complex invariants"), cover_opts=False)
    common(sub.add_parser("pi1", help="print the edge-path group presentation"), cover_opts=False)
    common(sub.add_parser("cover", help="build a cover and print its statistics"))
    common(sub.add_parser("ball", help="grow the universal cover to a radius (needs --radius)"))
    lift = common(sub.add_parser("lift", help="lift a base path"))
    lift.add_argument("--path", required=True, help="comma-separated edges, e.g. a,b,a^-1")
    lift.add_argument("--start", help="cover vertex as 'coset,vertex' (default: basepoint lift)")
    loop = common(sub.add_parser("loop", help="does a loop lift to a loop?"))
    loop.add_argument("--path", required=True)
    verify = common(sub.add_parser("verify", help="run covering certificates"))
    verify.add_argument("--all", action="store_true", help="run every certificate (default)")
    export = common(sub.add_parser("export", help="write the cover as DOT or .cx"))
    export.add_argument("--format", choices=("dot", "cx"), default="dot")
    export.add_argument("-o", "--output", help="output file (default: stdout)")
    return parser


def _load(args) -> list[Complex2]:
    """The input complex followed by each of its requested subdivisions."""
    c = read_complex(args.input)
    problems = validate(c)
    if problems:
        raise InvalidComplex(problems)
    levels = [c]
    for _ in range(args.subdivide):
        levels.append(subdivide(levels[-1]))
    return levels


def _subgroup(args, levels: list[Complex2]) -> list[Word]:
    """Parse subgroup words over the input's generators; carry them to the last level."""
    words = [parse_word(text) for text in args.subgroup]
    pres = pi1_presentation(levels[0])
    for w in words:
        pres.check_word(w)
    for coarse, fine in zip(levels, levels[1:]):
        words = carry_words(coarse, fine, words)
    return words


def _base_path(levels: list[Complex2], text: str, start: str | None) -> EdgePath:
    p = parse_path(levels[0], text, start)
    for coarse in levels[:-1]:
        p = subdivide_path(coarse, p)
    return p


def _cover(args, levels: list[Complex2]) -> CoverComplex:
    limits = Limits(args.limit_cosets, args.limit_steps)
    if args.command == "ball" and args.radius is None:
        raise _Exit(EXIT_INPUT, "ball needs --radius")
    if args.radius is not None:
        if args.subgroup:
            raise _Exit(EXIT_INPUT, "--radius builds the universal ball; drop --subgroup")
        return build_universal_ball(levels[-1], args.radius, limits)
    return build_cover(levels[-1], _subgroup(args, levels), limits)


def _ball_status(cover: CoverComplex) -> int:
    return EXIT_EXHAUSTED if cover.approximate else EXIT_OK


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage; here 2 means exhaustion
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return _dispatch(args, out)
    except _Exit as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except EnumerationExhausted as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except IncompleteCover as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except InvalidComplex as e:
        for v in e.violations:
            print(f"invalid: {v}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, PathError, LiftError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args, out) -> int:
    if args.command == "validate":
        original = read_complex(args.input)
        problems = validate(original)
        for p in problems:
            print(f"invalid: {p}", file=out)
        if problems:
            return EXIT_INPUT
        print("ok", file=out)
        return EXIT_OK

    levels = _load(args)
    if args.command == "pi1":
        print(pi1_presentation(levels[-1]), file=out)
        return EXIT_OK

    cover = _cover(args, levels)
    if args.command in ("cover", "ball"):
        cx = cover.complex
        if cover.complete:
            print(f"sheets\t{cover.sheets}", file=out)
        else:
            print(f"radius\t{cover.radius}", file=out)
            print(f"frontier\t{len(cover.frontier)}", file=out)
            print(f"approximate\t{str(cover.approximate).lower()}", file=out)
        print(f"vertices\t{len(cx.vertices)}", file=out)
        print(f"edges\t{len(cx.positive_edges)}", file=out)
        print(f"faces\t{len(cx.faces)}", file=out)
        print(f"chi\t{cx.euler_characteristic()}", file=out)
        for note in cover.unknowns:
            print(f"unknown\t{note}", file=out)
        return _ball_status(cover)

    if args.command == "lift":
        if args.start:
            k, _, v = args.start.partition(",")
            start = vertex_id(int(k), v)
            if start not in cover.vertex_label:
                raise _Exit(EXIT_INPUT, f"no cover vertex ({k},{v})")
        else:
            start = cover.basepoint
        base_start = cover.vertex_label[start][1]
        if args.subdivide and base_start not in levels[0].outgoing:
            raise _Exit(EXIT_INPUT, "--start must lie over a vertex of the input complex")
        path = _base_path(levels, args.path, base_start)
        lifted = lift_path(cover, path, start)
        labels = [cover.vertex_label[x] for x in lifted.vertices]
        print(" ".join(f"({k},{v})" for k, v in labels), file=out)
        return EXIT_OK

    if args.command == "loop":
        path = _base_path(levels, args.path, levels[0].basepoint)
        print(str(loop_lifts_to_loop(cover, path)).lower(), file=out)
        return EXIT_OK

    if args.command == "verify":
        limits = Limits(args.limit_cosets, args.limit_steps)
        certs = verify_all(cover, limits)
        for cert in certs:
            print(cert.line(), file=out)
        verdicts = {cert.verdict for cert in certs}
        if Verdict.FAIL in verdicts:
            return EXIT_FAILED
        if Verdict.UNKNOWN in verdicts or cover.approximate:
            return EXIT_EXHAUSTED
        return EXIT_OK

    if args.command == "export":
        text = export_dot(cover) if args.format == "dot" else format_cover(cover)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)
        return EXIT_OK
    raise AssertionError(args.command)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
