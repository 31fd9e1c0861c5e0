"""Command-line interface.

One binary, subcommand style.  Results go to standard output (or
``--output``), diagnostics to standard error; the exit code is 0 exactly
when the command succeeded semantically.  ``.ddna`` paths hold diagrams,
anything else is read as two-line dot-bracket text.  The default
``min_loop`` comes from ``--theta`` or the ``DDNA_THETA`` environment
variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import diagram as dg
from . import pregroup as pg
from . import render as rd
from .core import (
    SecondaryStructure,
    emit_dotbracket,
    parse_dotbracket,
    reverse_complement,
)
from .structures import FoldConfig, count_structures, enumerate_structures, max_bond


class CliError(Exception):
    """Fatal command error; the message goes to stderr, exit code 1."""


def _default_theta() -> int:
    raw = os.environ.get("DDNA_THETA", "0")
    try:
        value = int(raw)
    except ValueError:
        raise CliError(f"DDNA_THETA must be an integer, got {raw!r}") from None
    if value < 0:
        raise CliError("DDNA_THETA must be >= 0")
    return value


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(str(exc)) from None


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_diagram(path: str) -> dg.Diagram:
    try:
        return dg.parse_ddna(_read(path))
    except dg.DiagramError as exc:
        lines = "\n".join(f"  {v}" for v in exc.violations)
        raise CliError(f"{path}: invalid diagram\n{lines}") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_structure(path: str) -> SecondaryStructure:
    try:
        return parse_dotbracket(_read(path))
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_any(path: str):
    if path.endswith(".ddna"):
        return _load_diagram(path)
    return _load_structure(path)


def _maybe_report(report: dg.LoopReport, wanted: bool) -> None:
    if wanted:
        sys.stderr.write(dg.format_report(report))


def _cmd_revcomp(args) -> None:
    word = "" if args.word == "-" else args.word
    try:
        _write_output(reverse_complement(word) + "\n", args.output)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _cmd_validate(args) -> None:
    text = _read(args.path)
    if args.path.endswith(".ddna"):
        try:
            parsed = dg.parse_ddna(text)
        except dg.DiagramError as exc:
            for violation in exc.violations:
                sys.stderr.write(f"{violation}\n")
            raise CliError(f"{args.path}: {len(exc.violations)} violation(s)") from None
        except ValueError as exc:
            raise CliError(f"{args.path}: {exc}") from None
        del parsed
    else:
        try:
            parse_dotbracket(text)
        except ValueError as exc:
            raise CliError(f"{args.path}: {exc}") from None
    print("ok")


def _cmd_compose(args) -> None:
    f = _load_diagram(args.upper)
    g = _load_diagram(args.lower)
    try:
        composite, report = dg.compose(f, g)
    except dg.InterfaceError as exc:
        raise CliError(str(exc)) from None
    _write_output(dg.emit_ddna(composite), args.output)
    _maybe_report(report, args.report)


def _cmd_bend(args) -> None:
    _write_output(emit_dotbracket(dg.bend(_load_diagram(args.path))), args.output)


def _cmd_unbend(args) -> None:
    structure = _load_structure(args.path)
    try:
        _write_output(dg.emit_ddna(dg.unbend(structure, args.source_len)), args.output)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _fold_config(args) -> FoldConfig:
    theta = args.theta if args.theta is not None else _default_theta()
    try:
        return FoldConfig(theta)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _cmd_enumerate(args) -> None:
    try:
        structures = enumerate_structures(args.word, _fold_config(args))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    handle = sys.stdout if args.output is None else open(args.output, "w", encoding="utf-8")
    try:
        for count, structure in enumerate(structures):
            if count:
                handle.write("\n")
            handle.write(emit_dotbracket(structure))
    finally:
        if handle is not sys.stdout:
            handle.close()


def _cmd_count(args) -> None:
    try:
        _write_output(f"{count_structures(args.word, _fold_config(args))}\n", args.output)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _cmd_fold(args) -> None:
    try:
        bonds, witnesses = max_bond(args.word, _fold_config(args))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    records = [f"max_bonds: {bonds}\n"]
    records.extend(emit_dotbracket(s) for s in witnesses)
    _write_output("\n".join(records), args.output)


def _parse_goal(text: str) -> pg.PregroupType:
    try:
        return pg.parse_type(text)
    except pg.TypeSyntaxError as exc:
        raise CliError(str(exc)) from None


def _load_lexicon(path: str) -> pg.Lexicon:
    try:
        return pg.load_lexicon(_read(path))
    except pg.LexiconError as exc:
        raise CliError(f"{path}: {exc}") from None


def _sentence_types(lexicon: pg.Lexicon, words: list[str]) -> list[pg.PregroupType]:
    types = []
    for word in words:
        if word not in lexicon.entries:
            raise CliError(f"unknown vocabulary word {word!r}")
        types.append(lexicon.entries[word].type)
    return types


def _format_proof(proof: pg.ReductionProof) -> str:
    links = " ".join(f"({p},{q})" for p, q in sorted(proof.links)) or "-"
    survivors = " ".join(str(s) for s in proof.survivors) or "-"
    return f"links: {links}\nsurvivors: {survivors}\n"


def _cmd_parse(args) -> None:
    lexicon = _load_lexicon(args.lexicon)
    goal = _parse_goal(args.goal)
    types = _sentence_types(lexicon, args.words)
    if args.all_proofs:
        proofs = list(pg.all_reductions(types, goal))
        if not proofs:
            raise CliError(f"no reduction of {' '.join(args.words)!r} to {args.goal!r}")
        _write_output("\n".join(_format_proof(p) for p in proofs), args.output)
    else:
        proof = pg.find_reduction(types, goal)
        if proof is None:
            raise CliError(f"no reduction of {' '.join(args.words)!r} to {args.goal!r}")
        _write_output(_format_proof(proof), args.output)


def _cmd_meaning(args) -> None:
    lexicon = _load_lexicon(args.lexicon)
    goal = _parse_goal(args.goal)
    try:
        result = pg.meaning(args.words, goal, lexicon)
    except pg.LexiconError as exc:
        raise CliError(str(exc)) from None
    if result is None:
        raise CliError(f"no reduction of {' '.join(args.words)!r} to {args.goal!r}")
    structure, report = result
    if args.format == "dotbracket":
        _write_output(emit_dotbracket(structure), args.output)
    elif args.format == "text":
        _write_output(rd.render_structure_text(structure), args.output)
    else:
        _write_output(rd.render_structure_svg(structure), args.output)
    _maybe_report(report, args.report)


def _style(args) -> rd.RenderStyle:
    try:
        return rd.RenderStyle(
            at_color=args.at_color,
            cg_color=args.cg_color,
            spacing=args.spacing,
            arc_height=args.arc_height,
            show_direction_arrows=args.arrows,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _cmd_render(args) -> None:
    value = _load_any(args.path)
    if isinstance(value, dg.Diagram):
        if args.format == "text":
            raise CliError("text rendering is for structures; use --format svg")
        _write_output(rd.render_diagram_svg(value, _style(args)), args.output)
    elif args.format == "text":
        _write_output(rd.render_structure_text(value), args.output)
    else:
        _write_output(rd.render_structure_svg(value, _style(args)), args.output)


def _add_theta(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--theta",
        type=int,
        default=None,
        help="minimum unpaired slots under every arc (default: $DDNA_THETA or 0)",
    )


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", "-o", default=None, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddna",
        description="DNA words, arc diagrams, composition, folding, and grammar.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("revcomp", help="reverse complement of a word")
    p.add_argument("word", help="DNA word ('' or '-' for the empty word)")
    _add_output(p)
    p.set_defaults(func=_cmd_revcomp)

    p = sub.add_parser("validate", help="check a .ddna or dot-bracket file")
    p.add_argument("path")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("compose", help="stack two diagrams (upper then lower)")
    p.add_argument("upper")
    p.add_argument("lower")
    p.add_argument("--report", action="store_true", help="print the loop report to stderr")
    _add_output(p)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("bend", help="straighten a diagram into a structure")
    p.add_argument("path")
    _add_output(p)
    p.set_defaults(func=_cmd_bend)

    p = sub.add_parser("unbend", help="fold a structure back into a diagram")
    p.add_argument("path")
    p.add_argument("--source-len", type=int, required=True, help="length of the dualized prefix")
    _add_output(p)
    p.set_defaults(func=_cmd_unbend)

    p = sub.add_parser("enumerate", help="list every structure on a word")
    p.add_argument("word")
    _add_theta(p)
    _add_output(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("count", help="count structures without listing them")
    p.add_argument("word")
    _add_theta(p)
    _add_output(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("fold", help="maximum-bond structures of a word")
    p.add_argument("word")
    _add_theta(p)
    _add_output(p)
    p.set_defaults(func=_cmd_fold)

    p = sub.add_parser("parse", help="find contraction proofs for a sentence")
    p.add_argument("words", nargs="+", metavar="word")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--goal", required=True, help="goal type, e.g. 's'")
    p.add_argument("--all-proofs", action="store_true")
    _add_output(p)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("meaning", help="structure a sentence leaves on the goal word")
    p.add_argument("words", nargs="+", metavar="word")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--goal", required=True)
    p.add_argument("--format", choices=["dotbracket", "text", "svg"], default="dotbracket")
    p.add_argument("--report", action="store_true", help="print the loop report to stderr")
    _add_output(p)
    p.set_defaults(func=_cmd_meaning)

    p = sub.add_parser("render", help="render a file as SVG or text art")
    p.add_argument("path")
    p.add_argument("--format", choices=["svg", "text"], default="svg")
    p.add_argument("--at-color", default=rd.RenderStyle.at_color)
    p.add_argument("--cg-color", default=rd.RenderStyle.cg_color)
    p.add_argument("--spacing", type=float, default=rd.RenderStyle.spacing)
    p.add_argument("--arc-height", type=float, default=rd.RenderStyle.arc_height)
    p.add_argument("--arrows", action="store_true", help="draw 5'-to-3' direction arrows")
    _add_output(p)
    p.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        sys.stderr.write(f"ddna: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
