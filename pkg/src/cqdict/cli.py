"""Command-line entry point: ``cqdict <group> <action> ...``.

Exit status: 0 success, 1 validation or domain error, 2 usage error, 3 I/O error.
Payload goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dictionary import check_consistency, loads
from .errors import CqError
from .labels import ATTRIBUTES, RELATIONS
from .normalize import normalize, parse_tokens
from .phraseme import build_kwic, extract_candidates, filter_by_dictionary, load_corpus, load_lexicon
from .selection import (
    check_cooccurrence,
    disambiguate,
    insert_dummy_classifier,
    magnitude_classifier,
    noun_context,
    select_existential,
)
from .unl import PlainWord, ScopeRef, parse_unl, serialize_unl, validate
from .uw import UW, format_uw, parse_uw, subsumes

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class DomainFailure(Exception):
    """A command ran but its verdict is negative (exit 1)."""


def _json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=False, default=str)


def _read(path) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_dict(path):
    return loads(_read(path), check=False)


def _uw_tree(uw: UW, indent: int = 0) -> list:
    pad = "  " * indent
    lines = [f"{pad}{uw.headword}\t{uw.kind}"]
    for c in uw.constraints:
        if isinstance(c.target, UW):
            lines.append(f"{pad}  {c.relation} >")
            lines.extend(_uw_tree(c.target, indent + 2))
        else:
            lines.append(f"{pad}  {c.relation} > {c.target.text}")
    return lines


def _node_json(node):
    if isinstance(node, ScopeRef):
        return {"scope": node.scope_id}
    if isinstance(node, PlainWord):
        return {"word": node.text}
    return {"uw": format_uw(node.uw), "attributes": sorted(node.attributes)}


# -- uw ---------------------------------------------------------------------

def cmd_uw(args, out):
    strict = args.strict
    if args.action == "parse":
        for text in args.text:
            uw = parse_uw(text, strict=strict)
            if args.format == "json-lines":
                print(_json(uw.to_dict()), file=out)
            else:
                print("\n".join(_uw_tree(uw)), file=out)
    elif args.action == "format":
        for text in args.text:
            print(format_uw(parse_uw(text, strict=strict)), file=out)
    else:
        if len(args.text) != 2:
            raise argparse.ArgumentTypeError("subsumes takes exactly two UWs")
        general, specific = (parse_uw(t, strict=strict) for t in args.text)
        print("true" if subsumes(general, specific) else "false", file=out)


# -- unl --------------------------------------------------------------------

def cmd_unl(args, out):
    doc = parse_unl(_read(args.file), strict=args.strict)
    if args.action == "parse":
        if args.format == "json-lines":
            for arc in doc.arcs:
                print(_json({
                    "relation": arc.relation,
                    "scope": arc.scope,
                    "source": _node_json(arc.source),
                    "target": _node_json(arc.target),
                }), file=out)
        else:
            out.write(serialize_unl(doc))
        return
    problems = validate(doc, RELATIONS, ATTRIBUTES, strict=args.strict, fragment=args.fragment)
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        raise DomainFailure(f"{len(problems)} violation(s)")
    print(f"ok\t{len(doc)} arcs", file=out)


# -- dict -------------------------------------------------------------------

def cmd_dict(args, out):
    dictionary = _load_dict(args.dictfile)
    if args.action == "query":
        senses = dictionary.senses_for_lemma(args.lemma)
        if not senses:
            raise DomainFailure(f"no sense recorded for {args.lemma!r}")
        for s in senses:
            if args.format == "json-lines":
                print(_json({
                    "lemma": s.lemma,
                    "uw": format_uw(s.uw),
                    "classifier": s.classifier.surface,
                    "romaji": s.classifier.romaji,
                    "type": s.cq_type,
                    "fl": s.fl_label,
                }), file=out)
            else:
                fields = [s.lemma, format_uw(s.uw), s.classifier.surface, s.classifier.romaji, s.cq_type]
                print("\t".join(fields + ([s.fl_label] if s.fl_label else [])), file=out)
    elif args.action == "check":
        problems = check_consistency(dictionary)
        for p in problems:
            print(p, file=sys.stderr)
        if problems:
            raise DomainFailure(f"{len(problems)} violation(s)")
        print("ok", file=out)
    else:
        stats = dictionary.stats()
        if args.format == "json-lines":
            print(_json(stats), file=out)
        else:
            for key, value in stats.items():
                print(f"{key}\t{value}", file=out)


# -- select -----------------------------------------------------------------

def _sense_line(sense, fmt):
    if fmt == "json-lines":
        return _json({
            "uw": format_uw(sense.uw),
            "classifier": sense.classifier.surface,
            "romaji": sense.classifier.romaji,
        })
    return f"{format_uw(sense.uw)} → {sense.classifier.surface} {sense.classifier.romaji}"


def cmd_select(args, out):
    dictionary = _load_dict(args.dictfile)
    if args.action == "classifier":
        noun = noun_context(dictionary, args.noun, args.number)
        out.write(serialize_unl(insert_dummy_classifier(dictionary, noun, args.number)))
    elif args.action == "disambiguate":
        chosen = disambiguate(dictionary, args.lemma, noun_context(dictionary, args.complement))
        print(_sense_line(chosen.chosen_sense, args.format), file=out)
        for why in chosen.rationale:
            print(f"  {why}", file=sys.stderr)
    elif args.action == "existential":
        print(select_existential(dictionary, noun_context(dictionary, args.noun)), file=out)
    elif args.action == "magnitude":
        print(_sense_line(magnitude_classifier(dictionary, noun_context(dictionary, args.noun)), args.format), file=out)
    else:
        verdict = check_cooccurrence(
            dictionary, args.cq, noun_context(dictionary, args.noun), args.verb, floated=not args.attached
        )
        print(verdict, file=out)
        if not verdict:
            raise DomainFailure("invalid combination")


# -- normalize --------------------------------------------------------------

def cmd_normalize(args, out):
    dictionary = _load_dict(args.dictfile)
    failures = 0
    for n, sentence in enumerate(parse_tokens(_read(args.tokenfile)), 1):
        try:
            tokens, triple = normalize(dictionary, sentence)
        except CqError as exc:
            print(f"sentence {n}: {exc}", file=sys.stderr)
            failures += 1
            continue
        surfaces = [t.surface for t in tokens]
        if args.format == "json-lines":
            print(_json({
                "tokens": surfaces,
                "number": str(triple.number),
                "classifier": triple.cq.surface,
                "romaji": triple.cq.romaji,
                "host": surfaces[triple.host],
            }), file=out)
        else:
            print(f"{'/'.join(surfaces)}\t{triple.number}\t{triple.cq.surface}\t{triple.cq.romaji}\t{surfaces[triple.host]}", file=out)
    if failures:
        raise DomainFailure(f"{failures} sentence(s) not normalized")


# -- extract / kwic ---------------------------------------------------------

def cmd_extract(args, out):
    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon)
    dictionary = _load_dict(args.dictfile)
    candidates = extract_candidates(corpus, lexicon, min_freq=args.min_freq, allow_bare_plural=args.bare_plural, workers=args.workers)
    for hit in filter_by_dictionary(candidates, dictionary, lexicon):
        c = hit.candidate
        if args.format == "json-lines":
            print(_json({
                "surface": c.surface,
                "frequency": c.frequency,
                "head": c.head,
                "complement": c.complement,
                "uw": format_uw(hit.sense.uw),
                "classifier": hit.sense.classifier.surface,
            }), file=out)
        else:
            print(f"{c.frequency}\t{c.surface}\t{format_uw(hit.sense.uw)}\t{hit.sense.classifier.surface}", file=out)


def cmd_kwic(args, out):
    for line in build_kwic(load_corpus(args.corpus), args.keyword, args.window):
        if args.format == "json-lines":
            print(_json({"doc": line.doc_id, "left": list(line.left), "keyword": line.keyword, "right": list(line.right)}), file=out)
        else:
            print(f"{line.doc_id}\t{line}", file=out)


# -- parser -----------------------------------------------------------------

def _number(text):
    try:
        value = Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("number must be positive")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cqdict", description="Classifier/quantifier dictionary tools.")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True, help="reject unknown labels (default)")
    mode.add_argument("--permissive", dest="strict", action="store_false", help="accept unknown labels with a warning")
    parser.add_argument("--format", choices=("text", "json-lines"), default="text")
    groups = parser.add_subparsers(dest="group", required=True)

    p = groups.add_parser("uw", help="parse, format and compare UWs")
    p.add_argument("action", choices=("parse", "format", "subsumes"))
    p.add_argument("text", nargs="+")
    p.set_defaults(func=cmd_uw)

    p = groups.add_parser("unl", help="parse or validate a UNL annotation file")
    p.add_argument("action", choices=("parse", "validate"))
    p.add_argument("file")
    p.add_argument("--fragment", action="store_true", help="allow a top level without @entry")
    p.set_defaults(func=cmd_unl)

    p = groups.add_parser("dict", help="query a dictionary file")
    actions = p.add_subparsers(dest="action", required=True)
    q = actions.add_parser("query")
    q.add_argument("dictfile")
    q.add_argument("lemma")
    for name in ("check", "stats"):
        actions.add_parser(name).add_argument("dictfile")
    p.set_defaults(func=cmd_dict)

    p = groups.add_parser("select", help="classifier selection")
    actions = p.add_subparsers(dest="action", required=True)
    q = actions.add_parser("classifier", help="dummy-classifier UNL fragment")
    q.add_argument("dictfile")
    q.add_argument("noun")
    q.add_argument("number", type=_number)
    q = actions.add_parser("disambiguate")
    q.add_argument("dictfile")
    q.add_argument("lemma")
    q.add_argument("complement")
    for name in ("existential", "magnitude"):
        q = actions.add_parser(name)
        q.add_argument("dictfile")
        q.add_argument("noun")
    q = actions.add_parser("cooccur", help="judge quantifier + host + verb")
    q.add_argument("dictfile")
    q.add_argument("cq")
    q.add_argument("noun")
    q.add_argument("verb")
    q.add_argument("--attached", action="store_true", help="quantifier stands next to its host")
    p.set_defaults(func=cmd_select)

    p = groups.add_parser("normalize", help="canonicalize floating quantifiers")
    p.add_argument("dictfile")
    p.add_argument("tokenfile")
    p.set_defaults(func=cmd_normalize)

    p = groups.add_parser("extract", help="mine quantity phrasemes")
    p.add_argument("corpus")
    p.add_argument("lexicon")
    p.add_argument("dictfile")
    p.add_argument("--min-freq", type=_positive_int, default=1)
    p.add_argument("--workers", type=_positive_int, default=None)
    p.add_argument("--bare-plural", action="store_true", help="also accept determiner-less plural heads")
    p.set_defaults(func=cmd_extract)

    p = groups.add_parser("kwic", help="keyword-in-context lines")
    p.add_argument("corpus")
    p.add_argument("keyword")
    p.add_argument("--window", type=_positive_int, default=5)
    p.set_defaults(func=cmd_kwic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        args.func(args, sys.stdout)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"cqdict: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cqdict: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainFailure as exc:
        print(f"cqdict: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (CqError, ValueError) as exc:
        print(f"cqdict: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
