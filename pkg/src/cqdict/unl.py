"""UNL sentence annotations.

One arc per line::

    agt(buy(icl>do).@entry.@past, I)
    qua(book(icl>thing).@pl, :01)
    mod:01(CQ-satsu-books-notebooks-albums(icl>CQ).@entry.@eld, 2)

An arc written ``rel:NN(...)`` belongs to sub-scope ``:NN``; a ``:NN``
argument refers to that whole sub-scope.  Arguments may carry ``.@attr``
suffixes.  Two argument occurrences denote the same node when they are
spelled identically (canonical UW and attribute set) in the same scope.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Union

from .errors import UnlSyntaxError, UwSyntaxError
from .labels import ATTRIBUTE_RE, ATTRIBUTES, RELATIONS, LabelRegistry
from .uw import UW, format_uw, parse_uw

ENTRY = "@entry"

_ARC_RE = re.compile(r"([A-Za-z0-9]+)\s*(?::\s*([A-Za-z0-9]{2}))?\s*\((.*)\)\Z", re.S)
_ATTRS_RE = re.compile(r"(.*?)((?:\.@[A-Za-z][A-Za-z0-9_-]*)+)\Z", re.S)
_SCOPE_RE = re.compile(r":([A-Za-z0-9]{2})\Z")
_NUMBER_RE = re.compile(r"[+-]?\d+(?:[./]\d+)?\Z")

PLAIN_WORDS = frozenset(
    line.strip()
    for line in resources.files("cqdict.data").joinpath("plainwords.txt").read_text(encoding="utf-8").splitlines()
    if line.strip() and not line.startswith("#")
)


def normalize_scope_id(raw: str) -> str:
    """``o1``/``:o1`` -> ``:01``.  A letter o in a scope id is read as zero."""
    body = raw[1:] if raw.startswith(":") else raw
    return ":" + body.replace("o", "0").replace("O", "0")


def _attr_order(attr):
    return (attr != ENTRY, attr)


@dataclass(frozen=True)
class UwNode:
    uw: UW
    attributes: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.attributes, frozenset):
            object.__setattr__(self, "attributes", frozenset(self.attributes))

    @property
    def is_entry(self):
        return ENTRY in self.attributes

    def __str__(self):
        return format_uw(self.uw) + "".join("." + a for a in sorted(self.attributes, key=_attr_order))


@dataclass(frozen=True)
class PlainWord:
    text: str

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class ScopeRef:
    scope_id: str

    def __str__(self):
        return self.scope_id


Node = Union[UwNode, PlainWord, ScopeRef]


@dataclass(frozen=True)
class Arc:
    relation: str
    source: Node
    target: Node
    scope: Optional[str] = None
    line: int = field(default=0, compare=False)

    def __str__(self):
        suffix = self.scope or ""
        return f"{self.relation}{suffix}({self.source}, {self.target})"


@dataclass(frozen=True)
class Violation:
    """A diagnostic record; ``where`` is a line number or a record id."""

    code: str
    where: object
    message: str

    def __str__(self):
        return f"{self.code}:{self.where}:{self.message}"


class UnlDocument:
    """An ordered list of arcs.  Equality ignores arc order."""

    def __init__(self, arcs=(), warnings=()):
        self.arcs = tuple(arcs)
        self.warnings = tuple(warnings)

    def __eq__(self, other):
        if not isinstance(other, UnlDocument):
            return NotImplemented
        return Counter(self.arcs) == Counter(other.arcs)

    def __hash__(self):
        return hash(frozenset(Counter(self.arcs).items()))

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    def __repr__(self):
        return f"UnlDocument({len(self.arcs)} arcs)"

    @property
    def scopes(self) -> dict:
        """scope id -> arcs; the top-level scope has id ``None``."""
        out = defaultdict(list)
        for arc in self.arcs:
            out[arc.scope].append(arc)
        return {k: tuple(v) for k, v in out.items()}

    def scope_ids(self) -> list:
        return sorted({a.scope for a in self.arcs if a.scope is not None})

    def nodes(self):
        """Distinct ``(scope, node)`` pairs in order of first occurrence."""
        seen = {}
        for arc in self.arcs:
            for node in (arc.source, arc.target):
                seen.setdefault((arc.scope, node), None)
        return list(seen)

    def extended(self, arcs) -> "UnlDocument":
        merged = list(self.arcs) + list(arcs)
        renumbered = [Arc(a.relation, a.source, a.target, a.scope, i) for i, a in enumerate(merged, 1)]
        return UnlDocument(renumbered, self.warnings)

    def entry_nodes(self, scope=None) -> list:
        return [n for s, n in self.nodes() if s == scope and isinstance(n, UwNode) and n.is_entry]


def _split_args(body, line_no):
    depth = 0
    commas = []
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise UnlSyntaxError("unbalanced parentheses", line_no)
        elif ch == "," and depth == 0:
            commas.append(i)
    if depth != 0:
        raise UnlSyntaxError("unbalanced parentheses", line_no)
    if not commas:
        raise UnlSyntaxError("missing ',' between arc arguments", line_no)
    if len(commas) > 1:
        raise UnlSyntaxError("an arc takes exactly two arguments", line_no)
    cut = commas[0]
    return body[:cut].strip(), body[cut + 1:].strip()


class _LineParser:
    def __init__(self, relations, attributes, strict):
        self.relations = relations
        self.attributes = attributes
        self.strict = strict
        self.notes = []

    def scope_id(self, raw, line_no):
        raw = raw if raw.startswith(":") else ":" + raw
        scope = normalize_scope_id(raw)
        if scope != raw:
            self.notes.append(f"line {line_no}: scope id {raw!r} read as {scope!r}")
        return scope

    def arg(self, text, line_no):
        if not text:
            raise UnlSyntaxError("empty arc argument", line_no)
        attrs = ()
        m = _ATTRS_RE.match(text)
        if m and m.group(1).strip():
            text = m.group(1).strip()
            attrs = tuple(a for a in m.group(2).split(".") if a)
        scope = _SCOPE_RE.match(text)
        if scope:
            if attrs:
                raise UnlSyntaxError(f"attribute on scope reference {text}", line_no)
            return ScopeRef(self.scope_id(text, line_no))
        for attr in attrs:
            if not ATTRIBUTE_RE.match(attr):
                raise UnlSyntaxError(f"bad attribute {attr!r}", line_no)
            self.attributes.check(attr, self.strict, lambda m: UnlSyntaxError(m, line_no))
        if not attrs and "(" not in text and (text in PLAIN_WORDS or _NUMBER_RE.match(text)):
            return PlainWord(text)
        try:
            uw = parse_uw(text, self.relations, self.strict)
        except UwSyntaxError as exc:
            raise UnlSyntaxError(f"bad UW {text!r}: {exc}", line_no) from None
        return UwNode(uw, frozenset(attrs))

    def line(self, text, line_no):
        m = _ARC_RE.match(text.strip())
        if not m:
            raise UnlSyntaxError(f"malformed arc {text.strip()!r}", line_no)
        relation, raw_scope, body = m.groups()
        self.relations.check(relation, self.strict, lambda msg: UnlSyntaxError(msg, line_no))
        scope = self.scope_id(raw_scope, line_no) if raw_scope else None
        left, right = _split_args(body, line_no)
        return Arc(relation, self.arg(left, line_no), self.arg(right, line_no), scope, line_no)


def parse_arc(text, relations=RELATIONS, attributes=ATTRIBUTES, strict=True, line_no=1) -> Arc:
    return _LineParser(relations, attributes, strict).line(text, line_no)


def parse_unl(
    text: str,
    relations: LabelRegistry = RELATIONS,
    attributes: LabelRegistry = ATTRIBUTES,
    strict: bool = True,
) -> UnlDocument:
    """Parse annotation text, one arc per non-blank line.

    Scope ids spelled with a letter ``o`` are normalized to ``0``; each such
    rewrite is kept in ``doc.warnings`` and reported as a ``UserWarning``.
    """
    parser = _LineParser(relations, attributes, strict)
    arcs = []
    seen = {}
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        arc = parser.line(line, line_no)
        if arc in seen:
            raise UnlSyntaxError(f"duplicate of line {seen[arc]}", line_no)
        seen[arc] = line_no
        arcs.append(arc)
    for note in parser.notes:
        warnings.warn(note, UserWarning, stacklevel=2)
    return UnlDocument(arcs, parser.notes)


def serialize_unl(doc: UnlDocument) -> str:
    """Top-level arcs in document order, then each sub-scope by ascending id."""
    top = [a for a in doc.arcs if a.scope is None]
    scoped = sorted((a for a in doc.arcs if a.scope is not None), key=lambda a: a.scope)
    return "".join(f"{arc}\n" for arc in top + scoped)


def validate(
    doc: UnlDocument,
    relations: LabelRegistry = RELATIONS,
    attributes: LabelRegistry = ATTRIBUTES,
    strict: bool = True,
    fragment: bool = False,
) -> list:
    """Return violations; an empty list means the document is well formed.

    A *fragment* is meant to be spliced into a host sentence that supplies the
    top-level entry node, so its top level may lack ``@entry``.
    """
    out = []
    for i, arc in enumerate(doc.arcs, 1):
        line = arc.line or i
        if strict and arc.relation not in relations:
            out.append(Violation("UnknownRelation", line, f"relation {arc.relation!r} not registered"))
        for node in (arc.source, arc.target):
            if isinstance(node, UwNode):
                out.extend(_check_node(node, line, relations, attributes, strict))

    scopes = doc.scopes
    for i, arc in enumerate(doc.arcs, 1):
        for node in (arc.source, arc.target):
            if isinstance(node, ScopeRef) and node.scope_id not in scopes:
                out.append(Violation("DanglingScope", arc.line or i, f"{node.scope_id} owns no arc"))

    for scope, arcs in scopes.items():
        entries = doc.entry_nodes(scope)
        name = scope or "top"
        first = arcs[0].line or doc.arcs.index(arcs[0]) + 1
        if not entries and not (fragment and scope is None):
            out.append(Violation("MissingEntry", first, f"scope {name} has no @entry node"))
        elif len(entries) > 1:
            out.append(Violation("MultipleEntry", first, f"scope {name} has {len(entries)} @entry nodes"))
    return out


def _check_node(node, line, relations, attributes, strict):
    try:
        again = parse_uw(format_uw(node.uw), relations if strict else None, strict)
    except UwSyntaxError as exc:
        yield Violation("BadUw", line, f"{format_uw(node.uw)!r}: {exc}")
        return
    if again != node.uw:
        yield Violation("BadUw", line, f"{format_uw(node.uw)!r} does not reparse to itself")
    if strict:
        for attr in sorted(node.attributes):
            if attr not in attributes:
                yield Violation("UnknownAttribute", line, f"attribute {attr!r} not registered")


def nodes_with_attribute(doc: UnlDocument, attr: str) -> list:
    return [(s, n) for s, n in doc.nodes() if isinstance(n, UwNode) and attr in n.attributes]


def is_connected(doc: UnlDocument) -> bool:
    """Connectivity of the node graph; a scope reference touches every node of its scope."""
    nodes = doc.nodes()
    if not nodes:
        return True
    adj = defaultdict(set)
    members = defaultdict(set)
    for arc in doc.arcs:
        a, b = (arc.scope, arc.source), (arc.scope, arc.target)
        adj[a].add(b)
        adj[b].add(a)
        members[arc.scope].update((a, b))
    for key in nodes:
        scope, node = key
        if isinstance(node, ScopeRef):
            for other in members.get(node.scope_id, ()):
                adj[key].add(other)
                adj[other].add(key)
    start = nodes[0]
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen >= set(nodes)
