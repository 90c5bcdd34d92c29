"""Universal Words: ``headword(rel>target, rel>target, ...)``.

A target is either an atom (a token sequence such as ``220 litres`` or the
shorthand chain ``action>thing``) or a nested, restricted UW.  A UW without
constraints is *basic*; one with constraints is *restricted*; a restricted UW
whose headword follows the synthetic ``CQ-<romaji>-<referent>...`` scheme is
flagged *extra*.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import UwSyntaxError
from .labels import RELATION_RE, RELATIONS, LabelRegistry

CQ_HEADWORD_RE = re.compile(r"CQ-[^-\s()]+-\S.*\Z")

def _squash(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True)
class Atom:
    text: str

    @property
    def chain(self) -> tuple[str, ...]:
        """Segments of a ``a>b>c`` shorthand chain (a single item otherwise)."""
        return tuple(self.text.split(">"))

    @property
    def headword(self) -> str:
        return self.chain[0]

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class Constraint:
    relation: str
    target: Union[Atom, "UW"]

    def __post_init__(self):
        # a nested UW without constraints has the same spelling as an atom
        if isinstance(self.target, UW) and not self.target.constraints:
            object.__setattr__(self, "target", Atom(self.target.headword))
        elif isinstance(self.target, str):
            object.__setattr__(self, "target", Atom(self.target))

    def __str__(self):
        return f"{self.relation}>{format_target(self.target)}"


@dataclass(frozen=True)
class UW:
    headword: str
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        if not isinstance(self.constraints, tuple):
            object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def kind(self) -> str:
        if not self.constraints:
            return "basic"
        if CQ_HEADWORD_RE.match(self.headword):
            return "extra"
        return "restricted"

    @property
    def is_basic(self) -> bool:
        return not self.constraints

    def targets(self, relation: str) -> list:
        return constraint_targets(self, relation)

    def sort_key(self):
        """Order-insensitive structural key (constraint order ignored)."""
        return (self.headword, tuple(sorted(_constraint_key(c) for c in self.constraints)))

    def to_dict(self) -> dict:
        return {
            "headword": self.headword,
            "kind": self.kind,
            "constraints": [
                {
                    "relation": c.relation,
                    "target": c.target.to_dict() if isinstance(c.target, UW) else c.target.text,
                }
                for c in self.constraints
            ],
        }

    def __str__(self):
        return format_uw(self)


Target = Union[Atom, UW]


def _constraint_key(c: Constraint):
    if isinstance(c.target, UW):
        return (c.relation, 1, c.target.sort_key())
    return (c.relation, 0, c.target.text)


def same_concept(a: UW, b: UW) -> bool:
    """Structural equality ignoring constraint order."""
    return a.sort_key() == b.sort_key()


class _Parser:
    def __init__(self, text, relations, strict):
        self.text = text
        self.pos = 0
        self.relations = relations
        self.strict = strict

    def error(self, message, pos=None):
        raise UwSyntaxError(message, self.text, self.pos if pos is None else pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def scan_until(self, stops):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        return self.text[start:self.pos]

    def parse(self):
        uw = self.uw()
        self.skip_ws()
        if self.pos < len(self.text):
            if self.peek() == ")":
                self.error("unbalanced parentheses")
            self.error("trailing garbage after the closing parenthesis")
        return uw

    def uw(self):
        start = self.pos
        headword = _squash(self.scan_until("(),"))
        if not headword:
            self.error("empty headword", start)
        if ">" in headword:
            self.error("'>' is not allowed in a headword", start)
        if self.peek() != "(":
            return UW(headword)
        return UW(headword, self.constraint_list())

    def constraint_list(self):
        open_pos = self.pos
        self.pos += 1
        constraints = []
        while True:
            constraints.append(self.constraint())
            self.skip_ws()
            ch = self.peek()
            if ch == ",":
                self.pos += 1
            elif ch == ")":
                self.pos += 1
                return tuple(constraints)
            elif ch == "":
                self.error("unbalanced parentheses", open_pos)
            else:
                self.error(f"unexpected {ch!r} in constraint list")

    def constraint(self):
        start = self.pos
        relation = self.scan_until("(),>").strip()
        if self.peek() != ">":
            if not relation and self.peek() == ")":
                self.error("empty constraint", start)
            self.error("missing '>' in constraint", start)
        if not RELATION_RE.match(relation):
            self.error(f"bad relation label {relation!r}", start)
        if self.relations is not None:
            self.relations.check(relation, self.strict, lambda m: UwSyntaxError(m, self.text, start))
        self.pos += 1
        target_start = self.pos
        raw = self.scan_until("(),")
        if self.peek() == "(":
            self.pos = target_start
            self.skip_ws()
            return Constraint(relation, self.uw())
        text = _squash(raw)
        if not text:
            self.error("empty constraint", start)
        if any(not seg.strip() for seg in text.split(">")):
            self.error("empty segment in constraint target", target_start)
        return Constraint(relation, Atom(">".join(seg.strip() for seg in text.split(">"))))


def parse_uw(text: str, relations: LabelRegistry | None = RELATIONS, strict: bool = True) -> UW:
    """Parse ``text`` into a UW.

    ``relations`` is the registry used to vet relation labels (``None`` accepts
    any well-formed label).  Unknown labels raise in strict mode and emit an
    ``UnknownLabelWarning`` in permissive mode.
    """
    if not text or not text.strip():
        raise UwSyntaxError("empty UW", text, 0)
    return _Parser(text.strip(), relations, strict).parse()


def format_target(target: Target) -> str:
    if isinstance(target, UW):
        return format_uw(target)
    return target.text


def format_uw(uw: UW) -> str:
    if not uw.constraints:
        return uw.headword
    inner = ", ".join(str(c) for c in uw.constraints)
    return f"{uw.headword}({inner})"


def _as_uw(target: Target) -> UW:
    return target if isinstance(target, UW) else UW(target.text)


def subsumes(general: UW, specific: UW) -> bool:
    """True if ``specific`` is a restriction of ``general``.

    Headwords must be equal and each constraint of ``general`` must be matched
    by a constraint of ``specific`` with the same relation and an equal or more
    specific target.  Atoms behave like basic UWs.
    """
    if general.headword != specific.headword:
        return False
    for want in general.constraints:
        wanted = _as_uw(want.target)
        if not any(
            have.relation == want.relation and subsumes(wanted, _as_uw(have.target))
            for have in specific.constraints
        ):
            return False
    return True


def constraint_targets(uw: UW, relation: str) -> list:
    return [c.target for c in uw.constraints if c.relation == relation]
