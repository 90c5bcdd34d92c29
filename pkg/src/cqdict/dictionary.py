"""CQ dictionary: example entries, classifier/quantifier senses and a small lexicon.

On disk a dictionary is a sequence of blank-line separated blocks.  Each block
holds ``field<TAB>value`` lines and starts with ``record<TAB>kind``; kinds are
``sense``, ``noun``, ``verb``, ``unit`` and ``entry``.  The ``annotation``
field of an entry is followed by its UNL arcs, each indented by one tab.
Lines starting with ``#`` are comments and stay attached to their block.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from typing import NamedTuple, Optional

from .errors import (
    ConsistencyError,
    DuplicateIdError,
    MalformedRecordError,
    NoClassifierError,
    UnlSyntaxError,
    UwSyntaxError,
)
from .unl import UnlDocument, UwNode, Violation, parse_unl, serialize_unl, validate
from .uw import CQ_HEADWORD_RE, UW, Atom, Constraint, format_uw, parse_uw

CQ_TYPES = ("a", "b", "both")
FL_LABELS = ("Magn", "Anti-Magn", "Mult", "Sing")


class Animacy(str, enum.Enum):
    ANIMAL = "animal"
    PERSON = "person"
    THING = "thing"
    UNKNOWN = "unknown"


ANIMACY_TERMINALS = {a.value: a for a in (Animacy.ANIMAL, Animacy.PERSON, Animacy.THING)}


class Classifier(NamedTuple):
    surface: str
    romaji: str

    def __str__(self):
        return f"{self.surface} {self.romaji}"


@dataclass(frozen=True)
class CqUwName:
    romaji: str
    referents: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "referents", tuple(self.referents))

    def render(self) -> str:
        return "-".join(("CQ", self.romaji) + self.referents)

    @classmethod
    def parse(cls, headword: str) -> "CqUwName":
        if not CQ_HEADWORD_RE.match(headword):
            raise ValueError(f"{headword!r} is not a CQ-UW headword")
        _, romaji, *referents = headword.split("-")
        return cls(romaji, tuple(referents))

    def __str__(self):
        return self.render()


def make_cq_uw(name: CqUwName) -> UW:
    """``CQ-<romaji>-<referent>...(icl>CQ)`` for a classifier absent from English."""
    if not name.romaji:
        raise ValueError("a CQ-UW needs a romanized classifier")
    if not name.referents:
        raise ValueError("a CQ-UW needs at least one referent noun")
    return UW(name.render(), (Constraint("icl", Atom("CQ")),))


@dataclass(frozen=True)
class CqSense:
    lemma: str
    uw: UW
    classifier: Classifier
    cq_type: str
    referent_classes: tuple[str, ...] = ()
    fl_label: Optional[str] = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def classifier_ja(self) -> Classifier:
        return self.classifier


@dataclass(frozen=True)
class NounRecord:
    """Lexicon noun: its UW, surface forms and counting hints."""

    uw: UW
    forms: tuple[str, ...] = ()
    size: Optional[str] = None
    counted_as: Optional[str] = None
    notes: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class VerbSense:
    lemma: str
    romaji: str
    uw: UW
    forms: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class MeasureUnit:
    symbol: str
    romaji: str
    uw: UW
    forms: tuple[str, ...] = ()
    readings: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def classifier(self) -> Classifier:
        return Classifier(self.symbol, self.romaji)


@dataclass(frozen=True)
class DictEntry:
    id: str
    keyword: str
    word_class: str
    sentence_en: str
    sentence_fr: str
    sentence_ja: str
    source: str
    annotation: UnlDocument
    notes: tuple[str, ...] = field(default=(), compare=False)

    @property
    def sentences(self):
        return (self.sentence_en, self.sentence_fr, self.sentence_ja)


@dataclass(frozen=True)
class Dictionary:
    senses: tuple[CqSense, ...] = ()
    nouns: tuple[NounRecord, ...] = ()
    verbs: tuple[VerbSense, ...] = ()
    units: tuple[MeasureUnit, ...] = ()
    entries: tuple[DictEntry, ...] = ()
    header: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for f in ("senses", "nouns", "verbs", "units", "entries"):
            object.__setattr__(self, f, tuple(getattr(self, f)))
        by_lemma, by_head, by_form = {}, {}, {}
        for s in self.senses:
            by_lemma.setdefault(s.lemma, []).append(s)
        for n in self.nouns:
            by_head.setdefault(n.uw.headword, n)
            for form in n.forms:
                by_form.setdefault(form.casefold(), n)
        object.__setattr__(self, "_by_lemma", by_lemma)
        object.__setattr__(self, "_noun_by_head", by_head)
        object.__setattr__(self, "_noun_by_form", by_form)

    def senses_for_lemma(self, lemma: str) -> list:
        return list(self._by_lemma.get(lemma, ()))

    def noun(self, word: str) -> Optional[NounRecord]:
        """Noun record by surface form or UW headword."""
        return self._noun_by_form.get(word.casefold()) or self._noun_by_head.get(word)

    def noun_for_uw(self, uw: UW) -> Optional[NounRecord]:
        return self._noun_by_head.get(uw.headword)

    def unit(self, word: str) -> Optional[MeasureUnit]:
        for u in self.units:
            if word == u.symbol or word in u.forms:
                return u
        return None

    def verb(self, word: str) -> list:
        return [v for v in self.verbs if word == v.lemma or word == v.romaji or word in v.forms]

    def sense_for_classifier(self, word: str) -> Optional[CqSense]:
        """First sense whose target classifier is spelled ``word`` (surface or romaji)."""
        for s in self.senses:
            if word in (s.classifier.surface, s.classifier.romaji) and s.cq_type in ("a", "both"):
                return s
        return None

    def stats(self) -> dict:
        return {
            "entries": len(self.entries),
            "senses": len(self.senses),
            "nouns": len(self.nouns),
            "verbs": len(self.verbs),
            "units": len(self.units),
        }


def senses_for_lemma(dictionary: Dictionary, lemma: str) -> list:
    return dictionary.senses_for_lemma(lemma)


# -- lexicon traversal ----------------------------------------------------

def class_chain(dictionary: Dictionary, uw: UW) -> list:
    """The UW headword followed by its ``icl`` ancestors, nearest first."""
    chain = [uw.headword]
    seen = {uw.headword}
    queue = deque([uw])
    while queue:
        current = queue.popleft()
        record = dictionary.noun_for_uw(current)
        constraints = list(current.constraints)
        if record is not None and record.uw != current:
            constraints += record.uw.constraints
        for c in constraints:
            if c.relation != "icl":
                continue
            if isinstance(c.target, UW):
                names, nxt = [c.target.headword], [c.target]
            else:
                names = list(c.target.chain)
                nxt = [UW(n) for n in names]
            for name, node in zip(names, nxt):
                if name not in seen:
                    seen.add(name)
                    chain.append(name)
                    queue.append(node)
    return chain


def animacy(dictionary: Dictionary, uw: UW) -> Animacy:
    for name in class_chain(dictionary, uw):
        if name in ANIMACY_TERMINALS:
            return ANIMACY_TERMINALS[name]
    return Animacy.UNKNOWN


def _plural_match(referent: str, name: str) -> bool:
    referent, name = referent.casefold(), name.casefold()
    return (
        referent == name
        or referent == name + "s"
        or referent == name + "es"
        or (name.endswith("y") and referent == name[:-1] + "ies")
    )


def referent_terms(dictionary: Dictionary, uw: UW) -> list:
    """Class names under which ``uw`` may be counted, most specific first."""
    chain = class_chain(dictionary, uw)
    record = dictionary.noun_for_uw(uw)
    if record is not None and record.counted_as:
        chain.insert(1, record.counted_as)
    return chain


def sense_fits(sense: CqSense, terms) -> Optional[str]:
    """The first of ``terms`` listed among the sense's referent classes."""
    for term in terms:
        if any(_plural_match(r, term) for r in sense.referent_classes):
            return term
    return None


def classifier_for_referent(dictionary: Dictionary, referent: UW) -> CqSense:
    """Counting sense for ``referent``.

    Candidate class names are tried most specific first (the headword, its
    counting class, then ``icl`` ancestors); among senses listing the same
    name the first in file order wins.
    """
    counting = [s for s in dictionary.senses if s.cq_type in ("a", "both")]
    for term in referent_terms(dictionary, referent):
        for sense in counting:
            if sense_fits(sense, [term]):
                return sense
    raise NoClassifierError(f"no classifier counts {format_uw(referent)!r}")


# -- consistency ------------------------------------------------------------

def check_consistency(dictionary: Dictionary) -> list:
    out = []
    seen_ids = set()
    for e in dictionary.entries:
        if e.id in seen_ids:
            out.append(Violation("DuplicateId", e.id, "identifier used twice"))
        seen_ids.add(e.id)
        problems = validate(e.annotation)
        if problems:
            detail = "; ".join(str(p) for p in problems)
            out.append(Violation("BadAnnotation", e.id, detail))
        if not _keyword_found(e):
            out.append(Violation("KeywordNotFound", e.id, f"{e.keyword!r} occurs in no sentence"))

    cq_heads = {s.uw.headword for s in dictionary.senses}
    orphans = {}
    for e in dictionary.entries:
        for _, node in e.annotation.nodes():
            if isinstance(node, UwNode) and node.uw.kind == "extra" and node.uw.headword not in cq_heads:
                orphans.setdefault(node.uw.headword, e.id)
    for name, eid in orphans.items():
        out.append(Violation("OrphanCqUw", name, f"referenced by {eid} but no sense defines it"))

    for s in dictionary.senses:
        where = f"{s.lemma}:{format_uw(s.uw)}"
        try:
            ok = parse_uw(format_uw(s.uw)) == s.uw
        except UwSyntaxError:
            ok = False
        if not ok:
            out.append(Violation("BadSenseUw", where, "sense UW does not parse"))
        if s.cq_type not in CQ_TYPES:
            out.append(Violation("BadCqType", where, f"type {s.cq_type!r}"))
        if s.cq_type == "a" and not s.referent_classes:
            out.append(Violation("MissingReferents", where, "type a sense lists no referent class"))
        if s.fl_label is not None and s.fl_label not in FL_LABELS:
            out.append(Violation("BadFlLabel", where, f"label {s.fl_label!r}"))

    for n in dictionary.nouns:
        if n.forms and animacy(dictionary, n.uw) is Animacy.UNKNOWN:
            out.append(Violation("UnknownAnimacy", format_uw(n.uw), "icl chain reaches no animacy class"))
        if n.size is not None and n.size not in FL_LABELS:
            out.append(Violation("BadFlLabel", format_uw(n.uw), f"size {n.size!r}"))
    return out


def _keyword_found(entry: DictEntry) -> bool:
    key = entry.keyword.casefold()
    return any(key in s.casefold() for s in entry.sentences)


# -- file format --------------------------------------------------------------

_LIST_SEP = ", "

_SCHEMAS = {
    # kind: [(file field, attribute, required, is_list)]
    "sense": [
        ("lemma", "lemma", True, False),
        ("uw", "uw", True, False),
        ("classifier", "classifier", True, False),
        ("romaji", "romaji", True, False),
        ("type", "cq_type", True, False),
        ("referents", "referent_classes", False, True),
        ("fl", "fl_label", False, False),
    ],
    "noun": [
        ("uw", "uw", True, False),
        ("forms", "forms", False, True),
        ("size", "size", False, False),
        ("counted_as", "counted_as", False, False),
    ],
    "verb": [
        ("lemma", "lemma", True, False),
        ("romaji", "romaji", True, False),
        ("uw", "uw", True, False),
        ("forms", "forms", False, True),
    ],
    "unit": [
        ("symbol", "symbol", True, False),
        ("romaji", "romaji", True, False),
        ("uw", "uw", True, False),
        ("forms", "forms", False, True),
        ("readings", "readings", False, True),
    ],
    "entry": [
        ("id", "id", True, False),
        ("keyword", "keyword", True, False),
        ("class", "word_class", True, False),
        ("en", "sentence_en", True, False),
        ("fr", "sentence_fr", True, False),
        ("ja", "sentence_ja", True, False),
        ("source", "source", True, False),
        ("annotation", "annotation", True, False),
    ],
}

_KIND_ORDER = ("sense", "noun", "verb", "unit", "entry")
_COLLECTION = {"sense": "senses", "noun": "nouns", "verb": "verbs", "unit": "units", "entry": "entries"}


def _blocks(text):
    block, start = [], None
    for line_no, line in enumerate(text.splitlines(), 1):
        if line.strip():
            if not block:
                start = line_no
            block.append(line)
        elif block:
            yield start, block
            block = []
    if block:
        yield start, block


def _read_block(start, lines):
    notes, values = [], {}
    current = None
    for offset, line in enumerate(lines):
        line_no = start + offset
        if line.startswith("#"):
            notes.append(line)
            continue
        if line.startswith("\t"):
            if current != "annotation":
                raise MalformedRecordError(f"line {line_no}: indented line outside an annotation")
            values[current].append((line_no, line[1:]))
            continue
        name, sep, value = line.partition("\t")
        if name in values:
            raise MalformedRecordError(f"line {line_no}: field {name!r} repeated")
        if name == "annotation":
            if value.strip():
                raise MalformedRecordError(f"line {line_no}: annotation arcs go on indented lines")
            values[name] = []
        elif not sep:
            raise MalformedRecordError(f"line {line_no}: expected 'field<TAB>value'")
        else:
            values[name] = value
        current = name
    return notes, values


def _uw_field(value, line_no):
    try:
        return parse_uw(value)
    except UwSyntaxError as exc:
        raise MalformedRecordError(f"block at line {line_no}: bad UW {value!r}: {exc}") from None


def _build(kind, values, notes, line_no):
    schema = _SCHEMAS[kind]
    known = {f for f, *_ in schema} | {"record"}
    for name in values:
        if name not in known:
            raise MalformedRecordError(f"block at line {line_no}: unknown field {name!r} for {kind}")
    kwargs = {}
    for fname, attr, required, is_list in schema:
        if fname not in values:
            if required:
                raise MalformedRecordError(f"block at line {line_no}: {kind} lacks field {fname!r}")
            continue
        value = values[fname]
        if fname == "annotation":
            text = "\n".join(v for _, v in value)
            try:
                value = parse_unl(text)
            except UnlSyntaxError as exc:
                first = value[0][0] if value else line_no
                raise MalformedRecordError(f"annotation starting line {first}: {exc}") from None
        elif fname == "uw":
            value = _uw_field(value, line_no)
        elif is_list:
            value = tuple(v.strip() for v in value.split(",") if v.strip())
        kwargs[attr] = value
    if kind == "sense":
        kwargs["classifier"] = Classifier(kwargs["classifier"], kwargs.pop("romaji"))
    cls = {"sense": CqSense, "noun": NounRecord, "verb": VerbSense, "unit": MeasureUnit, "entry": DictEntry}[kind]
    return cls(notes=tuple(notes), **kwargs)


def loads(text: str, check: bool = True) -> Dictionary:
    """Parse dictionary text.  With ``check`` a consistency violation aborts loading."""
    header = []
    buckets = {k: [] for k in _KIND_ORDER}
    pending = []
    ids = set()
    for start, lines in _blocks(text):
        notes, values = _read_block(start, lines)
        if not values:
            if not any(buckets.values()) and not pending and not header:
                header = notes
            else:
                pending.extend(notes)
            continue
        kind = values.get("record")
        if kind not in _SCHEMAS:
            raise MalformedRecordError(f"block at line {start}: unknown or missing record kind {kind!r}")
        record = _build(kind, values, pending + notes, start)
        pending = []
        if kind == "entry":
            if record.id in ids:
                raise DuplicateIdError(f"duplicate entry id {record.id!r} (line {start})")
            ids.add(record.id)
        buckets[kind].append(record)
    dictionary = Dictionary(header=tuple(header), **{_COLLECTION[k]: v for k, v in buckets.items()})
    if check:
        problems = check_consistency(dictionary)
        if problems:
            raise ConsistencyError(problems)
    return dictionary


def load_dictionary(path, check: bool = True) -> Dictionary:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check=check)


def _record_lines(kind, record):
    lines = list(record.notes)
    lines.append(f"record\t{kind}")
    for fname, attr, required, is_list in _SCHEMAS[kind]:
        if kind == "sense" and fname in ("classifier", "romaji"):
            value = record.classifier.surface if fname == "classifier" else record.classifier.romaji
        else:
            value = getattr(record, attr)
        if fname == "annotation":
            lines.append("annotation")
            lines.extend("\t" + arc for arc in serialize_unl(value).splitlines())
            continue
        if value is None or (is_list and not value):
            continue
        if isinstance(value, UW):
            value = format_uw(value)
        elif is_list:
            value = _LIST_SEP.join(value)
        lines.append(f"{fname}\t{value}")
    return lines


def dumps(dictionary: Dictionary) -> str:
    blocks = []
    if dictionary.header:
        blocks.append(list(dictionary.header))
    for kind in _KIND_ORDER:
        for record in getattr(dictionary, _COLLECTION[kind]):
            blocks.append(_record_lines(kind, record))
    return "\n".join("\n".join(b) + "\n" for b in blocks)


def save_dictionary(dictionary: Dictionary, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(dictionary))


def seed_path():
    return resources.files("cqdict.data").joinpath("seed.dic")


def load_seed() -> Dictionary:
    return loads(seed_path().read_text(encoding="utf-8"))

