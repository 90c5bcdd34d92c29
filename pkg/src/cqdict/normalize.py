"""Floating numeral-classifier phrases in pre-tokenized Japanese.

Four surface orders express the same count::

    1  本 を 二 冊 買いました        noun + particle + NUM CQ + verb
    2  二 冊 の 本 を 買いました     NUM CQ + の + noun  (canonical)
    3  本 二 冊 買いました           noun + NUM CQ
    4  本 を 買いました 、 二 冊     clause + comma + NUM CQ

``normalize`` finds the host noun of the floated phrase and rewrites the
sentence into the canonical order.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .dictionary import Classifier, Dictionary
from .errors import AmbiguousPatternError, NoCompatibleHostError, NoNumericPhraseError, SelectionError
from .selection import EXISTENTIAL, check_cooccurrence, noun_context

NO = "の"
COMMAS = frozenset({"、", ",", "，"})


class Tag(str, enum.Enum):
    NOUN = "NOUN"
    NUM = "NUM"
    CQ = "CQ"
    PARTICLE = "PARTICLE"
    VERB = "VERB"
    PUNCT = "PUNCT"
    OTHER = "OTHER"


_DIGITS = {"〇": 0, "零": 0, "一": 1, "二": 2, "三": 3, "四": 4, "五": 5, "六": 6, "七": 7, "八": 8, "九": 9}
_DIGITS.update({str(d): d for d in range(10)})
_SMALL_UNITS = {"十": 10, "百": 100, "千": 1000}
_LARGE_UNITS = {"万": 10**4, "億": 10**8}


def parse_number(text: str) -> Fraction:
    """Read Arabic (half or full width) or kanji numerals: ``2``, ``２``, ``二``, ``二十五``."""
    text = unicodedata.normalize("NFKC", text).strip()
    if not text:
        raise ValueError("empty numeral")
    try:
        return Fraction(text)
    except ValueError:
        pass
    total = section = 0
    digits = None
    for ch in text:
        if ch in _DIGITS:
            digits = _DIGITS[ch] if digits is None else digits * 10 + _DIGITS[ch]
        elif ch in _SMALL_UNITS:
            section += (1 if digits is None else digits) * _SMALL_UNITS[ch]
            digits = None
        elif ch in _LARGE_UNITS:
            section += digits or 0
            total += (section or 1) * _LARGE_UNITS[ch]
            section, digits = 0, None
        else:
            raise ValueError(f"not a numeral: {text!r}")
    return Fraction(total + section + (digits or 0))


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    romaji: str
    tag: Tag
    value: Optional[Fraction] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tag", Tag(self.tag))
        if self.tag is Tag.NUM and self.value is None:
            object.__setattr__(self, "value", parse_number(self.surface))

    def __str__(self):
        return f"{self.surface}\t{self.romaji}\t{self.tag.value}"


NO_TOKEN = TaggedToken(NO, "no", Tag.PARTICLE)


@dataclass(frozen=True)
class PatternMatch:
    pattern: int
    span: tuple[int, int]
    num_index: int
    alternatives: tuple = ()


@dataclass(frozen=True)
class QuantTriple:
    number: Fraction
    cq: Classifier
    host: int
    notes: tuple[str, ...] = field(default=(), compare=False)


def _matches_at(tokens, i):
    n = len(tokens)
    prev = tokens[i - 1] if i >= 1 else None
    if i + 3 < n and tokens[i + 2].surface == NO and tokens[i + 3].tag is Tag.NOUN:
        yield PatternMatch(2, (i, i + 4), i)
    if (
        i >= 2
        and prev.tag is Tag.PARTICLE
        and prev.surface != NO
        and tokens[i - 2].tag is Tag.NOUN
        and i + 2 < n
        and tokens[i + 2].tag is Tag.VERB
    ):
        yield PatternMatch(1, (i - 2, i + 3), i)
    if prev is not None and prev.tag is Tag.NOUN:
        yield PatternMatch(3, (i - 1, i + 2), i)
    if (
        i >= 2
        and prev.tag is Tag.PUNCT
        and prev.surface in COMMAS
        and all(t.tag is Tag.PUNCT and t.surface not in COMMAS for t in tokens[i + 2:])
    ):
        yield PatternMatch(4, (i - 1, i + 2), i)


def detect_pattern(tokens, strict: bool = False) -> PatternMatch:
    """Locate the numeric phrase and classify its position.

    Overlapping candidates are resolved leftmost-longest; the losers are kept
    in ``alternatives`` (or raised as ``AmbiguousPatternError`` when ``strict``).
    """
    found = []
    for i in range(len(tokens) - 1):
        if tokens[i].tag is Tag.NUM and tokens[i + 1].tag is Tag.CQ:
            found.extend(_matches_at(tokens, i))
    if not found:
        raise NoNumericPhraseError("no NUM+CQ phrase with a recognizable host position")
    best = min(found, key=lambda m: (m.span[0], m.span[0] - m.span[1]))
    rivals = tuple(
        m for m in found if m is not best and m.span[0] < best.span[1] and best.span[0] < m.span[1]
    )
    if strict and rivals:
        raise AmbiguousPatternError((best,) + rivals)
    return replace(best, alternatives=rivals)


def _first_verb(tokens, start, stop=None):
    stop = len(tokens) if stop is None else stop
    for k in range(start, stop):
        if tokens[k].tag is Tag.VERB:
            return tokens[k].surface
    return ""


def _host_search(tokens, match):
    """Candidate host indices (nearest first) and the governing verb."""
    i = match.num_index
    if match.pattern == 2:
        return [i + 3], _first_verb(tokens, i + 4)
    if match.pattern == 4:
        comma = i - 1
        start = comma - 1
        while start >= 0 and not (tokens[start].tag is Tag.PUNCT):
            start -= 1
        clause = range(comma - 1, start, -1)
        verb = ""
        for k in clause:
            if tokens[k].tag is Tag.VERB:
                verb = tokens[k].surface
                break
        return [k for k in clause if tokens[k].tag is Tag.NOUN], verb
    return [k for k in range(i - 1, -1, -1) if tokens[k].tag is Tag.NOUN], _first_verb(tokens, i + 2)


def _quantifier(dictionary, token):
    return (
        dictionary.unit(token.surface)
        or dictionary.sense_for_classifier(token.surface)
        or dictionary.sense_for_classifier(token.romaji)
    )


def associate_host(dictionary: Dictionary, tokens, match: PatternMatch) -> QuantTriple:
    """Attach the numeric phrase to the nearest noun it can count."""
    i = match.num_index
    quantifier = _quantifier(dictionary, tokens[i + 1])
    if quantifier is None:
        raise NoCompatibleHostError(f"{tokens[i + 1].surface!r} is neither a classifier nor a unit")
    candidates, verb = _host_search(tokens, match)
    notes = []
    for k in candidates:
        try:
            host = noun_context(dictionary, tokens[k].surface)
        except SelectionError:
            notes.append(f"skip {tokens[k].surface}: not in the lexicon")
            continue
        verdict = check_cooccurrence(dictionary, quantifier, host, verb, floated=match.pattern != 2)
        if verdict:
            return QuantTriple(tokens[i].value, quantifier.classifier, k, tuple(notes))
        notes.append(f"skip {tokens[k].surface}: {verdict.reason}")
    raise NoCompatibleHostError(
        f"no host for {tokens[i].surface}{tokens[i + 1].surface}" + (f" ({'; '.join(notes)})" if notes else ""),
        notes,
    )


def _case_particle(dictionary, verb_surface):
    if any(v.uw.headword == EXISTENTIAL for v in dictionary.verb(verb_surface)):
        return TaggedToken("が", "ga", Tag.PARTICLE)
    return TaggedToken("を", "wo", Tag.PARTICLE)


def normalize(dictionary: Dictionary, tokens):
    """Rewrite into ``NUM CQ の HOST`` order; returns (tokens, triple).

    The floated phrase moves in front of its host followed by の; the comma
    of a comma-spliced phrase goes with it.  A host directly followed by its
    verb (particle dropped) gets its case particle back: が before an
    existential verb, を otherwise.  Canonical input comes back unchanged.
    """
    tokens = list(tokens)
    match = detect_pattern(tokens)
    triple = associate_host(dictionary, tokens, match)
    if match.pattern == 2 and triple.host == match.num_index + 3:
        return tokens, triple
    i, h = match.num_index, triple.host
    dropped = {i, i + 1}
    if match.pattern == 4:
        dropped.add(i - 1)
    kept = [(k, t) for k, t in enumerate(tokens) if k not in dropped]
    out = []
    new_host = None
    for pos, (k, tok) in enumerate(kept):
        if k != h:
            out.append(tok)
            continue
        out.extend([tokens[i], tokens[i + 1], NO_TOKEN, tok])
        new_host = len(out) - 1
        nxt = kept[pos + 1][1] if pos + 1 < len(kept) else None
        if nxt is not None and nxt.tag is Tag.VERB:
            out.append(_case_particle(dictionary, nxt.surface))
    return out, replace(triple, host=new_host)


def parse_tokens(text: str) -> list:
    """``surface<TAB>romaji<TAB>TAG`` lines; blank lines separate sentences."""
    sentences, current = [], []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {line_no}: expected surface<TAB>romaji<TAB>TAG")
        surface, romaji, tag = parts
        try:
            current.append(TaggedToken(surface, romaji, Tag(tag.strip())))
        except ValueError as exc:
            raise ValueError(f"line {line_no}: {exc}") from None
    if current:
        sentences.append(current)
    return sentences


def format_tokens(sentences) -> str:
    return "\n".join("".join(f"{t}\n" for t in s) for s in sentences)
