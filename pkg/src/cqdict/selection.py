"""Classifier selection: sense disambiguation, dummy classifiers, existential verbs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .dictionary import (
    Animacy,
    CqSense,
    Dictionary,
    MeasureUnit,
    animacy as derive_animacy,
    class_chain,
    classifier_for_referent,
    referent_terms,
    sense_fits,
)
from .errors import (
    NoClassifierError,
    NoMatchError,
    NoSenseError,
    SelectionError,
    UnknownAnimacyError,
    UnknownSizeError,
    UwSyntaxError,
)
from .unl import Arc, PlainWord, ScopeRef, UnlDocument, UwNode
from .uw import UW, Atom, format_uw, parse_uw

EXISTENTIAL = "there-be"


@dataclass(frozen=True)
class NounContext:
    noun_uw: UW
    number: Optional[Fraction] = None
    animacy: Animacy = Animacy.UNKNOWN


def noun_context(dictionary: Dictionary, noun: Union[str, UW], number=None) -> NounContext:
    """Build a context from a surface form, a UW headword, or UW text."""
    if isinstance(noun, UW):
        record = dictionary.noun_for_uw(noun)
        uw = noun
    else:
        record = dictionary.noun(noun)
        if record is not None:
            uw = record.uw
        else:
            try:
                uw = parse_uw(noun)
            except UwSyntaxError:
                raise SelectionError(f"unknown noun {noun!r}") from None
            record = dictionary.noun_for_uw(uw)
    if record is not None and uw.is_basic:
        uw = record.uw
    if number is not None:
        number = Fraction(number)
    return NounContext(uw, number, derive_animacy(dictionary, uw))


@dataclass(frozen=True)
class Selection:
    chosen_sense: CqSense
    score: int
    rationale: tuple[str, ...] = ()


def _target_score(target, chain):
    if isinstance(target, Atom):
        segments = target.chain
        if segments[0] not in chain:
            return 0
        return sum(1 for s in segments if s in chain)
    if target.headword not in chain:
        return 0
    return 1 + sum(_target_score(c.target, chain) for c in target.constraints if c.relation == "icl")


def _score(sense_uw: UW, complement: UW, chain):
    """Depth-weighted count of satisfied constraints; 0 when an ``icl`` fails."""
    score = 0
    trace = []
    for c in sense_uw.constraints:
        if c.relation == "icl":
            got = _target_score(c.target, chain)
            if not got:
                return 0, [f"{c} unmet by {'>'.join(chain)}"]
            score += got
            trace.append(f"{c} met (+{got})")
        elif c in complement.constraints:
            score += 1
            trace.append(f"{c} shared (+1)")
    return score, trace


def disambiguate(dictionary: Dictionary, lemma: str, complement: NounContext, fallback: bool = True) -> Selection:
    """Pick the sense of ``lemma`` that best fits its noun complement.

    Senses are scored by the constraints the complement's class chain
    satisfies; the highest score wins, ties go to the earlier sense.  When no
    sense of ``lemma`` fits and ``fallback`` is set, the complement's own
    counting classifier is returned (``pièce de bétail`` is counted as cattle).
    """
    senses = dictionary.senses_for_lemma(lemma)
    if not senses:
        raise NoSenseError(f"no sense recorded for {lemma!r}")
    chain = class_chain(dictionary, complement.noun_uw)
    best = None
    for sense in senses:
        score, trace = _score(sense.uw, complement.noun_uw, chain)
        if score and (best is None or score > best.score):
            best = Selection(sense, score, tuple(trace))
    if best is not None:
        return best
    if fallback:
        try:
            sense = classifier_for_referent(dictionary, complement.noun_uw)
            why = f"no sense of {lemma!r} fits; counted as {sense_fits(sense, referent_terms(dictionary, complement.noun_uw))}"
        except NoClassifierError:
            sense = None
        if sense is None and complement.animacy is Animacy.ANIMAL:
            try:
                sense = magnitude_classifier(dictionary, complement)
                why = f"no sense of {lemma!r} fits; animal size {sense.fl_label}"
            except SelectionError:
                sense = None
        if sense is not None:
            return Selection(sense, 1, (why,))
    raise NoMatchError(f"no sense of {lemma!r} fits {format_uw(complement.noun_uw)!r}")


def _format_number(number: Fraction) -> str:
    number = Fraction(number)
    if number.denominator == 1:
        return str(number.numerator)
    as_float = float(number)
    if Fraction(repr(as_float)) == number:
        return repr(as_float)
    return f"{number.numerator}/{number.denominator}"


def _free_scope(into: Optional[UnlDocument]) -> str:
    used = set(into.scope_ids()) if into is not None else set()
    for n in range(1, 100):
        scope = f":{n:02d}"
        if scope not in used:
            return scope
    raise SelectionError("no free scope id left")


def dummy_classifier_sense(dictionary: Dictionary, noun: NounContext) -> CqSense:
    """Counting sense for ``noun``, preferring synthetic ``CQ-...`` UWs."""
    synthetic = Dictionary(senses=[s for s in dictionary.senses if s.uw.kind == "extra"], nouns=dictionary.nouns)
    try:
        return classifier_for_referent(synthetic, noun.noun_uw)
    except NoClassifierError:
        return classifier_for_referent(dictionary, noun.noun_uw)


def insert_dummy_classifier(
    dictionary: Dictionary, noun: NounContext, number, into: Optional[UnlDocument] = None
) -> UnlDocument:
    """Two-arc fragment counting ``noun`` with an elided classifier.

    ``qua(<noun>[.@pl], :NN)`` plus ``mod:NN(<CQ-UW>.@entry.@eld, <number>)``;
    ``.@pl`` is added when the number exceeds one.  ``:NN`` is the first scope
    id not already used by ``into``.
    """
    sense = dummy_classifier_sense(dictionary, noun)
    number = Fraction(number)
    scope = _free_scope(into)
    noun_node = UwNode(noun.noun_uw, frozenset({"@pl"}) if number > 1 else frozenset())
    cq_node = UwNode(sense.uw, frozenset({"@entry", "@eld"}))
    return UnlDocument([
        Arc("qua", noun_node, ScopeRef(scope), None, 1),
        Arc("mod", cq_node, PlainWord(_format_number(number)), scope, 2),
    ])


def _known_animacy(dictionary, noun: NounContext) -> Animacy:
    if noun.animacy is not Animacy.UNKNOWN:
        return noun.animacy
    return derive_animacy(dictionary, noun.noun_uw)


def _existential_classes(dictionary, verb: str):
    """Subject classes accepted by ``verb`` if it is an existential, else None."""
    senses = [v for v in dictionary.verb(verb) if v.uw.headword == EXISTENTIAL]
    if not senses:
        return None
    classes = set()
    for v in senses:
        classes.update(t.headword for t in v.uw.targets("obj"))
    return classes


def select_existential(dictionary: Dictionary, subject: NounContext) -> str:
    """``iru`` for animals and people, ``aru`` for things."""
    anim = _known_animacy(dictionary, subject)
    if anim is Animacy.UNKNOWN:
        raise UnknownAnimacyError(f"cannot tell animacy of {format_uw(subject.noun_uw)!r}")
    for verb in dictionary.verbs:
        if verb.uw.headword != EXISTENTIAL:
            continue
        if any(t.headword == anim.value for t in verb.uw.targets("obj")):
            return verb.romaji
    raise UnknownAnimacyError(f"no existential verb takes a subject of class {anim.value!r}")


def magnitude_classifier(dictionary: Dictionary, animal: NounContext) -> CqSense:
    """Large-animal or small-animal counter, chosen by the noun's size mark."""
    if _known_animacy(dictionary, animal) is not Animacy.ANIMAL:
        raise SelectionError(f"{format_uw(animal.noun_uw)!r} is not an animal")
    record = dictionary.noun_for_uw(animal.noun_uw)
    size = record.size if record is not None else None
    if size is None:
        raise UnknownSizeError(f"no size mark for {format_uw(animal.noun_uw)!r}")
    for sense in dictionary.senses:
        if sense.fl_label == size and sense.cq_type in ("a", "both"):
            return sense
    raise NoClassifierError(f"no classifier carries the {size} label")


def classifier_fits(dictionary: Dictionary, sense: CqSense, noun: NounContext) -> bool:
    if sense_fits(sense, referent_terms(dictionary, noun.noun_uw)):
        return True
    if sense.fl_label in ("Magn", "Anti-Magn") and _known_animacy(dictionary, noun) is Animacy.ANIMAL:
        record = dictionary.noun_for_uw(noun.noun_uw)
        return record is not None and record.size == sense.fl_label
    return False


@dataclass(frozen=True)
class Cooccurrence:
    valid: bool
    reason: str = ""

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "Valid" if self.valid else f"Invalid({self.reason})"


VALID = Cooccurrence(True)


def _resolve_quantifier(dictionary, floating):
    if isinstance(floating, (CqSense, MeasureUnit)):
        return floating
    return dictionary.unit(floating) or dictionary.sense_for_classifier(floating)


def check_cooccurrence(
    dictionary: Dictionary,
    floating_cq: Union[CqSense, MeasureUnit, str],
    host: NounContext,
    verb: str,
    floated: bool = True,
) -> Cooccurrence:
    """Judge a quantifier/host/verb combination.

    A measure unit cannot float away from a host that is the subject of the
    animate existential (``kobuta-ga 3kg imashita``); attached to the host it
    is fine.  Count classifiers must count the host.
    """
    quantifier = _resolve_quantifier(dictionary, floating_cq)
    if quantifier is None:
        return Cooccurrence(False, f"unknown quantifier {floating_cq!r}")
    classes = _existential_classes(dictionary, verb)
    anim = _known_animacy(dictionary, host)
    if classes is not None and anim is not Animacy.UNKNOWN and anim.value not in classes:
        return Cooccurrence(False, f"{verb} does not take a subject of class {anim.value}")
    if isinstance(quantifier, MeasureUnit):
        if floated and classes is not None and classes & {"animal", "person"}:
            return Cooccurrence(
                False, f"measure {quantifier.symbol} floated off an animate subject of {verb}"
            )
        return VALID
    if quantifier.cq_type == "b" and not quantifier.referent_classes:
        return VALID
    if not classifier_fits(dictionary, quantifier, host):
        return Cooccurrence(
            False, f"{quantifier.classifier.surface} does not count {format_uw(host.noun_uw)}"
        )
    return VALID


_QUANTITY_RE = re.compile(r"(\d+(?:[.,]\d+)?)\s*(\S+)\Z")


def resolve_unit(dictionary: Dictionary, tokens, index: int) -> Optional[MeasureUnit]:
    """Read ``tokens[index]`` as a measure unit only inside a quantity.

    ``3 cm`` and ``3cm`` resolve to the unit; a bare ``cm`` elsewhere may be an
    acronym and stays unresolved (``None``).
    """
    token = tokens[index]
    m = _QUANTITY_RE.match(token)
    if m:
        return dictionary.unit(m.group(2))
    if index > 0 and re.fullmatch(r"\d+(?:[.,]\d+)?", tokens[index - 1]):
        return dictionary.unit(token)
    return None
