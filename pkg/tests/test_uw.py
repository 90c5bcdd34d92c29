import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqdict.errors import UwSyntaxError
from cqdict.labels import RELATIONS, UnknownLabelWarning
from cqdict.uw import UW, Atom, Constraint, format_uw, parse_uw, same_concept, subsumes
from strategies import uws

REFERENCE_UWS = [
    "look(agt>thing, equ>search, icl>examine(icl>do, obj>thing))",
    "season(agt>person, obj>dish, icl>action)",
    "cask(icl>wine, equ>220 litres)",
]
PIECE_SENSES = [
    "cask(icl>wine)",
    "piece(icl>cloth)",
    "piece(icl>furniture)",
    "piece(icl>meat)",
    "room(icl>place)",
]


@pytest.mark.parametrize("text", REFERENCE_UWS + PIECE_SENSES)
def test_reference_strings_roundtrip(text):
    assert format_uw(parse_uw(text)) == text


def test_nested_structure():
    uw = parse_uw(REFERENCE_UWS[0])
    assert uw.headword == "look"
    assert [c.relation for c in uw.constraints] == ["agt", "equ", "icl"]
    nested = uw.constraints[2].target
    assert isinstance(nested, UW)
    assert nested.headword == "examine"
    assert nested.kind == "restricted"


def test_atom_keeps_spaces():
    uw = parse_uw("cask(icl>wine, equ>220 litres)")
    assert uw.constraints[1].target == Atom("220 litres")


def test_headword_with_spaces_and_chain_atom():
    uw = parse_uw("a hint of(icl>action>thing)")
    assert uw.headword == "a hint of"
    assert uw.constraints[0].target.chain == ("action", "thing")


@pytest.mark.parametrize(
    "text,kind",
    [
        ("piece", "basic"),
        ("piece(icl>cloth)", "restricted"),
        ("CQ-satsu-books-notebooks-albums(icl>CQ)", "extra"),
    ],
)
def test_kinds(text, kind):
    assert parse_uw(text).kind == kind


def test_whitespace_is_canonicalized():
    assert format_uw(parse_uw("  cask( icl > wine ,equ>220   litres )  ")) == "cask(icl>wine, equ>220 litres)"


@pytest.mark.parametrize(
    "text,reason",
    [
        ("cask(icl>wine", "unbalanced parentheses"),
        ("cask(icl>wine))", "unbalanced parentheses"),
        ("(icl>wine)", "empty headword"),
        ("cask(icl>)", "empty constraint"),
        ("cask(icl>wine, )", "empty constraint"),
        ("cask(wine)", "missing '>'"),
        ("cask(icl>wine) extra", "trailing garbage"),
        ("   ", "empty"),
    ],
)
def test_syntax_errors(text, reason):
    with pytest.raises(UwSyntaxError) as info:
        parse_uw(text)
    assert reason in str(info.value)


def test_unknown_relation_strict_and_permissive():
    with pytest.raises(UwSyntaxError):
        parse_uw("cask(zzz>wine)")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        uw = parse_uw("cask(zzz>wine)", strict=False)
    assert uw.constraints[0].relation == "zzz"
    assert any(issubclass(w.category, UnknownLabelWarning) for w in caught)


def test_custom_registry():
    registry = RELATIONS.with_labels("zzz")
    assert parse_uw("cask(zzz>wine)", relations=registry).constraints[0].relation == "zzz"


def test_subsumes_examples():
    assert subsumes(parse_uw("piece"), parse_uw("piece(icl>cloth)"))
    assert not subsumes(parse_uw("piece(icl>cloth)"), parse_uw("piece"))
    assert not subsumes(parse_uw("piece"), parse_uw("room(icl>place)"))
    assert subsumes(parse_uw("x(icl>y)"), parse_uw("x(icl>y(obj>z), agt>w)"))


def test_basic_nested_target_equals_atom():
    assert Constraint("icl", UW("wine")) == Constraint("icl", Atom("wine"))


def test_same_concept_ignores_order():
    assert same_concept(parse_uw("x(icl>a, obj>b)"), parse_uw("x(obj>b, icl>a)"))
    assert parse_uw("x(icl>a, obj>b)") != parse_uw("x(obj>b, icl>a)")


# -- properties -------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(uws())
def test_roundtrip_property(uw):
    text = format_uw(uw)
    assert parse_uw(text) == uw
    assert format_uw(parse_uw(text)) == text


@settings(max_examples=200, deadline=None)
@given(uws())
def test_subsumes_reflexive(uw):
    assert subsumes(uw, uw)


def _specialize(uw, data):
    """A restriction of ``uw``: extra constraints, narrower targets."""
    constraints = []
    for c in uw.constraints:
        target = c.target
        if data.draw(st.booleans()):
            base = target if isinstance(target, UW) else UW(target.text)
            target = _specialize(base, data)
        constraints.append(Constraint(c.relation, target))
    extra = data.draw(st.lists(st.builds(Constraint, st.sampled_from(["icl", "obj", "mod"]), st.just(Atom("k"))), max_size=2))
    return UW(uw.headword, tuple(constraints + extra))


@settings(max_examples=200, deadline=None)
@given(uws(max_depth=3), st.data())
def test_subsumes_transitive(uw, data):
    middle = _specialize(uw, data)
    low = _specialize(middle, data)
    assert subsumes(uw, middle)
    assert subsumes(middle, low)
    assert subsumes(uw, low)


@settings(max_examples=300, deadline=None)
@given(uws(max_depth=3, distinct_relations=True), uws(max_depth=3, distinct_relations=True))
def test_subsumes_antisymmetric(a, b):
    if subsumes(a, b) and subsumes(b, a):
        assert same_concept(a, b)


@settings(max_examples=200, deadline=None)
@given(uws(max_depth=3, distinct_relations=True), st.data())
def test_antisymmetry_on_reordered_copy(uw, data):
    shuffled = UW(uw.headword, tuple(data.draw(st.permutations(uw.constraints))))
    assert subsumes(uw, shuffled) and subsumes(shuffled, uw)
    assert same_concept(uw, shuffled)


@settings(max_examples=300, deadline=None)
@given(uws(), st.data())
def test_paren_deletion_is_rejected(uw, data):
    text = format_uw(uw)
    positions = [i for i, ch in enumerate(text) if ch in "()"]
    if not positions:
        return
    i = data.draw(st.sampled_from(positions))
    with pytest.raises(UwSyntaxError):
        parse_uw(text[:i] + text[i + 1:])


@settings(max_examples=300, deadline=None)
@given(uws(), st.data())
def test_comma_deletion_never_roundtrips(uw, data):
    text = format_uw(uw)
    positions = [i for i, ch in enumerate(text) if ch == ","]
    if not positions:
        return
    i = data.draw(st.sampled_from(positions))
    try:
        mutated = parse_uw(text[:i] + text[i + 1:])
    except UwSyntaxError:
        return
    assert mutated != uw
