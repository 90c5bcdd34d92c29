from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cqdict.errors import AmbiguousPatternError, NoCompatibleHostError, NoNumericPhraseError
from cqdict.normalize import (
    Tag,
    TaggedToken,
    detect_pattern,
    format_tokens,
    normalize,
    parse_number,
    parse_tokens,
)

CANONICAL = ["二", "冊", "の", "本", "を", "買いました"]


def _bundled(name):
    return parse_tokens(resources.files("cqdict.data").joinpath(name).read_text(encoding="utf-8"))


def _toks(spec):
    """``"本/NOUN を/PARTICLE ..."`` -> tokens."""
    out = []
    for item in spec.split():
        surface, tag = item.rsplit("/", 1)
        out.append(TaggedToken(surface, surface, Tag(tag)))
    return out


@pytest.fixture(scope="module")
def two_books():
    return _bundled("two_books.tok")


def test_four_patterns_detected(two_books):
    assert [detect_pattern(s).pattern for s in two_books] == [1, 2, 3, 4]


def test_all_variants_normalize_identically(seed, two_books):
    results = [normalize(seed, s) for s in two_books]
    for tokens, triple in results:
        assert [t.surface for t in tokens] == CANONICAL
        assert triple.number == 2
        assert triple.cq.romaji == "satsu"
        assert tokens[triple.host].surface == "本"
    # the comma-spliced variant yields the same triple as the canonical one
    assert results[3][1] == results[1][1]


def test_idempotent(seed, two_books):
    for sentence in two_books:
        once, triple = normalize(seed, sentence)
        twice, again = normalize(seed, once)
        assert twice == once
        assert again == triple


def test_floated_measure_on_animate_subject_rejected(seed):
    floated, attached = _bundled("piglet.tok")
    with pytest.raises(NoCompatibleHostError) as info:
        normalize(seed, floated)
    assert info.value.notes
    tokens, triple = normalize(seed, attached)
    assert triple.number == 3
    assert triple.cq.surface == "kg"
    assert tokens[triple.host].surface == "子豚"


def test_host_search_skips_incompatible_noun(seed):
    sentence = _toks("本/NOUN を/PARTICLE 猫/NOUN が/PARTICLE 二/NUM 冊/CQ 見ました/VERB")
    tokens, triple = normalize(seed, sentence)
    assert [t.surface for t in tokens] == ["二", "冊", "の", "本", "を", "猫", "が", "見ました"]
    assert tokens[triple.host].surface == "本"
    assert any("猫" in note for note in triple.notes)


def test_existential_gets_ga(seed):
    sentence = _toks("猫/NOUN 二/NUM 匹/CQ います/VERB")
    tokens, _ = normalize(seed, sentence)
    assert [t.surface for t in tokens] == ["二", "匹", "の", "猫", "が", "います"]


def test_no_numeric_phrase(seed):
    with pytest.raises(NoNumericPhraseError):
        normalize(seed, _toks("本/NOUN を/PARTICLE 買いました/VERB"))


def test_strict_ambiguity():
    sentence = _toks("本/NOUN 二/NUM 冊/CQ の/PARTICLE ノート/NOUN を/PARTICLE 買いました/VERB")
    match = detect_pattern(sentence)
    assert match.pattern == 3
    assert [m.pattern for m in match.alternatives] == [2]
    with pytest.raises(AmbiguousPatternError):
        detect_pattern(sentence, strict=True)


@pytest.mark.parametrize(
    "text,value",
    [("2", 2), ("２", 2), ("二", 2), ("十", 10), ("二十五", 25), ("三千二百万", 32000000), ("1.5", Fraction(3, 2))],
)
def test_parse_number(text, value):
    assert parse_number(text) == value


def test_parse_number_rejects_words():
    with pytest.raises(ValueError):
        parse_number("本")


def test_token_file_roundtrip(two_books):
    assert parse_tokens(format_tokens(two_books)) == two_books


def test_token_file_errors():
    with pytest.raises(ValueError):
        parse_tokens("本\thon\n")
    with pytest.raises(ValueError):
        parse_tokens("本\thon\tWHAT\n")


_NUMS = ["一", "二", "三", "5", "10"]
_OBJECTS = [("本", "冊"), ("車", "台"), ("家", "軒")]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(_NUMS), st.sampled_from(_OBJECTS), st.sampled_from([1, 2, 3, 4]))
def test_normalize_idempotent_property(seed, num, obj, pattern):
    noun, cq = obj
    body = {
        1: f"{noun}/NOUN を/PARTICLE {num}/NUM {cq}/CQ 買いました/VERB",
        2: f"{num}/NUM {cq}/CQ の/PARTICLE {noun}/NOUN を/PARTICLE 買いました/VERB",
        3: f"{noun}/NOUN {num}/NUM {cq}/CQ 買いました/VERB",
        4: f"{noun}/NOUN を/PARTICLE 買いました/VERB 、/PUNCT {num}/NUM {cq}/CQ",
    }[pattern]
    once, triple = normalize(seed, _toks(body))
    assert [t.surface for t in once] == [num, cq, "の", noun, "を", "買いました"]
    assert normalize(seed, once) == (once, triple)
