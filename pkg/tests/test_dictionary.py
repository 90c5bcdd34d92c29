import pytest

from cqdict.dictionary import (
    Animacy,
    CqUwName,
    animacy,
    check_consistency,
    class_chain,
    classifier_for_referent,
    dumps,
    load_dictionary,
    loads,
    make_cq_uw,
    save_dictionary,
)
from cqdict.errors import ConsistencyError, DuplicateIdError, MalformedRecordError, NoClassifierError
from cqdict.uw import format_uw, parse_uw

SMALL = """\
record\tsense
lemma\t冊
uw\tCQ-satsu-books(icl>CQ)
classifier\t冊
romaji\tsatsu
type\ta
referents\tbooks

record\tnoun
uw\tbook(icl>thing)
forms\tbook, 本

record\tentry
id\tja-1
keyword\t冊
class\tCQ
en\tI bought 2 books.
fr\tJ'ai acheté 2 livres.
ja\t2冊の本を買いました。
source\tRoyal
annotation
\tagt(buy(icl>do).@entry.@past, I)
\tobj(buy(icl>do).@entry.@past, book(icl>thing).@pl)
\tqua(book(icl>thing).@pl, :01)
\tmod:01(CQ-satsu-books(icl>CQ).@entry.@eld, 2)
"""


def _codes(problems):
    return sorted(p.code for p in problems)


def test_small_dictionary_loads_and_roundtrips():
    d = loads(SMALL)
    assert d.stats() == {"entries": 1, "senses": 1, "nouns": 1, "verbs": 0, "units": 0}
    assert dumps(d) == SMALL
    entry = d.entries[0]
    assert len(entry.annotation) == 4
    assert entry.sentence_ja == "2冊の本を買いました。"


def test_seed_is_consistent_and_byte_stable(seed, seed_file):
    assert check_consistency(seed) == []
    assert dumps(seed) == seed_file.read_text(encoding="utf-8")
    assert len(seed.entries) >= 25


def test_save_and_load(tmp_path, seed):
    path = tmp_path / "copy.dic"
    save_dictionary(seed, path)
    assert load_dictionary(path) == seed


def test_comments_survive_roundtrip():
    text = "# header line\n\n# about the sense\n" + SMALL
    assert dumps(loads(text)) == text


def test_seed_piece_has_five_senses(seed):
    assert [format_uw(s.uw) for s in seed.senses_for_lemma("pièce")] == [
        "cask(icl>wine)",
        "piece(icl>cloth)",
        "piece(icl>furniture)",
        "piece(icl>meat)",
        "room(icl>place)",
    ]


def test_duplicate_id_rejected():
    second = SMALL.split("record\tentry")[1]
    with pytest.raises(DuplicateIdError):
        loads(SMALL + "\nrecord\tentry" + second)


@pytest.mark.parametrize(
    "text",
    [
        "record\twhatever\nlemma\tx\n",
        "lemma\tx\n",
        "record\tsense\nlemma\tx\n",
        "record\tsense\nlemma\tx\nuw\tx(icl\nclassifier\tx\nromaji\tx\ntype\ta\n",
    ],
)
def test_malformed_records(text):
    with pytest.raises(MalformedRecordError):
        loads(text, check=False)


def test_consistency_violations():
    broken = (
        SMALL.replace("type\ta\nreferents\tbooks", "type\tq")
        .replace("keyword\t冊", "keyword\t頭")
        .replace("mod:01(CQ-satsu-books(icl>CQ)", "mod:01(CQ-hon-pens(icl>CQ)")
    )
    with pytest.raises(ConsistencyError) as info:
        loads(broken)
    assert _codes(info.value.violations) == ["BadCqType", "KeywordNotFound", "OrphanCqUw"]


def test_missing_referents_and_bad_annotation():
    broken = SMALL.replace("referents\tbooks\n", "").replace("@pl, :01)", "@pl, :02)")
    problems = check_consistency(loads(broken, check=False))
    assert _codes(problems) == ["BadAnnotation", "MissingReferents"]


def test_cq_uw_naming():
    name = CqUwName("satsu", ("books", "notebooks", "albums"))
    assert name.render() == "CQ-satsu-books-notebooks-albums"
    assert CqUwName.parse("CQ-satsu-books-notebooks-albums") == name
    uw = make_cq_uw(name)
    assert format_uw(uw) == "CQ-satsu-books-notebooks-albums(icl>CQ)"
    assert uw.kind == "extra"


def test_class_chain_and_animacy(seed):
    assert class_chain(seed, parse_uw("piglet(icl>pig>animal)"))[:3] == ["piglet", "pig", "animal"]
    assert animacy(seed, parse_uw("cat(icl>animal)")) is Animacy.ANIMAL
    assert animacy(seed, parse_uw("student(icl>person)")) is Animacy.PERSON
    assert animacy(seed, parse_uw("book(icl>thing)")) is Animacy.THING
    assert animacy(seed, parse_uw("zork")) is Animacy.UNKNOWN


@pytest.mark.parametrize(
    "noun,classifier",
    [("book", "冊"), ("cat", "匹"), ("cattle", "頭"), ("car", "台"), ("house", "軒"), ("wood", "枚")],
)
def test_classifier_for_referent(seed, noun, classifier):
    assert classifier_for_referent(seed, seed.noun(noun).uw).classifier.surface == classifier


def test_classifier_for_unknown_referent(seed):
    with pytest.raises(NoClassifierError):
        classifier_for_referent(seed, parse_uw("theater(icl>art>thing)"))


def test_lookup_helpers(seed):
    assert seed.noun("livres").uw.headword == "book"
    assert seed.noun("子豚").uw.headword == "piglet"
    assert seed.unit("kg").romaji == "kiro"
    assert seed.unit("キロ").symbol == "kg"
    assert {v.romaji for v in seed.verb("いました")} == {"iru"}
    assert seed.sense_for_classifier("satsu").classifier.surface == "冊"
