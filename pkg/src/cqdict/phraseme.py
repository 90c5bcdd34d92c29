"""KWIC concordances and quantity-phraseme mining over French text.

Candidates follow ``Det/Num + Noun + de|d' + Noun`` with no article before the
second noun (``une pincée de sel``, ``une pointe d'ironie``).  Confirmation
keeps the candidates whose first noun has a quantity sense in the dictionary.
"""

from __future__ import annotations

import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .dictionary import CqSense, Dictionary

_TOKEN_RE = re.compile(r"\w+['’]|\d+(?:[.,]\d+)*|\w+(?:-\w+)*|[^\w\s]")
_SENTENCE_RE = re.compile(r"(?<=[.!?…])\s+")
_APOSTROPHES = str.maketrans({"’": "'"})


def tokenize(text: str) -> list:
    """Words, numbers and punctuation; ``d'ail`` gives ``d'`` and ``ail``."""
    return _TOKEN_RE.findall(text)


def detokenize(tokens) -> str:
    out = ""
    for tok in tokens:
        if out and not out.endswith(("'", "’")):
            out += " "
        out += tok
    return out


def _fold(token: str) -> str:
    return token.casefold().translate(_APOSTROPHES)


@dataclass(frozen=True)
class CorpusDoc:
    doc_id: str
    sentences: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))


@dataclass(frozen=True)
class Lexicon:
    articles: frozenset = frozenset()
    determiners: frozenset = frozenset()
    numbers: frozenset = frozenset()
    elisions: dict = field(default_factory=dict, hash=False)
    inflections: dict = field(default_factory=dict, hash=False)

    @property
    def leaders(self):
        return self.articles | self.determiners | self.numbers

    def is_number(self, token):
        return token in self.numbers or token[:1].isdigit()

    def expand(self, token):
        """Full form of an elided token (``d'`` -> ``de``), else the token."""
        return self.elisions.get(token, token)

    def lemma(self, word):
        return self.inflections.get(word, word)


_SECTIONS = ("ARTICLES", "DETERMINERS", "NUMBERS", "ELISIONS", "INFLECTIONS")


def parse_lexicon(text: str) -> Lexicon:
    """Sections headed ``[NAME]``; pair sections hold ``form<space>full`` lines."""
    sections = {name: [] for name in _SECTIONS}
    current = None
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().upper()
            if current not in sections:
                raise ValueError(f"line {line_no}: unknown lexicon section {current!r}")
            continue
        if current is None:
            raise ValueError(f"line {line_no}: word outside a section")
        sections[current].append(line)

    def pairs(lines):
        out = {}
        for line in lines:
            form, _, full = line.partition(" ")
            if not full.strip():
                raise ValueError(f"expected 'form full' pair, got {line!r}")
            out[_fold(form)] = _fold(full.strip())
        return out

    return Lexicon(
        articles=frozenset(_fold(w) for w in sections["ARTICLES"]),
        determiners=frozenset(_fold(w) for w in sections["DETERMINERS"]),
        numbers=frozenset(_fold(w) for w in sections["NUMBERS"]),
        elisions=pairs(sections["ELISIONS"]),
        inflections=pairs(sections["INFLECTIONS"]),
    )


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def bundled_lexicon() -> Lexicon:
    return parse_lexicon(resources.files("cqdict.data").joinpath("lexicon_fr.txt").read_text(encoding="utf-8"))


def split_sentences(text: str) -> list:
    out = []
    for line in text.splitlines():
        out.extend(s.strip() for s in _SENTENCE_RE.split(line) if s.strip())
    return out


def parse_bundle(text: str, default_id: str = "doc") -> list:
    """Documents separated by ``## doc_id`` header lines."""
    docs, current_id, lines = [], None, []
    for line in text.splitlines():
        if line.startswith("## "):
            if current_id is not None or any(l.strip() for l in lines):
                docs.append(CorpusDoc(current_id or default_id, split_sentences("\n".join(lines))))
            current_id, lines = line[3:].strip(), []
        else:
            lines.append(line)
    if current_id is not None or any(l.strip() for l in lines):
        docs.append(CorpusDoc(current_id or default_id, split_sentences("\n".join(lines))))
    ids = [d.doc_id for d in docs]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ValueError(f"duplicate document id(s): {', '.join(dupes)}")
    return docs


def load_corpus(path) -> list:
    """A bundle file, or a directory whose files are documents or bundles."""
    path = Path(path)
    if path.is_file():
        return parse_bundle(path.read_text(encoding="utf-8"), path.stem)
    docs = []
    for child in sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith(".")):
        docs.extend(parse_bundle(child.read_text(encoding="utf-8"), child.stem))
    ids = [d.doc_id for d in docs]
    if len(ids) != len(set(ids)):
        raise ValueError("duplicate document ids across corpus files")
    return docs


def bundled_corpus() -> list:
    return parse_bundle(resources.files("cqdict.data").joinpath("mini_corpus.txt").read_text(encoding="utf-8"))


@dataclass(frozen=True)
class KwicLine:
    doc_id: str
    left: tuple[str, ...]
    keyword: str
    right: tuple[str, ...]

    def __str__(self):
        return f"{detokenize(self.left)} | {self.keyword} | {detokenize(self.right)}"


def build_kwic(corpus, keyword: str, window: int = 5) -> list:
    """One line per occurrence of ``keyword``; contexts stop at the sentence edge."""
    if window < 1:
        raise ValueError("window must be at least 1 token")
    query = [_fold(t) for t in tokenize(keyword)]
    if not query:
        return []
    width = len(query)
    out = []
    for doc in corpus:
        for sentence in doc.sentences:
            toks = tokenize(sentence)
            folded = [_fold(t) for t in toks]
            for i in range(len(toks) - width + 1):
                if folded[i:i + width] == query:
                    out.append(
                        KwicLine(
                            doc.doc_id,
                            tuple(toks[max(0, i - window):i]),
                            detokenize(toks[i:i + width]),
                            tuple(toks[i + width:i + width + window]),
                        )
                    )
    return out


@dataclass(frozen=True)
class PhrasemeCandidate:
    surface: str
    determiner: str
    head: str
    complement: str
    frequency: int = 1


@dataclass(frozen=True)
class ConfirmedCandidate:
    candidate: PhrasemeCandidate
    sense: CqSense

    @property
    def surface(self):
        return self.candidate.surface


def _is_word(token):
    return token[:1].isalpha()


def _sentence_candidates(tokens, lexicon: Lexicon, allow_bare_plural: bool):
    folded = [_fold(t) for t in tokens]
    function_words = lexicon.leaders | set(lexicon.elisions)
    for k in range(len(folded) - 2):
        head, prep = folded[k], folded[k + 1]
        if not _is_word(head) or head in function_words:
            continue
        if lexicon.expand(prep) != "de" or k + 2 >= len(folded):
            continue
        comp = folded[k + 2]
        if not _is_word(comp) or comp in function_words or lexicon.is_number(comp):
            continue
        prev = folded[k - 1] if k > 0 else None
        if prev is not None and (prev in lexicon.leaders or lexicon.is_number(prev)):
            det = prev
        elif allow_bare_plural and head.endswith(("s", "x")):
            det = ""
        else:
            continue
        surface = detokenize([t for t in (det, head, prep, comp) if t])
        yield PhrasemeCandidate(surface, det, head, comp)


def _scan_doc(doc: CorpusDoc, lexicon: Lexicon, allow_bare_plural: bool = False) -> Counter:
    counts = Counter()
    for sentence in doc.sentences:
        for cand in _sentence_candidates(tokenize(sentence), lexicon, allow_bare_plural):
            counts[cand] += 1
    return counts


def extract_candidates(
    corpus,
    lexicon: Lexicon,
    min_freq: int = 1,
    allow_bare_plural: bool = False,
    workers: Optional[int] = None,
) -> list:
    """Count quantity-phraseme candidates over the corpus.

    Candidates are keyed by their lower-cased surface and sorted by descending
    frequency, then surface.  ``workers`` > 1 scans documents in parallel
    processes; the merged result is identical.
    """
    docs = list(corpus)
    if workers and workers > 1 and len(docs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_doc, docs, [lexicon] * len(docs), [allow_bare_plural] * len(docs)))
    else:
        parts = [_scan_doc(d, lexicon, allow_bare_plural) for d in docs]
    total = Counter()
    for part in parts:
        total.update(part)
    out = [
        PhrasemeCandidate(c.surface, c.determiner, c.head, c.complement, n)
        for c, n in total.items()
        if n >= min_freq
    ]
    out.sort(key=lambda c: (-c.frequency, c.surface))
    return out


def filter_by_dictionary(candidates, dictionary: Dictionary, lexicon: Optional[Lexicon] = None) -> list:
    """Keep candidates whose head noun has a type b (or both) sense."""
    out = []
    for cand in candidates:
        lemma = lexicon.lemma(cand.head) if lexicon is not None else cand.head
        for sense in dictionary.senses_for_lemma(lemma):
            if sense.cq_type in ("b", "both"):
                out.append(ConfirmedCandidate(cand, sense))
                break
    return out
