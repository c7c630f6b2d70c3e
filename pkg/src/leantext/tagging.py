"""Part-of-speech views and named-entity views.

Two interchangeable backends:

* builtin: a deterministic rule tagger (closed-class lexicon, suffix
  heuristics, adjective list) plus entity detection from a gazetteer and
  capitalization patterns on the raw, pre-normalization text. Useful for
  a self-contained pipeline; not a substitute for a trained tagger.
* external: gold annotations read from a JSONL file, one record per
  article: {"id", "pos": [[word, tag], ...], "entities": [[start, end], ...]}
  where entity spans are half-open indices into the article's normalized
  word sequence.

POS views keep adjective/adverb tokens (JJ/JJR/JJS/RB/RBR/RBS) in article
order, truncated to the word budget floor(article_len * k). Entity views
are never truncated.
"""

from __future__ import annotations

import json
import re
import string
from dataclasses import dataclass
from pathlib import Path

from .corpus import Article, proportional_count, word_tokenize
from .keywords import LimitedView
from .lexicon import ADJECTIVES, CLOSED_CLASS, LY_EXCEPTIONS
from .stopwords import STOPWORDS

__all__ = [
    "TaggedToken",
    "BuiltinTagger",
    "ExternalAnnotations",
    "pos_tag",
    "pos_select",
    "ner_extract",
    "load_gazetteer",
]

POS_KEEP_TAGS = frozenset(("JJ", "JJR", "JJS", "RB", "RBR", "RBS"))

_NUMBER_RE = re.compile(r"^\d+([.,:/-]\d+)*%?$")
_EDGE_PUNCT = string.punctuation + "“”‘’«»–—…"
_SENTENCE_END = (".", "!", "?", "…")


@dataclass(frozen=True)
class TaggedToken:
    word: str
    tag: str
    index: int


def load_gazetteer(path: str | Path) -> tuple[tuple[str, ...], ...]:
    """Read one multi-word entity per line; entries are lowercased word tuples."""
    entries = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        words = word_tokenize(line.strip().lower())
        if words:
            entries.append(tuple(words))
    return tuple(entries)


class BuiltinTagger:
    """Rule tagger: lexicon lookup, then suffix heuristics, then NN."""

    name = "builtin-lexicon"
    kind = "builtin-lexicon"

    def __init__(self, gazetteer: tuple[tuple[str, ...], ...] = ()):
        self.gazetteer = tuple(gazetteer)
        self._gazetteer_words = {w for entry in self.gazetteer for w in entry}
        # Longest match first so "world health organization" beats "world health".
        self._gazetteer_by_first: dict[str, list[tuple[str, ...]]] = {}
        for entry in sorted(self.gazetteer, key=len, reverse=True):
            self._gazetteer_by_first.setdefault(entry[0], []).append(entry)

    def tag_word(self, word: str) -> str:
        if word in CLOSED_CLASS:
            return CLOSED_CLASS[word]
        if _NUMBER_RE.match(word):
            return "CD"
        if word in LY_EXCEPTIONS:
            return "NN"
        if word.endswith("ly") and len(word) > 3:
            return "RB"
        if word.endswith("est") and len(word) >= 5:
            return "JJS"
        if word.endswith("er") and len(word) >= 5 and self._adjective_stem(word[:-2]):
            return "JJR"
        if word in ADJECTIVES:
            return "JJ"
        return "NN"

    @staticmethod
    def _adjective_stem(stem: str) -> bool:
        forms = {stem, stem + "e"}
        if len(stem) >= 2 and stem[-1] == stem[-2]:
            forms.add(stem[:-1])  # bigger -> big
        if stem.endswith("i"):
            forms.add(stem[:-1] + "y")  # happier -> happy
        return any(form in ADJECTIVES for form in forms)

    def tag(self, words: list[str]) -> list[TaggedToken]:
        return [TaggedToken(word=w, tag=self.tag_word(w), index=i) for i, w in enumerate(words)]

    def entities(self, raw_text: str) -> list[str]:
        """Entity words, in order, from gazetteer matches and capitalized runs."""
        raw_tokens = raw_text.split()
        cores = [tok.strip(_EDGE_PUNCT) for tok in raw_tokens]
        norm = [core.lower() for core in cores]
        sentence_start = _sentence_starts(raw_tokens, cores)

        n = len(raw_tokens)
        covered = [False] * n
        spans: list[tuple[int, int]] = []

        # Gazetteer pass: longest match, left to right.
        i = 0
        while i < n:
            match_len = 0
            for entry in self._gazetteer_by_first.get(norm[i], ()):
                if tuple(norm[i : i + len(entry)]) == entry:
                    match_len = len(entry)
                    break
            if match_len:
                spans.append((i, i + match_len))
                for j in range(i, i + match_len):
                    covered[j] = True
                i += match_len
            else:
                i += 1

        # Capitalization pass over uncovered positions.
        i = 0
        while i < n:
            if covered[i] or not _capitalized(cores[i]):
                i += 1
                continue
            j = i
            while j < n and not covered[j] and _capitalized(cores[j]):
                j += 1
            start, end = i, j
            # A sentence-opening function word is capitalization, not
            # naming; all-caps acronyms are exempt.
            while (
                start < end
                and sentence_start[start]
                and norm[start] in STOPWORDS
                and not _acronym(cores[start])
            ):
                start += 1
            if start < end and self._keep_run(start, end, cores, norm, sentence_start):
                spans.append((start, end))
            i = j

        spans.sort()
        words: list[str] = []
        for start, end in spans:
            for j in range(start, end):
                if norm[j]:
                    words.append(norm[j])
        return words

    def _keep_run(self, start, end, cores, norm, sentence_start) -> bool:
        if end - start > 1:
            return True
        core = cores[start]
        if core.lower() == "i":
            return False
        if not sentence_start[start]:
            return True
        # Sentence-initial singletons are kept only when clearly names.
        return _acronym(core) or norm[start] in self._gazetteer_words


def _capitalized(core: str) -> bool:
    return bool(core) and core[0].isalpha() and core[0].isupper()


def _acronym(core: str) -> bool:
    letters = [c for c in core if c.isalpha()]
    return len(letters) >= 2 and all(c.isupper() for c in letters)


def _sentence_starts(raw_tokens: list[str], cores: list[str]) -> list[bool]:
    starts = [False] * len(raw_tokens)
    if raw_tokens:
        starts[0] = True
    for i in range(1, len(raw_tokens)):
        prev = raw_tokens[i - 1].rstrip("\"'”’)]")
        if prev.endswith(_SENTENCE_END):
            starts[i] = True
    return starts


class ExternalAnnotations:
    """Gold POS tags and entity spans read from an annotation JSONL file."""

    name = "external-annotations"
    kind = "external-annotations"

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._pos: dict[str, list[tuple[str, str]]] = {}
        self._entities: dict[str, list[tuple[int, int]]] = {}
        with open(self.path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as err:
                    raise ValueError(
                        f"{self.path.name}: line {lineno}: invalid JSON ({err.msg})"
                    ) from err
                article_id = str(rec["id"])
                self._pos[article_id] = [(str(w), str(t)) for w, t in rec.get("pos", [])]
                self._entities[article_id] = [
                    (int(s), int(e)) for s, e in rec.get("entities", [])
                ]

    def pos(self, article_id: str) -> list[tuple[str, str]]:
        if article_id not in self._pos:
            raise KeyError(f"no annotations for article {article_id!r} in {self.path.name}")
        return self._pos[article_id]

    def entity_spans(self, article_id: str) -> list[tuple[int, int]]:
        if article_id not in self._entities:
            raise KeyError(f"no annotations for article {article_id!r} in {self.path.name}")
        return self._entities[article_id]


def pos_tag(
    words: list[str],
    backend: BuiltinTagger | ExternalAnnotations,
    article_id: str | None = None,
) -> list[TaggedToken]:
    """One tag per word, order preserved."""
    if isinstance(backend, ExternalAnnotations):
        if article_id is None:
            raise ValueError("external annotations need an article id")
        pairs = backend.pos(article_id)
        return [TaggedToken(word=w, tag=t, index=i) for i, (w, t) in enumerate(pairs)]
    return backend.tag(words)


def pos_select(
    tagged: list[TaggedToken],
    article_len: int,
    k: float,
    article_id: str = "",
) -> LimitedView:
    """Adjective/adverb tokens in article order, truncated to floor(article_len * k).

    The budget counts token occurrences, so a repeated adjective spends
    the budget once per appearance.
    """
    if not 0 < k <= 1:
        raise ValueError(f"k must be in (0, 1], got {k}")
    budget = proportional_count(article_len, k)
    kept = [t.word for t in tagged if t.tag in POS_KEEP_TAGS]
    return LimitedView(
        article_id=article_id,
        kind="pos",
        words=tuple(kept[:budget]),
        k_used=k,
    )


def ner_extract(
    article: Article,
    backend: BuiltinTagger | ExternalAnnotations,
) -> LimitedView:
    """All named-entity words of an article, flattened in order, never truncated.

    The builtin backend reads the raw text (capitalization carries the
    signal) but emits normalized words so entity views compose with the
    other kinds.
    """
    if isinstance(backend, ExternalAnnotations):
        words = article.words
        flat = []
        for start, end in sorted(backend.entity_spans(article.id)):
            if not 0 <= start <= end <= len(words):
                raise ValueError(
                    f"article {article.id!r}: entity span [{start}, {end}) outside "
                    f"0..{len(words)}"
                )
            flat.extend(words[start:end])
        return LimitedView(article_id=article.id, kind="ner", words=tuple(flat))

    raw = article.raw_text or article.text
    return LimitedView(article_id=article.id, kind="ner", words=tuple(backend.entities(raw)))
