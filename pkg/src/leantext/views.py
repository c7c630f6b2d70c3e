"""One entry point for building any view of an article.

Density reports, training, and the CLI all need "give me view X of
article Y" with shared resources (embedding table, external document
vectors, tagger backend). ViewBuilder owns those resources; ViewSpec
names what to build.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .compose import concat_views, metadata_view
from .corpus import Article, Corpus
from .embedding import EmbeddingTable, doc_embedding
from .keywords import KeywordConfig, LimitedView, candidates, mmr_select
from .tagging import BuiltinTagger, ExternalAnnotations, ner_extract, pos_select, pos_tag

__all__ = ["ViewSpec", "ViewBuilder", "parse_view_spec", "write_views_jsonl", "read_views_jsonl"]

_SIMPLE_KINDS = ("fulltext", "keyword", "pos", "ner", "title", "author")
_K_KINDS = ("keyword", "pos")


@dataclass(frozen=True)
class ViewSpec:
    """What to extract: a kind, an optional proportion k, multimodal parts."""

    kind: str
    k: float | None = None
    parts: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == "multimodal":
            if len(self.parts) < 2:
                raise ValueError("multimodal spec needs at least two parts")
            for part in self.parts:
                if part not in _SIMPLE_KINDS or part == "fulltext":
                    raise ValueError(f"invalid multimodal part {part!r}")
        elif self.kind not in _SIMPLE_KINDS:
            raise ValueError(f"unknown view kind {self.kind!r}")
        needs_k = self.kind in _K_KINDS or any(p in _K_KINDS for p in self.parts)
        if needs_k and self.k is None:
            raise ValueError(f"view {self.label!r} needs a proportion k")

    @property
    def label(self) -> str:
        base = "+".join(self.parts) if self.kind == "multimodal" else self.kind
        if self.k is not None and (self.kind in _K_KINDS or any(p in _K_KINDS for p in self.parts)):
            return f"{base}@{self.k:.2f}"
        return base


def parse_view_spec(text: str, k: float | None = None) -> ViewSpec:
    """Parse 'keyword', 'keyword+title', 'pos', ... into a ViewSpec."""
    text = text.strip().lower()
    if "+" in text:
        parts = tuple(p.strip() for p in text.split("+"))
        return ViewSpec(kind="multimodal", k=k, parts=parts)
    return ViewSpec(kind=text, k=k)


class ViewBuilder:
    """Builds views against a fixed set of resources."""

    def __init__(
        self,
        table: EmbeddingTable | None = None,
        doc_vectors: dict[str, np.ndarray] | None = None,
        tagger: BuiltinTagger | ExternalAnnotations | None = None,
        diversity: float = 0.5,
        remove_stopwords: bool = True,
    ):
        self.table = table
        self.doc_vectors = doc_vectors
        self.tagger = tagger if tagger is not None else BuiltinTagger()
        self.diversity = diversity
        self.remove_stopwords = remove_stopwords

    def build(self, article: Article, spec: ViewSpec) -> LimitedView:
        if spec.kind == "multimodal":
            parts = [self.build(article, ViewSpec(kind=p, k=spec.k)) for p in spec.parts]
            return concat_views(parts)
        if spec.kind == "fulltext":
            return LimitedView(article_id=article.id, kind="fulltext", words=tuple(article.words))
        if spec.kind == "keyword":
            return self._keyword_view(article, spec.k)
        if spec.kind == "pos":
            tagged = pos_tag(article.words, self.tagger, article_id=article.id)
            return pos_select(tagged, len(article.words), spec.k, article_id=article.id)
        if spec.kind == "ner":
            return ner_extract(article, self.tagger)
        return metadata_view(article, spec.kind)

    def _keyword_view(self, article: Article, k: float) -> LimitedView:
        if self.table is None:
            raise ValueError("keyword views need an embedding table")
        doc = doc_embedding(
            article.words, self.table, article_id=article.id, doc_vectors=self.doc_vectors
        )
        pool = candidates(article.words, self.table, doc, remove_stopwords=self.remove_stopwords)
        config = KeywordConfig(k=k, diversity=self.diversity,
                               remove_stopwords=self.remove_stopwords)
        return mmr_select(doc, pool, len(article.words), config, self.table,
                          article_id=article.id)

    def feasible_max_k(self, corpus: Corpus, kind: str, grid_step: float = 0.05) -> float:
        """Largest grid k the corpus can actually fill for keyword/pos views.

        Measured as the mean fraction of the article budget the candidate
        pool (keywords) or adjective/adverb tokens (pos) can supply,
        rounded down to the grid.
        """
        if kind not in _K_KINDS:
            raise ValueError(f"feasible k only applies to keyword/pos, got {kind!r}")
        fractions = []
        for article in corpus.articles:
            n = len(article.words)
            if n == 0:
                continue
            if kind == "keyword":
                doc = doc_embedding(
                    article.words, self.table, article_id=article.id,
                    doc_vectors=self.doc_vectors,
                )
                supply = len(candidates(article.words, self.table, doc,
                                        remove_stopwords=self.remove_stopwords))
            else:
                tagged = pos_tag(article.words, self.tagger, article_id=article.id)
                supply = sum(1 for t in tagged if t.tag in
                             ("JJ", "JJR", "JJS", "RB", "RBR", "RBS"))
            fractions.append(supply / n)
        if not fractions:
            raise ValueError("corpus has no usable articles")
        mean_fraction = sum(fractions) / len(fractions)
        steps = int(mean_fraction / grid_step)
        return max(grid_step, round(steps * grid_step, 10))


def write_views_jsonl(views: list[LimitedView], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for view in views:
            handle.write(json.dumps(view.to_record(), ensure_ascii=False) + "\n")


def read_views_jsonl(path: str | Path) -> list[LimitedView]:
    views = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                views.append(LimitedView.from_record(json.loads(line)))
    return views
