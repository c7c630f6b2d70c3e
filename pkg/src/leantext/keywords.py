"""Keyword views: cosine-filtered candidates reranked greedily for relevance
with a penalty on redundancy against what was already picked.

The candidate set keeps the distinct in-vocabulary words whose cosine
similarity with the document vector is strictly positive. Selection then
runs a greedy loop: at each step the remaining candidate maximizing

    diversity * sim(doc, word) - (1 - diversity) * max sim(word, picked)

joins the result, until the word budget floor(article_len * k) is filled
or candidates run out. The max-over-picked term is 0 on the first step.
Ties break toward the lexicographically smallest word so extraction is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .corpus import proportional_count
from .embedding import EmbeddingTable
from .stopwords import STOPWORDS

__all__ = ["KeywordConfig", "LimitedView", "candidates", "mmr_select"]

VIEW_KINDS = ("keyword", "pos", "ner", "title", "author", "multimodal", "fulltext")


@dataclass(frozen=True)
class KeywordConfig:
    """k = target fraction of the article's word count; diversity weight in [0, 1]."""

    k: float = 0.10
    diversity: float = 0.5
    remove_stopwords: bool = True

    def __post_init__(self):
        if not 0 < self.k <= 1:
            raise ValueError(f"k must be in (0, 1], got {self.k}")
        if not 0 <= self.diversity <= 1:
            raise ValueError(f"diversity must be in [0, 1], got {self.diversity}")


@dataclass(frozen=True)
class LimitedView:
    """An ordered word sequence extracted from one article."""

    article_id: str
    kind: str
    words: tuple[str, ...]
    k_used: float | None = None
    provenance: tuple[str, ...] = ()
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in VIEW_KINDS:
            raise ValueError(f"unknown view kind {self.kind!r}")
        if self.kind == "multimodal" and len(self.provenance) < 2:
            raise ValueError("multimodal views need at least two source kinds")

    def __len__(self) -> int:
        return len(self.words)

    def to_record(self) -> dict:
        rec = {"id": self.article_id, "kind": self.kind, "k": self.k_used, "words": list(self.words)}
        if self.provenance:
            rec["provenance"] = list(self.provenance)
        if self.flags:
            rec["flags"] = list(self.flags)
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "LimitedView":
        return cls(
            article_id=str(rec["id"]),
            kind=rec["kind"],
            words=tuple(rec["words"]),
            k_used=rec.get("k"),
            provenance=tuple(rec.get("provenance", ())),
            flags=tuple(rec.get("flags", ())),
        )


def candidates(
    words: list[str],
    table: EmbeddingTable,
    doc: np.ndarray,
    remove_stopwords: bool = True,
) -> set[str]:
    """Distinct in-vocabulary words with positive cosine similarity to the document."""
    doc = np.asarray(doc, dtype=np.float64)
    doc_norm = float(np.linalg.norm(doc))
    if doc_norm == 0.0:
        raise ValueError("document vector has zero norm")

    selected = set()
    for word in set(words):
        if remove_stopwords and word in STOPWORDS:
            continue
        vector = table.get(word)
        if vector is None:
            continue
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            continue
        if float(np.dot(vector, doc)) / (norm * doc_norm) > 0.0:
            selected.add(word)
    return selected


def mmr_rank(
    doc: np.ndarray,
    candidate_words: set[str],
    budget: int,
    diversity: float,
    table: EmbeddingTable,
) -> list[str]:
    """Greedy selection order for an explicit budget (helper behind mmr_select)."""
    if budget <= 0 or not candidate_words:
        return []

    # Lexicographic candidate order makes argmax ties resolve to the
    # smallest word (np.argmax returns the first maximum).
    ordered = sorted(candidate_words)
    matrix = np.stack([table[w] for w in ordered]).astype(np.float64)
    norms = np.linalg.norm(matrix, axis=1)
    doc = np.asarray(doc, dtype=np.float64)
    doc_norm = float(np.linalg.norm(doc))
    relevance = (matrix @ doc) / (norms * doc_norm)
    pairwise = (matrix @ matrix.T) / np.outer(norms, norms)

    n = len(ordered)
    picked: list[int] = []
    remaining = np.ones(n, dtype=bool)
    # The redundancy term is the max similarity to the picked set, which
    # can be negative; it is 0 only while nothing has been picked.
    max_sim_to_picked: np.ndarray | None = None
    while len(picked) < budget and remaining.any():
        redundancy = max_sim_to_picked if picked else np.zeros(n, dtype=np.float64)
        scores = diversity * relevance - (1.0 - diversity) * redundancy
        scores = np.where(remaining, scores, -np.inf)
        best = int(np.argmax(scores))
        picked.append(best)
        remaining[best] = False
        if max_sim_to_picked is None:
            max_sim_to_picked = pairwise[:, best].copy()
        else:
            max_sim_to_picked = np.maximum(max_sim_to_picked, pairwise[:, best])
    return [ordered[i] for i in picked]


def mmr_select(
    doc: np.ndarray,
    candidate_words: set[str],
    article_len: int,
    config: KeywordConfig,
    table: EmbeddingTable,
    article_id: str = "",
) -> LimitedView:
    """Build the keyword view for one article.

    Returns exactly min(floor(article_len * k), len(candidates)) words in
    selection order. A zero budget yields an empty view flagged
    ``zero-budget`` rather than an error.
    """
    budget = proportional_count(article_len, config.k)
    flags = ()
    if budget == 0:
        flags = ("zero-budget",)
    selected = mmr_rank(doc, candidate_words, budget, config.diversity, table)
    return LimitedView(
        article_id=article_id,
        kind="keyword",
        words=tuple(selected),
        k_used=config.k,
        flags=flags,
    )
