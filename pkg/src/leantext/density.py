"""Information content of views: normalized entropy scores and token counts.

Each word's significance is its relative frequency in the article's full
text, sig(w) = f_w / total. A view's score sums the surprisal
-log2(sig(w)) over its token occurrences, so repeating a frequent word
adds little and a rare word adds a lot. Words a view carries that never
occur in the body (e.g. title-only words) get f_w floored at 1 to keep
the score finite.

Token counts are tokenizer-relative: a greedy longest-match subword
tokenizer over a user-supplied vocabulary, or plain word count when no
vocabulary is given. Reports record which tokenizer produced them.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .corpus import Corpus
from .keywords import LimitedView
from .views import ViewBuilder, ViewSpec

__all__ = [
    "FullTextStats",
    "DensityRow",
    "DensityReport",
    "full_text_stats",
    "normalized_entropy",
    "SubwordTokenizer",
    "token_count",
    "density_report",
    "write_density_csv",
    "write_density_tsv",
]

_ROW_ORDER = {"fulltext": 0, "pos": 1, "keyword": 2, "ner": 3, "title": 4, "author": 5,
              "multimodal": 6}


@dataclass(frozen=True)
class FullTextStats:
    """Occurrence counts of the article's full text."""

    article_id: str
    freq: dict[str, int]
    total: int


def full_text_stats(words: Sequence[str], article_id: str = "") -> FullTextStats:
    if not words:
        raise ValueError(f"article {article_id!r}: cannot compute stats for an empty article")
    return FullTextStats(article_id=article_id, freq=dict(Counter(words)), total=len(words))


def normalized_entropy(
    view: LimitedView | Sequence[str],
    stats: FullTextStats,
    per_distinct: bool = False,
    view_local: bool = False,
) -> float:
    """Entropy score of a view against its article's full-text distribution.

    Default reading: sum surprisal over token occurrences under full-text
    frequencies. ``per_distinct`` counts each distinct word once;
    ``view_local`` takes frequencies from the view itself instead of the
    full text. The alternates exist for sensitivity reporting only.
    """
    words = view.words if isinstance(view, LimitedView) else tuple(view)
    if not words:
        return 0.0

    if view_local:
        freq = Counter(words)
        total = len(words)
    else:
        freq = stats.freq
        total = stats.total

    iterate = set(words) if per_distinct else words
    score = 0.0
    for word in iterate:
        f = freq.get(word, 0)
        sig = max(f, 1) / total
        score += -math.log2(sig)
    return score


class SubwordTokenizer:
    """Greedy longest-match segmentation over a fixed vocabulary.

    Each word is segmented independently (segments never cross spaces):
    at every position the longest vocabulary entry prefixing the rest of
    the word is consumed; when nothing matches, one character is consumed
    as an unknown segment.
    """

    def __init__(self, vocab: Sequence[str], name: str = "subword"):
        self.name = name
        self.vocab = frozenset(v for v in vocab if v)
        if not self.vocab:
            raise ValueError("tokenizer vocabulary is empty")
        self.max_len = max(len(v) for v in self.vocab)

    @classmethod
    def from_file(cls, path: str | Path) -> "SubwordTokenizer":
        path = Path(path)
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as err:
            raise ValueError(f"cannot read tokenizer vocabulary {path}: {err}") from err
        return cls([line.strip() for line in lines if line.strip()], name=path.stem)

    def segment(self, word: str) -> list[str]:
        pieces = []
        i = 0
        while i < len(word):
            match = None
            for length in range(min(self.max_len, len(word) - i), 0, -1):
                piece = word[i : i + length]
                if piece in self.vocab:
                    match = piece
                    break
            if match is None:
                match = word[i]
            pieces.append(match)
            i += len(match)
        return pieces

    def count(self, words: Sequence[str]) -> int:
        return sum(len(self.segment(word)) for word in words)


def token_count(view: LimitedView | Sequence[str], tokenizer: SubwordTokenizer | None = None) -> int:
    """Subword token count of a view; plain word count without a tokenizer."""
    words = view.words if isinstance(view, LimitedView) else tuple(view)
    if not words:
        return 0
    if tokenizer is None:
        return len(words)
    return tokenizer.count(words)


@dataclass(frozen=True)
class DensityRow:
    kind: str
    k: float | None
    mean_entropy: float
    mean_tokens: float
    n_articles: int
    label: str


@dataclass(frozen=True)
class DensityReport:
    corpus: str
    tokenizer: str
    rows: tuple[DensityRow, ...]
    warnings: tuple[str, ...] = ()


def density_report(
    corpus: Corpus,
    view_specs: Sequence[ViewSpec],
    builder: ViewBuilder,
    tokenizer: SubwordTokenizer | None = None,
    per_distinct: bool = False,
    view_local: bool = False,
) -> DensityReport:
    """Mean entropy score and mean token count per view spec over a corpus.

    Rows come out in the fixed layout full text, POS (k descending),
    keywords (k descending), entities, title, author. Specs that name
    metadata the corpus does not carry are skipped with a warning.
    """
    warnings = []
    usable: list[ViewSpec] = []
    for spec in view_specs:
        if spec.kind in ("title", "author") and spec.kind not in corpus.metadata_fields:
            warnings.append(f"skipping {spec.kind}: not present on every article of {corpus.name}")
            continue
        usable.append(spec)
    usable.sort(key=lambda s: (_ROW_ORDER.get(s.kind, 99), -(s.k if s.k is not None else 0.0)))

    stats = {a.id: full_text_stats(a.words, article_id=a.id) for a in corpus.articles}
    rows = []
    for spec in usable:
        entropy_sum = 0.0
        token_sum = 0
        for article in corpus.articles:
            view = builder.build(article, spec)
            entropy_sum += normalized_entropy(
                view, stats[article.id], per_distinct=per_distinct, view_local=view_local
            )
            token_sum += token_count(view, tokenizer)
        n = len(corpus.articles)
        rows.append(
            DensityRow(
                kind=spec.kind,
                k=spec.k if spec.kind in ("keyword", "pos") else None,
                mean_entropy=entropy_sum / n,
                mean_tokens=token_sum / n,
                n_articles=n,
                label=spec.label,
            )
        )

    return DensityReport(
        corpus=corpus.name,
        tokenizer=tokenizer.name if tokenizer is not None else "whitespace",
        rows=tuple(rows),
        warnings=tuple(warnings),
    )


def write_density_csv(report: DensityReport, path: str | Path) -> None:
    lines = ["kind,k,mean_entropy,mean_tokens,n_articles"]
    for row in report.rows:
        k = f"{row.k:.2f}" if row.k is not None else ""
        lines.append(
            f"{row.kind},{k},{row.mean_entropy:.6f},{row.mean_tokens:.6f},{row.n_articles}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_density_tsv(report: DensityReport, path: str | Path) -> None:
    """Bar-chart-ready TSV: label, mean entropy, mean tokens."""
    lines = [
        f"# corpus={report.corpus} tokenizer={report.tokenizer}",
        "# label\tmean_entropy\tmean_tokens",
    ]
    for row in report.rows:
        lines.append(f"{row.label}\t{row.mean_entropy:.6f}\t{row.mean_tokens:.6f}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
