"""Metadata views and multimodal concatenation.

Concatenation joins two or more views of the same article in the given
order, inserting one reserved separator token between segments so the
modality boundary stays recoverable. Downstream featurization is free to
ignore the separator.
"""

from __future__ import annotations

from .corpus import Article, normalize, word_tokenize
from .keywords import LimitedView

__all__ = ["SEPARATOR", "metadata_view", "concat_views"]

SEPARATOR = "⟨sep⟩"


def metadata_view(article: Article, field: str) -> LimitedView:
    """Title or author of an article as a view; empty and flagged when absent."""
    if field not in ("title", "author"):
        raise ValueError(f"metadata field must be title or author, got {field!r}")
    value = getattr(article, field)
    if value is None:
        return LimitedView(article_id=article.id, kind=field, words=(), flags=("missing",))
    return LimitedView(
        article_id=article.id,
        kind=field,
        words=tuple(word_tokenize(normalize(value))),
    )


def concat_views(views: list[LimitedView], separator: str | None = SEPARATOR) -> LimitedView:
    """Ordered concatenation of two or more same-article views.

    ``separator=None`` drops the boundary token (for ablations); the
    default keeps one separator between consecutive segments.
    """
    if len(views) < 2:
        raise ValueError("concatenation needs at least two views")
    ids = {v.article_id for v in views}
    if len(ids) != 1:
        raise ValueError(f"cannot concatenate views from different articles: {sorted(ids)}")

    words: list[str] = []
    for i, view in enumerate(views):
        if i > 0 and separator is not None:
            words.append(separator)
        words.extend(view.words)

    provenance = []
    for view in views:
        if view.kind == "multimodal":
            provenance.extend(view.provenance)
        else:
            provenance.append(view.kind)

    k_values = [v.k_used for v in views if v.k_used is not None]
    return LimitedView(
        article_id=views[0].article_id,
        kind="multimodal",
        words=tuple(words),
        k_used=k_values[0] if k_values else None,
        provenance=tuple(provenance),
    )
