"""File-backed word vectors, document vectors, and cosine similarity.

The word-vector file is plain UTF-8 text: a header line ``<dim> <count>``
followed by one ``<word> <v1> ... <vdim>`` row per word. Document vectors
(for articles encoded elsewhere, e.g. by a contextual encoder) arrive as
JSONL rows ``{"id": ..., "vector": [...]}`` keyed by article id.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "EmbeddingTable",
    "load_table",
    "load_doc_vectors",
    "cosine",
    "doc_embedding",
]


@dataclass(frozen=True)
class EmbeddingTable:
    """Immutable word -> vector map; words are stored lowercased."""

    dim: int
    entries: dict[str, np.ndarray] = field(default_factory=dict)
    name: str = ""

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __getitem__(self, word: str) -> np.ndarray:
        return self.entries[word]

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, word: str):
        return self.entries.get(word)


def load_table(path: str | Path) -> EmbeddingTable:
    """Parse a word-vector text file; rejects bad arity and duplicate words."""
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        header = handle.readline()
        if not header.strip():
            raise ValueError(f"{path.name}: empty embedding file")
        parts = header.split()
        if len(parts) != 2:
            raise ValueError(f"{path.name}: header must be '<dim> <count>', got {header.strip()!r}")
        try:
            dim, count = int(parts[0]), int(parts[1])
        except ValueError as err:
            raise ValueError(f"{path.name}: non-integer header {header.strip()!r}") from err
        if dim <= 0:
            raise ValueError(f"{path.name}: dimension must be positive, got {dim}")

        entries: dict[str, np.ndarray] = {}
        for row, line in enumerate(handle, start=2):
            if not line.strip():
                continue
            fields = line.split()
            word = fields[0].lower()
            values = fields[1:]
            if len(values) != dim:
                raise ValueError(
                    f"{path.name}: row {row}: expected {dim} values for {word!r}, got {len(values)}"
                )
            if word in entries:
                raise ValueError(f"{path.name}: row {row}: duplicate word {word!r}")
            try:
                vector = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as err:
                raise ValueError(f"{path.name}: row {row}: non-numeric value") from err
            entries[word] = vector

    if len(entries) != count:
        raise ValueError(f"{path.name}: header promises {count} words, found {len(entries)}")
    return EmbeddingTable(dim=dim, entries=entries, name=path.stem)


def load_doc_vectors(path: str | Path, dim: int | None = None) -> dict[str, np.ndarray]:
    """Load precomputed document vectors keyed by article id."""
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise ValueError(f"{path.name}: line {lineno}: invalid JSON ({err.msg})") from err
            if "id" not in record or "vector" not in record:
                raise ValueError(f"{path.name}: line {lineno}: need 'id' and 'vector' fields")
            article_id = str(record["id"])
            if article_id in vectors:
                raise ValueError(f"{path.name}: line {lineno}: duplicate id {article_id!r}")
            vector = np.asarray(record["vector"], dtype=np.float64)
            if vector.ndim != 1 or vector.size == 0:
                raise ValueError(f"{path.name}: line {lineno}: vector must be a flat list")
            if dim is None:
                dim = vector.size
            elif vector.size != dim:
                raise ValueError(
                    f"{path.name}: line {lineno}: vector length {vector.size} != {dim}"
                )
            vectors[article_id] = vector
    if not vectors:
        raise ValueError(f"{path.name}: no document vectors found")
    return vectors


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity a.b / (|a||b|); raises on zero-norm input."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("cosine similarity is undefined for zero-norm vectors")
    return float(np.dot(a, b) / (norm_a * norm_b))


def doc_embedding(
    words: list[str],
    table: EmbeddingTable,
    article_id: str | None = None,
    doc_vectors: dict[str, np.ndarray] | None = None,
) -> np.ndarray:
    """Document vector for an article.

    When ``doc_vectors`` holds the article id, that externally computed
    vector wins. Otherwise the result is the mean of the vectors of
    in-vocabulary words, occurrences counted, which makes the default
    order-free. Raises if neither source can produce a vector.
    """
    if doc_vectors is not None and article_id is not None and article_id in doc_vectors:
        return doc_vectors[article_id]

    # Accumulate per distinct word in sorted order so the result is
    # bitwise independent of word order, not just close to it.
    total = np.zeros(table.dim, dtype=np.float64)
    hits = 0
    counts = Counter(words)
    for word in sorted(counts):
        vector = table.get(word)
        if vector is not None:
            total += counts[word] * vector
            hits += counts[word]
    if hits == 0:
        label = article_id if article_id is not None else "<unknown>"
        raise ValueError(
            f"article {label!r}: no in-vocabulary words and no external document vector"
        )
    return total / hits
