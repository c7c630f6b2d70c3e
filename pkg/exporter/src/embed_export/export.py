"""Encode a corpus with a transformer and write leantext embedding files.

Per-word vectors are contextual: every occurrence of a word contributes
the mean of its subword hidden states, and the written vector is the mean
over all occurrences in the corpus. Document vectors pool the hidden
states of one whole article (mean over non-special tokens, or the first
token). Output formats match the core exactly: a ``<dim> <count>`` header
plus one row per word, and a JSONL file of ``{"id", "vector"}`` rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from .corpusio import Document, load_documents, load_field_mapping

POOLING_MODES = ("mean", "first-token")


@dataclass(frozen=True)
class ExportSpec:
    corpus: str
    encoder: str
    word_vectors: str
    doc_vectors: str
    pooling: str = "mean"
    max_length: int = 256
    batch_size: int = 8
    format: str = "jsonl"
    mapping: str | None = None

    def __post_init__(self):
        if self.pooling not in POOLING_MODES:
            raise ValueError(f"pooling must be one of {POOLING_MODES}, got {self.pooling!r}")
        if self.max_length < 3 or self.batch_size < 1:
            raise ValueError("max_length must be >= 3 and batch_size >= 1")


def _load_encoder(encoder_id: str):
    from transformers import AutoModel, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(encoder_id)
        model = AutoModel.from_pretrained(encoder_id)
    except Exception as err:
        raise ValueError(f"cannot load encoder {encoder_id!r}: {err}") from err
    model.eval()
    return tokenizer, model


def _batches(items, size):
    for start in range(0, len(items), size):
        yield items[start : start + size]


def export(spec: ExportSpec) -> tuple[Path, Path]:
    """Run the export; returns the two written paths."""
    mapping = load_field_mapping(spec.mapping) if spec.mapping else None
    documents = load_documents(spec.corpus, format=spec.format, mapping=mapping)
    tokenizer, model = _load_encoder(spec.encoder)

    word_sums: dict[str, np.ndarray] = {}
    word_counts: dict[str, int] = {}
    doc_rows: list[tuple[str, np.ndarray]] = []

    for batch in _batches(documents, spec.batch_size):
        doc_vectors, batch_word_vectors = _encode_batch(batch, tokenizer, model, spec)
        for document, vector in zip(batch, doc_vectors):
            doc_rows.append((document.id, vector))
        for word, vectors in batch_word_vectors.items():
            for vector in vectors:
                if word not in word_sums:
                    word_sums[word] = vector.copy()
                    word_counts[word] = 1
                else:
                    word_sums[word] += vector
                    word_counts[word] += 1

    dim = int(model.config.hidden_size)
    word_path = Path(spec.word_vectors)
    doc_path = Path(spec.doc_vectors)
    _write_word_vectors(word_path, word_sums, word_counts, dim)
    _write_doc_vectors(doc_path, doc_rows)
    return word_path, doc_path


def _encode_batch(batch: list[Document], tokenizer, model, spec: ExportSpec):
    encoded = tokenizer(
        [list(d.words) for d in batch],
        is_split_into_words=True,
        padding=True,
        return_tensors="pt",
    )
    n_tokens = encoded["input_ids"].shape[1]
    if n_tokens > spec.max_length:
        longest = max(batch, key=lambda d: len(d.words))
        raise ValueError(
            f"article {longest.id!r} encodes to {n_tokens} tokens, over the "
            f"max length {spec.max_length}; raise --max-length or shorten the input"
        )

    with torch.no_grad():
        hidden = model(**encoded).last_hidden_state.to(torch.float64).numpy()

    doc_vectors = []
    word_vectors: dict[str, list[np.ndarray]] = {}
    for i, document in enumerate(batch):
        word_ids = encoded.word_ids(i)
        content = [t for t, w in enumerate(word_ids) if w is not None]
        if spec.pooling == "first-token":
            doc_vectors.append(hidden[i, 0].copy())
        else:
            if not content:
                raise ValueError(f"article {document.id!r} produced no content tokens")
            doc_vectors.append(hidden[i, content].mean(axis=0))

        spans: dict[int, list[int]] = {}
        for t in content:
            spans.setdefault(word_ids[t], []).append(t)
        for word_index, token_positions in spans.items():
            word = document.words[word_index]
            vector = hidden[i, token_positions].mean(axis=0)
            word_vectors.setdefault(word, []).append(vector)
    return doc_vectors, word_vectors


def _write_word_vectors(path: Path, sums, counts, dim: int) -> None:
    words = sorted(sums)
    lines = [f"{dim} {len(words)}"]
    for word in words:
        vector = sums[word] / counts[word]
        lines.append(word + " " + " ".join(f"{v:.6f}" for v in vector))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_doc_vectors(path: Path, rows) -> None:
    import json

    with open(path, "w", encoding="utf-8") as handle:
        for doc_id, vector in rows:
            record = {"id": doc_id, "vector": [round(float(v), 6) for v in vector]}
            handle.write(json.dumps(record) + "\n")
