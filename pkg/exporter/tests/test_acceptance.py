"""Acceptance: exported files round-trip through the core leantext loaders."""

import json

from embed_export.export import ExportSpec, export

from leantext.embedding import cosine, load_doc_vectors, load_table


def test_export_round_trip(tiny_corpus, tiny_encoder, tmp_path):
    spec = ExportSpec(
        corpus=str(tiny_corpus),
        encoder=str(tiny_encoder),
        word_vectors=str(tmp_path / "words.txt"),
        doc_vectors=str(tmp_path / "docs.jsonl"),
        max_length=64,
    )
    word_path, doc_path = export(spec)

    table = load_table(word_path)
    doc_vectors = load_doc_vectors(doc_path, dim=table.dim)

    corpus_size = sum(1 for line in open(spec.corpus, encoding="utf-8") if line.strip())
    assert len(doc_vectors) == corpus_size

    for word in table.entries:
        assert word == word.lower()
        assert abs(cosine(table[word], table[word]) - 1.0) <= 1e-6
    for vector in doc_vectors.values():
        assert vector.size == table.dim

    print(f"PASS export-round-trip ({len(table)} words, {len(doc_vectors)} documents, "
          f"dim {table.dim})")
