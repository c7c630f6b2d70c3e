"""Minimal corpus reading compatible with the leantext file contract.

The exporter deliberately does not import leantext; it reimplements the
shared interface instead: JSONL records with id/text/title/author/label
(ids default to the zero-based index), CSV with a header row and an
optional canonical=column mapping file, lowercase normalization with
newline flattening, and whitespace tokenization with edge punctuation
stripped.
"""

from __future__ import annotations

import json
import string
from csv import DictReader
from dataclasses import dataclass
from pathlib import Path

_EDGE_PUNCT = string.punctuation + "“”‘’«»–—…"


def normalize(raw: str) -> str:
    return " ".join(raw.lower().split())


def word_tokenize(text: str) -> list[str]:
    words = []
    for token in text.split():
        token = token.strip(_EDGE_PUNCT)
        if token:
            words.append(token)
    return words


@dataclass(frozen=True)
class Document:
    id: str
    words: tuple[str, ...]


def load_field_mapping(path: str | Path) -> dict[str, str]:
    mapping = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        mapping[key.strip()] = value.strip()
    return mapping


def load_documents(
    path: str | Path,
    format: str = "jsonl",
    mapping: dict[str, str] | None = None,
) -> list[Document]:
    path = Path(path)
    if format == "jsonl":
        records = _read_jsonl(path)
    elif format == "csv":
        records = _read_csv(path, mapping or {})
    else:
        raise ValueError(f"unknown corpus format {format!r}")

    documents = []
    seen = set()
    for index, (where, record) in enumerate(records):
        text = record.get("text")
        if text is None or not str(text).strip():
            raise ValueError(f"{where}: missing or empty text field")
        doc_id = record.get("id")
        doc_id = str(index) if doc_id is None or str(doc_id) == "" else str(doc_id)
        if doc_id in seen:
            raise ValueError(f"{where}: duplicate article id {doc_id!r}")
        seen.add(doc_id)
        documents.append(Document(id=doc_id, words=tuple(word_tokenize(normalize(str(text))))))
    if not documents:
        raise ValueError(f"{path}: corpus is empty")
    return documents


def _read_jsonl(path: Path):
    out = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            where = f"{path.name}: line {lineno}"
            try:
                record = json.loads(line)
            except json.JSONDecodeError as err:
                raise ValueError(f"{where}: invalid JSON ({err.msg})") from err
            out.append((where, record))
    return out


def _read_csv(path: Path, mapping: dict[str, str]):
    out = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path.name}: missing CSV header row")
        text_col = mapping.get("text", "text")
        id_col = mapping.get("id", "id")
        for recno, row in enumerate(reader, start=1):
            record = {"text": row.get(text_col)}
            if id_col in row:
                record["id"] = row[id_col]
            out.append((f"{path.name}: record {recno}", record))
    return out
