"""Loading, normalizing, and splitting labeled news corpora.

A corpus is an ordered list of articles, each carrying a body text, an
optional title and author, and a binary label (1 = real, 0 = fake).
Bodies are normalized on load (lowercased, newlines flattened, whitespace
collapsed); the raw text is kept alongside because entity extraction
needs the original capitalization.
"""

from __future__ import annotations

import json
import math
import random
import string
from csv import DictReader
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

__all__ = [
    "Article",
    "Corpus",
    "SplitSpec",
    "normalize",
    "word_tokenize",
    "load_corpus",
    "load_field_mapping",
    "split",
    "split_by_assignment",
    "write_split_files",
]

CANONICAL_FIELDS = ("id", "text", "title", "author", "label", "split")
SPLIT_NAMES = ("train", "val", "test")

# Characters stripped from token edges. Interior punctuation (hyphens,
# abbreviation dots) is deliberately retained.
_EDGE_PUNCT = string.punctuation + "“”‘’«»–—…"


def normalize(raw: str) -> str:
    """Lowercase, flatten newlines to spaces, and collapse whitespace runs."""
    return " ".join(raw.lower().split())


def word_tokenize(text: str) -> list[str]:
    """Split normalized text into words.

    Splits on whitespace and strips leading/trailing punctuation from each
    token; tokens that are pure punctuation are dropped. Duplicates and
    interior punctuation are preserved, so ``len(result)`` is the word
    count used for every proportional budget downstream.
    """
    words = []
    for token in text.split():
        token = token.strip(_EDGE_PUNCT)
        if token:
            words.append(token)
    return words


@dataclass(frozen=True)
class Article:
    """One news item. ``text`` is the normalized body; ``raw_text`` the original."""

    id: str
    text: str
    label: int
    title: str | None = None
    author: str | None = None
    raw_text: str = ""
    split: str | None = None

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"article {self.id!r}: label must be 0 or 1, got {self.label!r}")

    @cached_property
    def words(self) -> list[str]:
        return word_tokenize(self.text)

    def to_record(self) -> dict:
        rec = {"id": self.id, "text": self.raw_text or self.text, "label": self.label}
        if self.title is not None:
            rec["title"] = self.title
        if self.author is not None:
            rec["author"] = self.author
        if self.split is not None:
            rec["split"] = self.split
        return rec


@dataclass(frozen=True)
class Corpus:
    name: str
    articles: tuple[Article, ...]
    metadata_fields: frozenset[str] = field(default_factory=frozenset)

    def __len__(self) -> int:
        return len(self.articles)

    def __iter__(self):
        return iter(self.articles)


@dataclass(frozen=True)
class SplitSpec:
    """Train/validation/test fractions plus the seed that fixes the shuffle."""

    ratios: tuple[float, float, float] = (0.5, 0.25, 0.25)
    seed: int = 0
    stratify: bool = True

    def __post_init__(self):
        if len(self.ratios) != 3 or any(r <= 0 for r in self.ratios):
            raise ValueError(f"need three positive ratios, got {self.ratios}")
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise ValueError(f"ratios must sum to 1, got {self.ratios}")


def proportional_count(total: int, fraction: float) -> int:
    """floor(total * fraction), robust to binary float error (20 * 0.35 -> 7)."""
    return int(math.floor(total * fraction + 1e-9))


def load_field_mapping(path: str | Path) -> dict[str, str]:
    """Read a ``canonical=column`` mapping file for CSV ingestion.

    Blank lines and ``#`` comments are ignored. Keys must be canonical
    field names (id, text, title, author, label, split).
    """
    mapping = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}: line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in CANONICAL_FIELDS:
            raise ValueError(f"{path}: line {lineno}: unknown field {key!r}")
        mapping[key] = value
    return mapping


def _coerce_label(value, where: str) -> int:
    if isinstance(value, bool):
        raise ValueError(f"{where}: label must be an integer 0 or 1, got {value!r}")
    if isinstance(value, str):
        value = value.strip()
        if value not in ("0", "1"):
            raise ValueError(f"{where}: label must be 0 or 1, got {value!r}")
        return int(value)
    if isinstance(value, int):
        if value not in (0, 1):
            raise ValueError(f"{where}: label must be 0 or 1, got {value}")
        return value
    raise ValueError(f"{where}: label must be an integer 0 or 1, got {value!r}")


def _build_article(record: dict, index: int, where: str) -> Article:
    raw_text = record.get("text")
    if raw_text is None or not str(raw_text).strip():
        raise ValueError(f"{where}: missing or empty text field")
    if "label" not in record or record["label"] is None:
        raise ValueError(f"{where}: missing label field")
    label = _coerce_label(record["label"], where)

    article_id = record.get("id")
    article_id = str(index) if article_id is None or str(article_id) == "" else str(article_id)

    text = normalize(str(raw_text))
    if not text:
        raise ValueError(f"{where}: text is empty after normalization")

    split_value = record.get("split")
    if split_value is not None:
        split_value = str(split_value)
        if split_value not in SPLIT_NAMES:
            raise ValueError(f"{where}: split must be one of {SPLIT_NAMES}, got {split_value!r}")

    def opt(field_name):
        value = record.get(field_name)
        if value is None:
            return None
        value = str(value)
        return value if value.strip() else None

    return Article(
        id=article_id,
        text=text,
        label=label,
        title=opt("title"),
        author=opt("author"),
        raw_text=str(raw_text),
        split=split_value,
    )


def load_corpus(
    path: str | Path,
    format: str = "jsonl",
    mapping: dict[str, str] | None = None,
    name: str | None = None,
) -> Corpus:
    """Load a JSONL or CSV corpus, normalizing every article.

    ``mapping`` (CSV only) maps canonical field names to column names.
    Malformed records raise ValueError naming the offending line/record.
    ``metadata_fields`` ends up holding whichever of title/author is
    present and non-empty on every article.
    """
    path = Path(path)
    if format == "jsonl":
        records = _read_jsonl(path)
    elif format == "csv":
        records = _read_csv(path, mapping or {})
    else:
        raise ValueError(f"unknown corpus format {format!r} (expected jsonl or csv)")

    articles = []
    seen_ids = set()
    for index, (where, record) in enumerate(records):
        article = _build_article(record, index, where)
        if article.id in seen_ids:
            raise ValueError(f"{where}: duplicate article id {article.id!r}")
        seen_ids.add(article.id)
        articles.append(article)

    if not articles:
        raise ValueError(f"{path}: corpus is empty")

    metadata = set()
    for field_name in ("title", "author"):
        if all(getattr(a, field_name) is not None for a in articles):
            metadata.add(field_name)

    return Corpus(
        name=name or path.stem,
        articles=tuple(articles),
        metadata_fields=frozenset(metadata),
    )


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
            if not isinstance(record, dict):
                raise ValueError(f"{where}: expected a JSON object")
            out.append((where, record))
    return out


def _read_csv(path: Path, mapping: dict[str, str]):
    out = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path.name}: missing CSV header row")
        columns = {canonical: mapping.get(canonical, canonical) for canonical in CANONICAL_FIELDS}
        for recno, row in enumerate(reader, start=1):
            where = f"{path.name}: record {recno}"
            record = {}
            for canonical, column in columns.items():
                if column in row and row[column] is not None:
                    record[canonical] = row[column]
            out.append((where, record))
    return out


def split(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus, Corpus]:
    """Partition a corpus into train/validation/test.

    Deterministic for a given (corpus, spec). Validation and test receive
    floor(ratio * n) articles (per label when stratifying); the remainder
    goes to train. Articles keep their corpus order within each part.
    """
    n = len(corpus.articles)
    if n < 3:
        raise ValueError(f"corpus {corpus.name!r} has {n} articles; need at least 3 to split")

    rng = random.Random(spec.seed)
    if spec.stratify:
        groups = {}
        for position, article in enumerate(corpus.articles):
            groups.setdefault(article.label, []).append(position)
        groups = [groups[label] for label in sorted(groups)]
    else:
        groups = [list(range(n))]

    assignment = {}
    for positions in groups:
        shuffled = positions[:]
        rng.shuffle(shuffled)
        n_val = proportional_count(len(positions), spec.ratios[1])
        n_test = proportional_count(len(positions), spec.ratios[2])
        n_train = len(positions) - n_val - n_test
        for i, position in enumerate(shuffled):
            if i < n_train:
                assignment[position] = "train"
            elif i < n_train + n_val:
                assignment[position] = "val"
            else:
                assignment[position] = "test"

    return _partition(corpus, assignment)


def split_by_assignment(corpus: Corpus) -> tuple[Corpus, Corpus, Corpus]:
    """Honor an externally given partition carried in each article's split field."""
    missing = [a.id for a in corpus.articles if a.split is None]
    if missing:
        raise ValueError(
            f"corpus {corpus.name!r}: {len(missing)} articles have no split assignment "
            f"(first: {missing[0]!r})"
        )
    assignment = {i: a.split for i, a in enumerate(corpus.articles)}
    return _partition(corpus, assignment)


def _partition(corpus: Corpus, assignment: dict[int, str]) -> tuple[Corpus, Corpus, Corpus]:
    parts = {part: [] for part in SPLIT_NAMES}
    for position, article in enumerate(corpus.articles):
        parts[assignment[position]].append(article)
    return tuple(
        Corpus(
            name=f"{corpus.name}.{part}",
            articles=tuple(parts[part]),
            metadata_fields=corpus.metadata_fields,
        )
        for part in SPLIT_NAMES
    )


def write_corpus_jsonl(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for article in corpus.articles:
            handle.write(json.dumps(article.to_record(), ensure_ascii=False) + "\n")


def write_split_files(
    parts: tuple[Corpus, Corpus, Corpus],
    out_dir: str | Path,
    stem: str,
    spec: SplitSpec | None = None,
) -> list[Path]:
    """Write <stem>.train/.val/.test JSONL files plus a split manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for part_name, part in zip(SPLIT_NAMES, parts):
        path = out_dir / f"{stem}.{part_name}.jsonl"
        write_corpus_jsonl(part, path)
        written.append(path)

    manifest = {
        "stem": stem,
        "counts": {name: len(part) for name, part in zip(SPLIT_NAMES, parts)},
    }
    if spec is not None:
        manifest["seed"] = spec.seed
        manifest["ratios"] = list(spec.ratios)
        manifest["stratify"] = spec.stratify
    manifest_path = out_dir / f"{stem}.split.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    written.append(manifest_path)
    return written
