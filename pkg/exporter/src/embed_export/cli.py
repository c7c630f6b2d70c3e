"""Command line for the embedding exporter."""

from __future__ import annotations

import argparse
import sys

from .export import ExportSpec, export


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-export",
        description="Encode a corpus with a transformer and write word-vector "
                    "and document-vector files in leantext's formats.",
    )
    parser.add_argument("--corpus", required=True, help="corpus file (JSONL or CSV)")
    parser.add_argument("--format", default="jsonl", choices=("jsonl", "csv"))
    parser.add_argument("--mapping", help="CSV field-mapping file (canonical=column)")
    parser.add_argument("--encoder", required=True,
                        help="model id or local path loadable by transformers")
    parser.add_argument("--pooling", default="mean", choices=("mean", "first-token"))
    parser.add_argument("--max-length", type=int, default=256,
                        help="hard cap on encoded tokens per article")
    parser.add_argument("--batch-size", type=int, default=8)
    parser.add_argument("--word-vectors", required=True, help="output word-vector file")
    parser.add_argument("--doc-vectors", required=True, help="output document-vector JSONL")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = ExportSpec(
        corpus=args.corpus,
        encoder=args.encoder,
        word_vectors=args.word_vectors,
        doc_vectors=args.doc_vectors,
        pooling=args.pooling,
        max_length=args.max_length,
        batch_size=args.batch_size,
        format=args.format,
        mapping=args.mapping,
    )
    try:
        word_path, doc_path = export(spec)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {word_path} and {doc_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
