"""Command-line workflow: ingest, extract, density, train, evaluate, compare, report.

Every command validates its inputs up front, writes its artifacts into
--out, and finishes by dropping a manifest.json recording the command
line, a config hash, input digests, and the artifact list. On failure the
partially written artifacts are removed. All randomness flows from the
--seed flag (or the seed inside an experiment spec).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .corpus import SplitSpec, load_corpus, load_field_mapping, split, split_by_assignment, write_split_files
from .classify import Featurizer, TrainConfig, save_model, train
from .density import SubwordTokenizer, density_report, write_density_csv, write_density_tsv
from .embedding import load_doc_vectors, load_table
from .evaluation import (
    ExperimentSpec,
    attach_comparisons,
    load_resources,
    metrics,
    ratio_curves,
    run_trials,
    summaries_markdown,
    trials_csv,
)
from .tagging import BuiltinTagger, ExternalAnnotations, load_gazetteer
from .views import ViewBuilder, ViewSpec, parse_view_spec, write_views_jsonl

K_GRID_STEP = 0.05
K_GRID_MIN = 0.10


class OutputTracker:
    """Remembers what a command wrote so failures can clean up after themselves."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.created: list[Path] = []

    def add(self, path: Path) -> Path:
        self.created.append(Path(path))
        return path

    def cleanup(self):
        for path in self.created:
            try:
                path.unlink(missing_ok=True)
            except OSError:
                pass


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(out: OutputTracker, argv: list[str], inputs: list[Path]) -> None:
    manifest = {
        "tool": "leantext",
        "version": __version__,
        "command": "leantext " + " ".join(argv),
        "config_hash": hashlib.sha256(json.dumps(argv).encode("utf-8")).hexdigest(),
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in inputs],
        "artifacts": sorted(str(p.relative_to(out.out_dir)) for p in out.created),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    path = out.out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def _require_file(path: str | None, what: str) -> Path:
    if path is None:
        raise ValueError(f"missing required {what}")
    p = Path(path)
    if not p.is_file():
        raise ValueError(f"{what} not found: {p}")
    return p


def _parse_ratios(text: str) -> tuple[float, float, float]:
    parts = [float(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"ratios need three comma-separated values, got {text!r}")
    return tuple(parts)


def _k_grid(values: list[float] | None, feasible_max: float | None) -> list[float]:
    if values:
        for k in values:
            if not 0 < k <= 1:
                raise ValueError(f"invalid k {k}: must be in (0, 1]")
        return sorted(set(values))
    top = feasible_max if feasible_max is not None else 0.35
    grid = []
    k = K_GRID_MIN
    while k <= top + 1e-9:
        grid.append(round(k, 2))
        k += K_GRID_STEP
    return grid or [K_GRID_MIN]


def _load_builder(args) -> ViewBuilder:
    table = load_table(_require_file(args.embeddings, "--embeddings file")) if args.embeddings else None
    doc_vectors = None
    if getattr(args, "doc_embeddings", None):
        doc_vectors = load_doc_vectors(
            _require_file(args.doc_embeddings, "--doc-embeddings file"),
            dim=table.dim if table else None,
        )
    if getattr(args, "annotations", None):
        tagger = ExternalAnnotations(_require_file(args.annotations, "--annotations file"))
    else:
        gazetteer = ()
        if getattr(args, "gazetteer", None):
            gazetteer = load_gazetteer(_require_file(args.gazetteer, "--gazetteer file"))
        tagger = BuiltinTagger(gazetteer)
    return ViewBuilder(
        table=table,
        doc_vectors=doc_vectors,
        tagger=tagger,
        diversity=getattr(args, "lambda_", 0.5),
        remove_stopwords=not getattr(args, "no_stopwords", False),
    )


def _load_corpus_arg(args):
    path = _require_file(args.corpus, "--corpus file")
    mapping = None
    if getattr(args, "mapping", None):
        mapping = load_field_mapping(_require_file(args.mapping, "--mapping file"))
    return load_corpus(path, format=args.format, mapping=mapping), path


def cmd_ingest(args, out: OutputTracker, inputs: list[Path]) -> None:
    corpus, path = _load_corpus_arg(args)
    inputs.append(path)
    if args.by_split_field:
        parts = split_by_assignment(corpus)
        spec = None
    else:
        spec = SplitSpec(ratios=_parse_ratios(args.ratios), seed=args.seed,
                         stratify=not args.no_stratify)
        parts = split(corpus, spec)
    for written in write_split_files(parts, out.out_dir, stem=corpus.name, spec=spec):
        out.add(written)


def cmd_extract(args, out: OutputTracker, inputs: list[Path]) -> None:
    corpus, path = _load_corpus_arg(args)
    inputs.append(path)
    builder = _load_builder(args)

    kind = args.kind.lower()
    probe = parse_view_spec(kind, k=args.k[0] if args.k else K_GRID_MIN)
    needs_k = probe.kind in ("keyword", "pos") or any(
        p in ("keyword", "pos") for p in probe.parts
    )
    if needs_k:
        feasible = None
        if not args.k:
            feasible = builder.feasible_max_k(
                corpus, "keyword" if "keyword" in kind else "pos"
            )
        grid = _k_grid(args.k, feasible)
        for k in grid:
            spec = parse_view_spec(kind, k=k)
            views = [builder.build(a, spec) for a in corpus.articles]
            name = kind.replace("+", "_")
            target = out.add(out.out_dir / f"views_{name}_k{k:.2f}.jsonl")
            write_views_jsonl(views, target)
    else:
        spec = parse_view_spec(kind)
        views = [builder.build(a, spec) for a in corpus.articles]
        target = out.add(out.out_dir / f"views_{kind.replace('+', '_')}.jsonl")
        write_views_jsonl(views, target)


def cmd_density(args, out: OutputTracker, inputs: list[Path]) -> None:
    corpus, path = _load_corpus_arg(args)
    inputs.append(path)
    builder = _load_builder(args)

    tokenizer = None
    if args.tokenizer_vocab:
        tokenizer = SubwordTokenizer.from_file(
            _require_file(args.tokenizer_vocab, "--tokenizer-vocab file")
        )

    specs = [ViewSpec(kind="fulltext")]
    pos_grid = _k_grid(args.k, builder.feasible_max_k(corpus, "pos"))
    specs.extend(ViewSpec(kind="pos", k=k) for k in pos_grid)
    if builder.table is not None:
        kw_grid = _k_grid(args.k, builder.feasible_max_k(corpus, "keyword"))
        specs.extend(ViewSpec(kind="keyword", k=k) for k in kw_grid)
    specs.append(ViewSpec(kind="ner"))
    specs.append(ViewSpec(kind="title"))
    if "author" in corpus.metadata_fields:
        specs.append(ViewSpec(kind="author"))

    report = density_report(
        corpus, specs, builder, tokenizer,
        per_distinct=args.per_distinct, view_local=args.view_local,
    )
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    write_density_csv(report, out.add(out.out_dir / "density.csv"))
    write_density_tsv(report, out.add(out.out_dir / "density.tsv"))


def _spec_inputs(spec: ExperimentSpec) -> list[Path]:
    paths = []
    for attr in ("corpus", "mapping", "embeddings", "doc_embeddings", "annotations", "gazetteer"):
        value = getattr(spec, attr)
        if value:
            paths.append(_require_file(value, f"{attr} file from spec"))
    return paths


def cmd_train(args, out: OutputTracker, inputs: list[Path]) -> None:
    spec_path = _require_file(args.spec, "--spec file")
    inputs.append(spec_path)
    spec = ExperimentSpec.from_file(spec_path)
    inputs.extend(_spec_inputs(spec))
    resources = load_resources(spec)

    view_spec = parse_view_spec(spec.view, spec.k)
    features = {a.id: resources.featurizer(resources.builder.build(a, view_spec)).values
                for a in resources.corpus.articles}
    if spec.use_split_field:
        parts = split_by_assignment(resources.corpus)
    else:
        parts = split(resources.corpus, SplitSpec(ratios=spec.ratios, seed=spec.seed,
                                                  stratify=spec.stratify))

    import numpy as np

    def matrix(part):
        x = np.stack([features[a.id] for a in part.articles])
        y = np.array([a.label for a in part.articles], dtype=np.int64)
        return x, y

    x_train, y_train = matrix(parts[0])
    config = TrainConfig(learning_rate=spec.learning_rate, epochs=spec.epochs,
                         batch_size=spec.batch_size, seed=spec.seed, l2=spec.l2)
    model = train(x_train, y_train, config, featurizer_id=resources.featurizer.id)
    save_model(model, out.add(out.out_dir / "model.json"))

    summary = {"experiment": spec.name, "view": view_spec.label,
               "train_loss": model.train_loss}
    for name, part in (("val", parts[1]), ("test", parts[2])):
        x, y = matrix(part)
        logits = x @ model.weights.T + model.bias
        preds = np.argmax(logits, axis=1).tolist()
        shifted = logits - logits.max(axis=1, keepdims=True)
        probs = np.exp(shifted)
        scores = (probs[:, 1] / probs.sum(axis=1)).tolist()
        m = metrics(preds, scores, y.tolist())
        summary[name] = {"accuracy": m.accuracy, "macro_f1": m.macro_f1, "auc": m.auc}
    target = out.add(out.out_dir / "train_summary.json")
    target.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")


def _run_specs(spec_paths: list[str], inputs: list[Path]):
    summaries = []
    for spec_arg in spec_paths:
        spec_path = _require_file(spec_arg, "--spec file")
        inputs.append(spec_path)
        spec = ExperimentSpec.from_file(spec_path)
        inputs.extend(_spec_inputs(spec))
        summaries.append(run_trials(spec))
    return summaries


def cmd_evaluate(args, out: OutputTracker, inputs: list[Path]) -> None:
    summaries = _run_specs([args.spec], inputs)
    (out.add(out.out_dir / "summary.md")).write_text(
        summaries_markdown(summaries), encoding="utf-8"
    )
    (out.add(out.out_dir / "trials.csv")).write_text(trials_csv(summaries), encoding="utf-8")


def cmd_compare(args, out: OutputTracker, inputs: list[Path]) -> None:
    summaries = _run_specs(args.spec, inputs)
    summaries = attach_comparisons(summaries, args.baseline)
    (out.add(out.out_dir / "comparison.md")).write_text(
        summaries_markdown(summaries, baseline_name=args.baseline), encoding="utf-8"
    )
    (out.add(out.out_dir / "trials.csv")).write_text(trials_csv(summaries), encoding="utf-8")


def cmd_report(args, out: OutputTracker, inputs: list[Path]) -> None:
    summaries = _run_specs(args.spec, inputs)
    if args.baseline:
        summaries = attach_comparisons(summaries, args.baseline)
    body = ["# Experiment report", "", summaries_markdown(summaries, baseline_name=args.baseline)]
    (out.add(out.out_dir / "report.md")).write_text("\n".join(body), encoding="utf-8")
    (out.add(out.out_dir / "trials.csv")).write_text(trials_csv(summaries), encoding="utf-8")
    for family, content in ratio_curves(summaries).items():
        safe = family.replace("+", "_")
        (out.add(out.out_dir / f"ratio_vs_k_{safe}.tsv")).write_text(content, encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leantext",
                                     description="Limited-information text views: "
                                                 "extraction, density, training, evaluation.")
    parser.add_argument("--version", action="version", version=f"leantext {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_flags(p):
        p.add_argument("--corpus", required=True, help="corpus file (JSONL or CSV)")
        p.add_argument("--format", default="jsonl", choices=("jsonl", "csv"))
        p.add_argument("--mapping", help="CSV field-mapping file (canonical=column)")

    def resource_flags(p):
        p.add_argument("--embeddings", help="word-vector file")
        p.add_argument("--doc-embeddings", dest="doc_embeddings",
                       help="document-vector JSONL keyed by article id")
        p.add_argument("--annotations", help="gold POS/entity annotation JSONL")
        p.add_argument("--gazetteer", help="entity gazetteer, one phrase per line")
        p.add_argument("--lambda", dest="lambda_", type=float, default=0.5,
                       help="diversity weight for keyword selection (default 0.5)")
        p.add_argument("--no-stopwords", action="store_true",
                       help="keep stop words as keyword candidates")

    p = sub.add_parser("ingest", help="load, validate, and split a corpus")
    corpus_flags(p)
    p.add_argument("--ratios", default="0.5,0.25,0.25")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-stratify", action="store_true")
    p.add_argument("--by-split-field", action="store_true",
                   help="honor the per-article split field instead of sampling")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("extract", help="write view JSONL files for one kind")
    corpus_flags(p)
    resource_flags(p)
    p.add_argument("--kind", required=True,
                   help="fulltext, keyword, pos, ner, title, author, or e.g. keyword+title")
    p.add_argument("--k", type=float, action="append",
                   help="proportion of the article to keep; repeatable")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("density", help="information-density report over standard views")
    corpus_flags(p)
    resource_flags(p)
    p.add_argument("--k", type=float, action="append", help="override the k grid")
    p.add_argument("--tokenizer-vocab", dest="tokenizer_vocab",
                   help="subword vocabulary file for token counts")
    p.add_argument("--per-distinct", action="store_true",
                   help="sum entropy over distinct words instead of occurrences")
    p.add_argument("--view-local", action="store_true",
                   help="use view-local instead of full-text frequencies")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("train", help="train one model from an experiment spec")
    p.add_argument("--spec", required=True, help="experiment spec file (key = value)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="run the repeated-trial protocol for one spec")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="evaluate several specs with significance markers")
    p.add_argument("--spec", action="append", required=True)
    p.add_argument("--baseline", required=True, help="experiment name serving as baseline")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("report", help="full bundle: tables plus ratio-vs-k curves")
    p.add_argument("--spec", action="append", required=True)
    p.add_argument("--baseline", help="experiment name serving as baseline")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    tracker = OutputTracker(out_dir)
    inputs: list[Path] = []
    try:
        args.func(args, tracker, inputs)
        write_manifest(tracker, argv, inputs)
    except (ValueError, KeyError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        tracker.cleanup()
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
