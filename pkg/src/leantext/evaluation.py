"""Metrics, the repeated-trial protocol, significance tests, and report tables.

Accuracy, macro-F1, and AUC are computed per trial on the test split;
experiments repeat for five trials by default, each trial reseeding the
split and the training shuffle with base_seed + trial_index. Pairs of
experiments are compared with Welch's t-test over per-trial accuracies
(** for p < 0.01, * for 0.01 <= p < 0.05). The accuracy ratio divides an
experiment's mean accuracy by a baseline's, which is how limited views
are judged against the full text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import stats as scipy_stats

from .classify import Featurizer, TrainConfig, train
from .corpus import Corpus, SplitSpec, load_corpus, load_field_mapping, split, split_by_assignment
from .embedding import load_doc_vectors, load_table
from .tagging import BuiltinTagger, ExternalAnnotations, load_gazetteer
from .views import ViewBuilder, parse_view_spec

__all__ = [
    "MetricSet",
    "EvalSummary",
    "ExperimentSpec",
    "metrics",
    "significance",
    "welch_t_test",
    "accuracy_ratio",
    "run_trials",
    "attach_comparisons",
    "format_mean_std",
    "summaries_markdown",
    "trials_csv",
    "ratio_curves",
]

SIGNIFICANCE_NOTE = (
    "Significance: two-tailed Welch's t-test on per-trial accuracies vs the baseline; "
    "** p < 0.01, * 0.01 <= p < 0.05. Accuracy is mean +/- sample std over trials."
)


@dataclass(frozen=True)
class MetricSet:
    accuracy: float
    macro_f1: float
    auc: float | None

    def __post_init__(self):
        for name in ("accuracy", "macro_f1"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {value}")
        if self.auc is not None and not 0.0 <= self.auc <= 1.0:
            raise ValueError(f"auc out of [0, 1]: {self.auc}")


def metrics(predictions: Sequence[int], scores: Sequence[float], labels: Sequence[int]) -> MetricSet:
    """Accuracy, macro-F1, and rank-based AUC with half credit for score ties.

    AUC is None when the labels carry a single class; F1 of a class with
    no true and no predicted members counts as 0 toward the macro mean.
    """
    predictions = list(predictions)
    scores = list(scores)
    labels = list(labels)
    if not (len(predictions) == len(scores) == len(labels)) or not labels:
        raise ValueError("predictions, scores, and labels must be equal-length and non-empty")

    n = len(labels)
    accuracy = sum(1 for p, y in zip(predictions, labels) if p == y) / n

    f1_scores = []
    for cls in (0, 1):
        tp = sum(1 for p, y in zip(predictions, labels) if p == cls and y == cls)
        fp = sum(1 for p, y in zip(predictions, labels) if p == cls and y != cls)
        fn = sum(1 for p, y in zip(predictions, labels) if p != cls and y == cls)
        denom = 2 * tp + fp + fn
        f1_scores.append(2 * tp / denom if denom > 0 else 0.0)
    macro_f1 = sum(f1_scores) / 2

    n_pos = sum(labels)
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        return MetricSet(accuracy=accuracy, macro_f1=macro_f1, auc=None)

    # Mann-Whitney via average ranks; ties share rank mass.
    order = sorted(range(n), key=lambda i: scores[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        avg_rank = (i + j) / 2 + 1
        for t in range(i, j + 1):
            ranks[order[t]] = avg_rank
        i = j + 1
    rank_sum_pos = sum(r for r, y in zip(ranks, labels) if y == 1)
    auc = (rank_sum_pos - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg)
    return MetricSet(accuracy=accuracy, macro_f1=macro_f1, auc=auc)


def welch_t_test(group_a: Sequence[float], group_b: Sequence[float]) -> float:
    """Two-tailed Welch p-value; degenerate zero-variance pairs resolve exactly."""
    a = np.asarray(group_a, dtype=np.float64)
    b = np.asarray(group_b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise ValueError("each group needs at least two observations")
    var_a = float(a.var(ddof=1))
    var_b = float(b.var(ddof=1))
    if var_a == 0.0 and var_b == 0.0:
        return 1.0 if float(a.mean()) == float(b.mean()) else 0.0
    se2 = var_a / a.size + var_b / b.size
    t = (float(a.mean()) - float(b.mean())) / math.sqrt(se2)
    df = se2**2 / (
        (var_a / a.size) ** 2 / (a.size - 1) + (var_b / b.size) ** 2 / (b.size - 1)
    )
    return float(2.0 * scipy_stats.t.sf(abs(t), df))


def significance_marker(p: float) -> str:
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def significance(group_a: Sequence[float], group_b: Sequence[float]) -> tuple[float, str]:
    p = welch_t_test(group_a, group_b)
    return p, significance_marker(p)


def accuracy_ratio(acc: float, baseline_acc: float) -> float:
    if baseline_acc <= 0:
        raise ValueError("baseline accuracy must be positive")
    return acc / baseline_acc


@dataclass(frozen=True)
class EvalSummary:
    experiment: str
    view_label: str
    k: float | None
    trials: tuple[MetricSet, ...]
    mean_accuracy: float
    std_accuracy: float
    significance_vs_baseline: str = ""
    p_vs_baseline: float | None = None
    accuracy_ratio: float | None = None
    flags: tuple[str, ...] = ()

    @property
    def accuracies(self) -> list[float]:
        return [t.accuracy for t in self.trials]


def format_mean_std(mean: float, std: float, marker: str = "") -> str:
    """Accuracy as percent, spread as a fraction: 0.9555/0.0046 -> '95.55±0.0046'."""
    return f"{100 * mean:.2f}{marker}±{std:.4f}"


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything one experiment needs, loadable from a key=value file."""

    name: str
    corpus: str
    view: str
    k: float | None = None
    format: str = "jsonl"
    mapping: str | None = None
    diversity: float = 0.5
    featurizer: str = "hashed-bow"
    hashed_dim: int = 4096
    trials: int = 5
    seed: int = 0
    seed_stride: int = 1
    ratios: tuple[float, float, float] = (0.5, 0.25, 0.25)
    stratify: bool = True
    use_split_field: bool = False
    epochs: int = 20
    learning_rate: float = 5e-5
    batch_size: int = 32
    l2: float = 0.0
    remove_stopwords: bool = True
    embeddings: str | None = None
    doc_embeddings: str | None = None
    annotations: str | None = None
    gazetteer: str | None = None

    _BOOL_KEYS = ("stratify", "use_split_field", "remove_stopwords")
    _INT_KEYS = ("hashed_dim", "trials", "seed", "seed_stride", "epochs", "batch_size")
    _FLOAT_KEYS = ("k", "diversity", "learning_rate", "l2")
    _PATH_KEYS = ("corpus", "mapping", "embeddings", "doc_embeddings", "annotations", "gazetteer")

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentSpec":
        path = Path(path)
        values: dict = {}
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path.name}: line {lineno}: expected key = value")
            key, _, raw = line.partition("=")
            key, raw = key.strip().lower(), raw.strip()
            if key == "lambda":
                key = "diversity"
            if key == "ratios":
                parts = [float(x) for x in raw.split(",")]
                if len(parts) != 3:
                    raise ValueError(f"{path.name}: line {lineno}: ratios need three values")
                values["ratios"] = tuple(parts)
            elif key in cls._BOOL_KEYS:
                values[key] = raw.lower() in ("1", "true", "yes", "on")
            elif key in cls._INT_KEYS:
                values[key] = int(raw)
            elif key in cls._FLOAT_KEYS:
                values[key] = float(raw)
            elif key in ("name", "view", "format", "featurizer"):
                values[key] = raw
            elif key in cls._PATH_KEYS:
                # Relative paths resolve against the spec file's directory.
                candidate = Path(raw)
                values[key] = str(candidate if candidate.is_absolute() else path.parent / candidate)
            else:
                raise ValueError(f"{path.name}: line {lineno}: unknown key {key!r}")
        for required in ("name", "corpus", "view"):
            if required not in values:
                raise ValueError(f"{path.name}: missing required key {required!r}")
        return cls(**values)


@dataclass
class Resources:
    """Loaded inputs shared by every trial of an experiment."""

    corpus: Corpus
    builder: ViewBuilder
    featurizer: Featurizer


def load_resources(spec: ExperimentSpec) -> Resources:
    mapping = load_field_mapping(spec.mapping) if spec.mapping else None
    corpus = load_corpus(spec.corpus, format=spec.format, mapping=mapping)

    table = load_table(spec.embeddings) if spec.embeddings else None
    doc_vectors = None
    if spec.doc_embeddings:
        doc_vectors = load_doc_vectors(
            spec.doc_embeddings, dim=table.dim if table else None
        )
    if spec.annotations:
        tagger = ExternalAnnotations(spec.annotations)
    else:
        gazetteer = load_gazetteer(spec.gazetteer) if spec.gazetteer else ()
        tagger = BuiltinTagger(gazetteer)
    builder = ViewBuilder(
        table=table,
        doc_vectors=doc_vectors,
        tagger=tagger,
        diversity=spec.diversity,
        remove_stopwords=spec.remove_stopwords,
    )
    featurizer = Featurizer(mode=spec.featurizer, table=table, hashed_dim=spec.hashed_dim)
    return Resources(corpus=corpus, builder=builder, featurizer=featurizer)


def _softmax_scores(model, features: np.ndarray) -> np.ndarray:
    logits = features @ model.weights.T + model.bias
    shifted = logits - logits.max(axis=1, keepdims=True)
    expd = np.exp(shifted)
    probs = expd / expd.sum(axis=1, keepdims=True)
    return probs[:, 1]


def run_trials(
    spec: ExperimentSpec,
    n_trials: int | None = None,
    resources: Resources | None = None,
) -> EvalSummary:
    """Run the repeated-trial protocol for one experiment.

    Views and features are deterministic per article, so they are built
    once; trial t reseeds the split and the training shuffle with
    seed + t * seed_stride (a zero stride makes trials identical, which
    is occasionally useful for pure-determinism checks).
    """
    if resources is None:
        resources = load_resources(spec)
    n_trials = spec.trials if n_trials is None else n_trials
    if n_trials < 1:
        raise ValueError("need at least one trial")

    corpus = resources.corpus
    view_spec = parse_view_spec(spec.view, spec.k)
    features = {}
    labels = {}
    for article in corpus.articles:
        view = resources.builder.build(article, view_spec)
        features[article.id] = resources.featurizer(view).values
        labels[article.id] = article.label

    def matrix(part: Corpus):
        x = np.stack([features[a.id] for a in part.articles])
        y = np.array([labels[a.id] for a in part.articles], dtype=np.int64)
        return x, y

    trial_metrics = []
    for trial in range(n_trials):
        seed = spec.seed + trial * spec.seed_stride
        if spec.use_split_field:
            parts = split_by_assignment(corpus)
        else:
            parts = split(corpus, SplitSpec(ratios=spec.ratios, seed=seed,
                                            stratify=spec.stratify))
        x_train, y_train = matrix(parts[0])
        x_test, y_test = matrix(parts[2])

        config = TrainConfig(
            learning_rate=spec.learning_rate,
            epochs=spec.epochs,
            batch_size=spec.batch_size,
            seed=seed,
            l2=spec.l2,
        )
        model = train(x_train, y_train, config, featurizer_id=resources.featurizer.id)
        logits = x_test @ model.weights.T + model.bias
        predictions = np.argmax(logits, axis=1).tolist()
        scores = _softmax_scores(model, x_test).tolist()
        trial_metrics.append(metrics(predictions, scores, y_test.tolist()))

    accs = [m.accuracy for m in trial_metrics]
    mean_acc = sum(accs) / len(accs)
    if len(accs) > 1:
        var = sum((a - mean_acc) ** 2 for a in accs) / (len(accs) - 1)
        std_acc = math.sqrt(var)
        flags = ()
    else:
        std_acc = 0.0
        flags = ("single-trial",)

    return EvalSummary(
        experiment=spec.name,
        view_label=view_spec.label,
        k=spec.k,
        trials=tuple(trial_metrics),
        mean_accuracy=mean_acc,
        std_accuracy=std_acc,
        flags=flags,
    )


def attach_comparisons(summaries: list[EvalSummary], baseline_name: str) -> list[EvalSummary]:
    """Fill significance markers and accuracy ratios against a named baseline."""
    by_name = {s.experiment: s for s in summaries}
    if baseline_name not in by_name:
        raise ValueError(f"baseline experiment {baseline_name!r} not among summaries")
    baseline = by_name[baseline_name]

    out = []
    for summary in summaries:
        ratio = accuracy_ratio(summary.mean_accuracy, baseline.mean_accuracy)
        if summary.experiment == baseline_name or len(summary.trials) < 2:
            out.append(replace(summary, accuracy_ratio=ratio))
            continue
        p, marker = significance(summary.accuracies, baseline.accuracies)
        out.append(
            replace(summary, significance_vs_baseline=marker, p_vs_baseline=p,
                    accuracy_ratio=ratio)
        )
    return out


def _mean(values: list[float]) -> float:
    return sum(values) / len(values)


def summaries_markdown(summaries: list[EvalSummary], baseline_name: str | None = None) -> str:
    lines = [
        "| Experiment | View | Accuracy | Macro-F1 | AUC | Accuracy ratio |",
        "|---|---|---|---|---|---|",
    ]
    for s in summaries:
        acc = format_mean_std(s.mean_accuracy, s.std_accuracy, s.significance_vs_baseline)
        f1 = f"{100 * _mean([t.macro_f1 for t in s.trials]):.2f}"
        aucs = [t.auc for t in s.trials]
        auc = f"{100 * _mean(aucs):.2f}" if all(a is not None for a in aucs) else "n/a"
        ratio = f"{s.accuracy_ratio:.4f}" if s.accuracy_ratio is not None else ""
        lines.append(f"| {s.experiment} | {s.view_label} | {acc} | {f1} | {auc} | {ratio} |")
    lines.append("")
    if baseline_name:
        lines.append(f"Baseline: {baseline_name}. {SIGNIFICANCE_NOTE}")
    else:
        lines.append(SIGNIFICANCE_NOTE)
    return "\n".join(lines) + "\n"


def trials_csv(summaries: list[EvalSummary]) -> str:
    lines = ["experiment,view,trial,accuracy,macro_f1,auc"]
    for s in summaries:
        for i, t in enumerate(s.trials):
            auc = f"{t.auc:.6f}" if t.auc is not None else ""
            lines.append(
                f"{s.experiment},{s.view_label},{i},{t.accuracy:.6f},{t.macro_f1:.6f},{auc}"
            )
    return "\n".join(lines) + "\n"


def ratio_curves(summaries: list[EvalSummary]) -> dict[str, str]:
    """Ratio-vs-k TSV per view family, for the accuracy-ratio curve plots."""
    families: dict[str, list[EvalSummary]] = {}
    for s in summaries:
        if s.k is None or s.accuracy_ratio is None:
            continue
        family = s.view_label.split("@", 1)[0]
        families.setdefault(family, []).append(s)

    curves = {}
    for family, members in sorted(families.items()):
        members = sorted(members, key=lambda s: s.k)
        lines = ["# k\taccuracy_ratio\tmean_accuracy"]
        for s in members:
            lines.append(f"{s.k:.2f}\t{s.accuracy_ratio:.6f}\t{s.mean_accuracy:.6f}")
        curves[family] = "\n".join(lines) + "\n"
    return curves
