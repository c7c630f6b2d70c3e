"""A deliberately small classifier over view features.

Views are featurized either as the mean of their word vectors, as an
L2-normalized hashed bag of words (FNV-1a 64-bit, modulo the feature
dimension), or as the concatenation of both. A softmax-linear model is
trained on cross-entropy with the adaptive-moment update (bias-corrected
first and second moment estimates, per-parameter step lr * m / (sqrt(v)
+ eps)). Weights start at zero: the objective is convex, so run-to-run
variance comes from data sampling only. Prediction takes the argmax of
the logits, ties resolving to label 0.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .embedding import EmbeddingTable
from .keywords import LimitedView

__all__ = [
    "FeatureVector",
    "Featurizer",
    "TrainConfig",
    "ClassifierModel",
    "fnv1a64",
    "featurize",
    "ce_loss_and_grad",
    "train",
    "predict",
    "save_model",
    "load_model",
]

MODEL_FORMAT_VERSION = 1
FEATURIZER_MODES = ("mean-embedding", "hashed-bow", "concat-both")

_FNV_OFFSET = 14695981039346656037
_FNV_PRIME = 1099511628211
_MASK64 = (1 << 64) - 1


def fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash of the UTF-8 encoding of ``text``."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    empty: bool = False

    @property
    def dim(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class Featurizer:
    mode: str
    table: EmbeddingTable | None = None
    hashed_dim: int = 4096

    def __post_init__(self):
        if self.mode not in FEATURIZER_MODES:
            raise ValueError(f"unknown featurizer mode {self.mode!r}")
        if self.mode in ("mean-embedding", "concat-both") and self.table is None:
            raise ValueError(f"{self.mode} needs an embedding table")
        if self.hashed_dim <= 0:
            raise ValueError("hashed dimension must be positive")

    @property
    def dim(self) -> int:
        if self.mode == "mean-embedding":
            return self.table.dim
        if self.mode == "hashed-bow":
            return self.hashed_dim
        return self.table.dim + self.hashed_dim

    @property
    def id(self) -> str:
        if self.mode == "mean-embedding":
            return f"mean-embedding(table={self.table.name},dim={self.table.dim})"
        if self.mode == "hashed-bow":
            return f"hashed-bow(dim={self.hashed_dim})"
        return (
            f"concat-both(table={self.table.name},dim={self.table.dim}"
            f"+{self.hashed_dim})"
        )

    def __call__(self, view: LimitedView) -> FeatureVector:
        return featurize(view, self)


def _mean_embedding(words: tuple[str, ...], table: EmbeddingTable) -> tuple[np.ndarray, bool]:
    # Sorted-distinct accumulation keeps features independent of word order.
    total = np.zeros(table.dim, dtype=np.float64)
    hits = 0
    counts = Counter(words)
    for word in sorted(counts):
        vector = table.get(word)
        if vector is not None:
            total += counts[word] * vector
            hits += counts[word]
    if hits == 0:
        return total, True
    return total / hits, False


def _hashed_bow(words: tuple[str, ...], dim: int) -> tuple[np.ndarray, bool]:
    values = np.zeros(dim, dtype=np.float64)
    for word in words:
        values[fnv1a64(word) % dim] += 1.0
    norm = float(np.linalg.norm(values))
    if norm == 0.0:
        return values, True
    return values / norm, False


def featurize(view: LimitedView, featurizer: Featurizer) -> FeatureVector:
    """Feature vector for a view; empty views yield a flagged zero vector."""
    if featurizer.mode == "mean-embedding":
        values, empty = _mean_embedding(view.words, featurizer.table)
    elif featurizer.mode == "hashed-bow":
        values, empty = _hashed_bow(view.words, featurizer.hashed_dim)
    else:
        mean, e1 = _mean_embedding(view.words, featurizer.table)
        bow, e2 = _hashed_bow(view.words, featurizer.hashed_dim)
        values, empty = np.concatenate([mean, bow]), e1 and e2
    return FeatureVector(values=values, empty=empty or len(view.words) == 0)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 5e-5
    epsilon: float = 1e-8
    beta1: float = 0.9
    beta2: float = 0.999
    epochs: int = 20
    batch_size: int = 32
    seed: int = 0
    l2: float = 0.0

    def __post_init__(self):
        if self.learning_rate <= 0 or self.epsilon <= 0:
            raise ValueError("learning rate and epsilon must be positive")
        if not (0 < self.beta1 < 1 and 0 < self.beta2 < 1):
            raise ValueError("beta1 and beta2 must lie in (0, 1)")
        if self.epochs < 0 or self.batch_size <= 0 or self.l2 < 0:
            raise ValueError("invalid epochs/batch_size/l2")


@dataclass
class ClassifierModel:
    weights: np.ndarray  # (2, dim)
    bias: np.ndarray  # (2,)
    featurizer_id: str
    classes: tuple[int, int] = (0, 1)
    train_loss: float = float("nan")
    extra: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return int(self.weights.shape[1])


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    expd = np.exp(shifted)
    return expd / expd.sum(axis=-1, keepdims=True)


def ce_loss_and_grad(
    weights: np.ndarray,
    bias: np.ndarray,
    features: np.ndarray,
    labels: np.ndarray,
    l2: float = 0.0,
):
    """Mean cross-entropy (natural log) and its analytic gradient."""
    n = features.shape[0]
    logits = features @ weights.T + bias
    probs = _softmax(logits)
    eps = np.finfo(np.float64).tiny
    loss = float(-np.mean(np.log(probs[np.arange(n), labels] + eps)))
    if l2 > 0:
        loss += 0.5 * l2 * float(np.sum(weights * weights))

    delta = probs
    delta[np.arange(n), labels] -= 1.0
    delta /= n
    grad_w = delta.T @ features
    if l2 > 0:
        grad_w = grad_w + l2 * weights
    grad_b = delta.sum(axis=0)
    return loss, grad_w, grad_b


def train(
    features: np.ndarray,
    labels: np.ndarray,
    config: TrainConfig,
    featurizer_id: str = "",
) -> ClassifierModel:
    """Fit the softmax-linear model; deterministic for a given (data, config)."""
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if features.ndim != 2 or features.shape[0] == 0:
        raise ValueError("need a non-empty 2-d feature matrix")
    if features.shape[0] != labels.shape[0]:
        raise ValueError("features and labels disagree on sample count")
    present = set(int(v) for v in np.unique(labels))
    if not present.issubset({0, 1}):
        raise ValueError(f"labels must be 0/1, got {sorted(present)}")
    if len(present) < 2:
        raise ValueError("training needs both classes present")

    n, dim = features.shape
    weights = np.zeros((2, dim), dtype=np.float64)
    bias = np.zeros(2, dtype=np.float64)
    m_w = np.zeros_like(weights)
    v_w = np.zeros_like(weights)
    m_b = np.zeros_like(bias)
    v_b = np.zeros_like(bias)

    rng = np.random.default_rng(config.seed)
    step = 0
    for _ in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            _, grad_w, grad_b = ce_loss_and_grad(
                weights, bias, features[batch], labels[batch], l2=config.l2
            )
            step += 1
            correction1 = 1.0 - config.beta1**step
            correction2 = 1.0 - config.beta2**step

            m_w = config.beta1 * m_w + (1 - config.beta1) * grad_w
            v_w = config.beta2 * v_w + (1 - config.beta2) * grad_w**2
            weights = weights - config.learning_rate * (m_w / correction1) / (
                np.sqrt(v_w / correction2) + config.epsilon
            )

            m_b = config.beta1 * m_b + (1 - config.beta1) * grad_b
            v_b = config.beta2 * v_b + (1 - config.beta2) * grad_b**2
            bias = bias - config.learning_rate * (m_b / correction1) / (
                np.sqrt(v_b / correction2) + config.epsilon
            )

    final_loss, _, _ = ce_loss_and_grad(weights, bias, features, labels, l2=0.0)
    return ClassifierModel(
        weights=weights, bias=bias, featurizer_id=featurizer_id, train_loss=final_loss
    )


def predict(model: ClassifierModel, feature: FeatureVector | np.ndarray):
    """Predicted label and logits; ties go to label 0."""
    values = feature.values if isinstance(feature, FeatureVector) else np.asarray(feature)
    if values.shape != (model.dim,):
        raise ValueError(f"feature dim {values.shape} does not match model dim ({model.dim},)")
    logits = model.weights @ values + model.bias
    return int(np.argmax(logits)), logits


def predict_checked(model: ClassifierModel, feature: FeatureVector, featurizer_id: str):
    if model.featurizer_id and model.featurizer_id != featurizer_id:
        raise ValueError(
            f"model was trained with featurizer {model.featurizer_id!r}, "
            f"refusing features from {featurizer_id!r}"
        )
    return predict(model, feature)


def save_model(model: ClassifierModel, path: str | Path) -> None:
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "featurizer_id": model.featurizer_id,
        "classes": list(model.classes),
        "dim": model.dim,
        "weights": model.weights.tolist(),
        "bias": model.bias.tolist(),
        "train_loss": model.train_loss,
    }
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> ClassifierModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version!r}")
    weights = np.asarray(payload["weights"], dtype=np.float64)
    bias = np.asarray(payload["bias"], dtype=np.float64)
    if weights.shape != (2, payload["dim"]) or bias.shape != (2,):
        raise ValueError("model file has inconsistent dimensions")
    return ClassifierModel(
        weights=weights,
        bias=bias,
        featurizer_id=payload["featurizer_id"],
        classes=tuple(payload["classes"]),
        train_loss=payload.get("train_loss", float("nan")),
    )
