"""Independent reference computations the tests check the package against.

Everything here is deliberately written the slow, obvious way (pure
Python loops, exhaustive pair counting, exact fractions, high-precision
special functions) and shares no code with the package internals.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath


def cosine_plain(a, b) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(y * y for y in b))
    return dot / (norm_a * norm_b)


def mmr_replay(doc, candidate_words, budget, diversity, vectors) -> list[str]:
    """Step-by-step replay of the greedy selection with explicit nested loops.

    At every step, scan all remaining candidates, score each as
    diversity * sim(doc, w) - (1 - diversity) * max over picked of
    sim(w, r) (0 when nothing is picked yet), and take the best; ties go
    to the lexicographically smallest word.
    """
    picked: list[str] = []
    remaining = sorted(candidate_words)
    while len(picked) < budget and remaining:
        best_word = None
        best_score = None
        for word in remaining:
            relevance = cosine_plain(doc, vectors[word])
            redundancy = 0.0
            if picked:
                redundancy = max(cosine_plain(vectors[word], vectors[r]) for r in picked)
            score = diversity * relevance - (1.0 - diversity) * redundancy
            if best_score is None or score > best_score:
                best_score = score
                best_word = word
        picked.append(best_word)
        remaining.remove(best_word)
    return picked


def budget_exact(article_len: int, k) -> int:
    """floor(article_len * k) in exact arithmetic (k given as str or Fraction)."""
    return int(Fraction(article_len) * Fraction(str(k)))


def accuracy_bruteforce(predictions, labels) -> float:
    return sum(1 for p, y in zip(predictions, labels) if p == y) / len(labels)


def macro_f1_bruteforce(predictions, labels) -> float:
    total = 0.0
    for cls in (0, 1):
        tp = fp = fn = 0
        for p, y in zip(predictions, labels):
            if p == cls and y == cls:
                tp += 1
            elif p == cls and y != cls:
                fp += 1
            elif p != cls and y == cls:
                fn += 1
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        total += 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return total / 2


def auc_bruteforce(scores, labels):
    """Concordant pairs plus half the ties, over all positive x negative pairs."""
    positives = [s for s, y in zip(scores, labels) if y == 1]
    negatives = [s for s, y in zip(scores, labels) if y == 0]
    if not positives or not negatives:
        return None
    total = 0.0
    for sp in positives:
        for sn in negatives:
            if sp > sn:
                total += 1.0
            elif sp == sn:
                total += 0.5
    return total / (len(positives) * len(negatives))


def welch_p_mpmath(group_a, group_b) -> float:
    """Two-tailed Welch p-value at 50 decimal digits of working precision."""
    with mpmath.workdps(50):
        a = [mpmath.mpf(repr(x)) for x in group_a]
        b = [mpmath.mpf(repr(x)) for x in group_b]
        na, nb = len(a), len(b)
        mean_a = mpmath.fsum(a) / na
        mean_b = mpmath.fsum(b) / nb
        var_a = mpmath.fsum((x - mean_a) ** 2 for x in a) / (na - 1)
        var_b = mpmath.fsum((x - mean_b) ** 2 for x in b) / (nb - 1)
        if var_a == 0 and var_b == 0:
            return 1.0 if mean_a == mean_b else 0.0
        se2 = var_a / na + var_b / nb
        t = (mean_a - mean_b) / mpmath.sqrt(se2)
        df = se2**2 / ((var_a / na) ** 2 / (na - 1) + (var_b / nb) ** 2 / (nb - 1))
        x = df / (df + t**2)
        p = mpmath.betainc(df / 2, mpmath.mpf(1) / 2, 0, x, regularized=True)
        return float(p)


def greedy_segments_replay(word: str, vocab) -> list[str]:
    """Longest-prefix-in-vocabulary segmentation, one char on no match."""
    vocab = set(vocab)
    pieces = []
    pos = 0
    while pos < len(word):
        best = None
        for end in range(len(word), pos, -1):
            if word[pos:end] in vocab:
                best = word[pos:end]
                break
        if best is None:
            best = word[pos]
        pieces.append(best)
        pos += len(best)
    return pieces


def central_difference_gradient(loss_fn, params, step=1e-6):
    """Gradient of a scalar function by central differences, one entry at a time."""
    import numpy as np

    params = np.asarray(params, dtype=np.float64)
    grad = np.zeros_like(params)
    flat = params.ravel()
    flat_grad = grad.ravel()
    for i in range(flat.size):
        original = flat[i]
        flat[i] = original + step
        up = loss_fn(params)
        flat[i] = original - step
        down = loss_fn(params)
        flat[i] = original
        flat_grad[i] = (up - down) / (2 * step)
    return grad
