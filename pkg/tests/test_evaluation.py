import random

import numpy as np
import pytest

from leantext.evaluation import (
    EvalSummary,
    ExperimentSpec,
    MetricSet,
    accuracy_ratio,
    attach_comparisons,
    format_mean_std,
    metrics,
    ratio_curves,
    run_trials,
    significance,
    summaries_markdown,
    trials_csv,
    welch_t_test,
)

from oracles import accuracy_bruteforce, auc_bruteforce, macro_f1_bruteforce, welch_p_mpmath


# --- metrics ----------------------------------------------------------------

def test_perfect_predictions():
    m = metrics([1, 0, 1, 0], [0.9, 0.1, 0.8, 0.2], [1, 0, 1, 0])
    assert (m.accuracy, m.macro_f1, m.auc) == (1.0, 1.0, 1.0)


def test_constant_scores_give_half_auc():
    m = metrics([1, 1, 0, 0], [0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0])
    assert m.auc == pytest.approx(0.5, abs=1e-12)


def test_hand_derived_mixed_case():
    m = metrics([1, 1, 0, 0], [0.9, 0.8, 0.3, 0.2], [1, 0, 0, 1])
    assert m.accuracy == pytest.approx(0.5, abs=1e-12)
    assert m.macro_f1 == pytest.approx(0.5, abs=1e-12)
    assert m.auc == pytest.approx(0.5, abs=1e-12)


def test_single_class_labels_leave_auc_undefined():
    m = metrics([1, 1], [0.9, 0.8], [1, 1])
    assert m.auc is None
    assert m.accuracy == 1.0


def test_metrics_match_bruteforce_on_random_instances():
    rng = random.Random(16)
    for _ in range(200):
        n = rng.randint(1, 100)
        labels = [rng.randint(0, 1) for _ in range(n)]
        predictions = [rng.randint(0, 1) for _ in range(n)]
        # Coarse score grid forces plenty of ties.
        scores = [rng.choice([0.1, 0.25, 0.5, 0.75, 0.9]) for _ in range(n)]
        m = metrics(predictions, scores, labels)
        assert m.accuracy == pytest.approx(accuracy_bruteforce(predictions, labels), abs=1e-12)
        assert m.macro_f1 == pytest.approx(macro_f1_bruteforce(predictions, labels), abs=1e-12)
        expected_auc = auc_bruteforce(scores, labels)
        if expected_auc is None:
            assert m.auc is None
        else:
            assert m.auc == pytest.approx(expected_auc, abs=1e-12)


def test_metrics_permutation_invariant():
    rng = random.Random(17)
    labels = [rng.randint(0, 1) for _ in range(30)]
    predictions = [rng.randint(0, 1) for _ in range(30)]
    scores = [rng.random() for _ in range(30)]
    base = metrics(predictions, scores, labels)
    order = list(range(30))
    for _ in range(5):
        rng.shuffle(order)
        permuted = metrics([predictions[i] for i in order], [scores[i] for i in order],
                           [labels[i] for i in order])
        assert permuted == base


def test_metric_set_validates_range():
    with pytest.raises(ValueError):
        MetricSet(accuracy=1.5, macro_f1=0.5, auc=0.5)


# --- significance -----------------------------------------------------------

def test_identical_groups_p_one():
    p, marker = significance([0.9, 0.9, 0.9], [0.9, 0.9, 0.9])
    assert p == 1.0
    assert marker == ""


def test_separated_groups_flagged_highly_significant():
    jitter = [0.0, 1e-6, -1e-6, 2e-6, -2e-6]
    group_a = [0.90 + j for j in jitter]
    group_b = [0.80 + j for j in jitter]
    p, marker = significance(group_a, group_b)
    assert p < 0.01
    assert marker == "**"


def test_welch_symmetry():
    rng = random.Random(18)
    for _ in range(20):
        a = [rng.random() for _ in range(5)]
        b = [rng.random() for _ in range(5)]
        assert welch_t_test(a, b) == welch_t_test(b, a)


def test_welch_matches_high_precision_reference():
    rng = random.Random(19)
    for _ in range(50):
        na, nb = rng.randint(2, 8), rng.randint(2, 8)
        a = [round(rng.uniform(0.5, 1.0), 4) for _ in range(na)]
        b = [round(rng.uniform(0.5, 1.0), 4) for _ in range(nb)]
        if len(set(a)) == 1 and len(set(b)) == 1:
            a[0] += 0.01
        p = welch_t_test(a, b)
        assert p == pytest.approx(welch_p_mpmath(a, b), abs=1e-6)


def test_marker_thresholds():
    from leantext.evaluation import significance_marker

    assert significance_marker(0.005) == "**"
    assert significance_marker(0.01) == "*"
    assert significance_marker(0.049) == "*"
    assert significance_marker(0.05) == ""


def test_too_few_observations_rejected():
    with pytest.raises(ValueError):
        welch_t_test([0.9], [0.8, 0.7])


# --- accuracy ratio ---------------------------------------------------------

def test_accuracy_ratio_examples():
    assert accuracy_ratio(0.95, 0.95) == 1.0
    assert accuracy_ratio(0.475, 0.95) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        accuracy_ratio(0.5, 0.0)


# --- formatting -------------------------------------------------------------

def test_mean_std_format_matches_table_style():
    assert format_mean_std(0.9555, 0.0046) == "95.55±0.0046"
    assert format_mean_std(0.9555, 0.0046, "**") == "95.55**±0.0046"


# --- run_trials -------------------------------------------------------------

def trial_spec(planted1000, **overrides):
    base = dict(
        name="kw", corpus=str(planted1000.corpus), view="keyword", k=0.10,
        featurizer="hashed-bow", hashed_dim=512, trials=3, seed=5,
        epochs=6, learning_rate=0.05, batch_size=64,
        embeddings=str(planted1000.embeddings),
    )
    base.update(overrides)
    return ExperimentSpec(**base)


@pytest.fixture(scope="module")
def small_resources(planted1000):
    # A 120-article slice keeps run_trials unit tests quick.
    from leantext.corpus import Corpus, load_corpus
    from leantext.evaluation import Resources
    from leantext.classify import Featurizer
    from leantext.views import ViewBuilder
    from leantext.embedding import load_table

    corpus = load_corpus(planted1000.corpus)
    sliced = Corpus(name="slice", articles=corpus.articles[:120],
                    metadata_fields=corpus.metadata_fields)
    table = load_table(planted1000.embeddings)
    return Resources(
        corpus=sliced,
        builder=ViewBuilder(table=table),
        featurizer=Featurizer(mode="hashed-bow", hashed_dim=512),
    )


def test_degenerate_identical_trials_have_zero_std(planted1000, small_resources):
    spec = trial_spec(planted1000, trials=3, seed_stride=0, epochs=2)
    summary = run_trials(spec, resources=small_resources)
    assert summary.std_accuracy == 0.0
    assert len({m.accuracy for m in summary.trials}) == 1


def test_single_trial_flagged(planted1000, small_resources):
    spec = trial_spec(planted1000, trials=1, epochs=2)
    summary = run_trials(spec, resources=small_resources)
    assert summary.std_accuracy == 0.0
    assert "single-trial" in summary.flags


def test_run_trials_reproducible(planted1000, small_resources):
    spec = trial_spec(planted1000, trials=2, epochs=2)
    first = run_trials(spec, resources=small_resources)
    second = run_trials(spec, resources=small_resources)
    assert first == second


def test_trial_count_and_variation(planted1000, small_resources):
    spec = trial_spec(planted1000, trials=3, epochs=2)
    summary = run_trials(spec, resources=small_resources)
    assert len(summary.trials) == 3
    assert summary.std_accuracy >= 0.0


# --- comparisons & outputs --------------------------------------------------

def summary_with(name, accs, k=None, view_label="keyword@0.10"):
    trials = tuple(MetricSet(accuracy=a, macro_f1=a, auc=a) for a in accs)
    mean = sum(accs) / len(accs)
    std = (sum((a - mean) ** 2 for a in accs) / (len(accs) - 1)) ** 0.5 if len(accs) > 1 else 0.0
    return EvalSummary(experiment=name, view_label=view_label, k=k, trials=trials,
                       mean_accuracy=mean, std_accuracy=std)


def test_attach_comparisons_sets_markers_and_ratios():
    baseline = summary_with("base", [0.95, 0.951, 0.949, 0.95, 0.95], view_label="fulltext")
    lower = summary_with("kw", [0.85, 0.851, 0.849, 0.85, 0.85], k=0.10)
    out = attach_comparisons([baseline, lower], "base")
    by_name = {s.experiment: s for s in out}
    assert by_name["base"].accuracy_ratio == pytest.approx(1.0)
    assert by_name["kw"].significance_vs_baseline == "**"
    assert by_name["kw"].accuracy_ratio == pytest.approx(0.85 / 0.95, rel=1e-3)


def test_markdown_and_csv_render():
    baseline = summary_with("base", [0.95, 0.96, 0.94], view_label="fulltext")
    other = summary_with("kw", [0.90, 0.91, 0.89], k=0.10)
    summaries = attach_comparisons([baseline, other], "base")
    md = summaries_markdown(summaries, baseline_name="base")
    assert "| base | fulltext |" in md
    assert "Welch" in md
    csv = trials_csv(summaries)
    assert csv.splitlines()[0] == "experiment,view,trial,accuracy,macro_f1,auc"
    assert len(csv.splitlines()) == 7


def test_ratio_curves_grouped_by_family():
    base = summary_with("base", [0.95, 0.95, 0.95], view_label="fulltext")
    k10 = summary_with("kw10", [0.90, 0.90, 0.90], k=0.10, view_label="keyword@0.10")
    k20 = summary_with("kw20", [0.92, 0.92, 0.92], k=0.20, view_label="keyword@0.20")
    curves = ratio_curves(attach_comparisons([base, k10, k20], "base"))
    assert set(curves) == {"keyword"}
    lines = curves["keyword"].splitlines()
    assert lines[1].startswith("0.10\t")
    assert lines[2].startswith("0.20\t")


def test_spec_file_roundtrip(tmp_path, planted1000):
    spec_path = tmp_path / "exp.spec"
    spec_path.write_text(
        f"""
name = kw-test
corpus = {planted1000.corpus}
view = keyword
k = 0.10
lambda = 0.5          # diversity
featurizer = hashed-bow
hashed_dim = 256
trials = 2
seed = 3
epochs = 2
learning_rate = 0.05
embeddings = {planted1000.embeddings}
ratios = 0.5,0.25,0.25
stratify = true
""",
        encoding="utf-8",
    )
    spec = ExperimentSpec.from_file(spec_path)
    assert spec.name == "kw-test"
    assert spec.diversity == 0.5
    assert spec.ratios == (0.5, 0.25, 0.25)
    assert spec.k == 0.10


def test_spec_file_unknown_key(tmp_path):
    spec_path = tmp_path / "exp.spec"
    spec_path.write_text("name = x\ncorpus = c\nview = fulltext\nbogus = 1\n", encoding="utf-8")
    with pytest.raises(ValueError, match="bogus"):
        ExperimentSpec.from_file(spec_path)
