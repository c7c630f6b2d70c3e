import json

import pytest

from leantext.cli import main


def run(args):
    return main([str(a) for a in args])


def manifest_of(out_dir):
    return json.loads((out_dir / "manifest.json").read_text())


def write_spec(path, planted, name, view, k=None, trials=2, epochs=2):
    lines = [
        f"name = {name}",
        f"corpus = {planted.corpus}",
        f"view = {view}",
        "featurizer = hashed-bow",
        "hashed_dim = 256",
        f"trials = {trials}",
        "seed = 4",
        f"epochs = {epochs}",
        "learning_rate = 0.05",
        "batch_size = 64",
        f"embeddings = {planted.embeddings}",
    ]
    if k is not None:
        lines.append(f"k = {k}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_usage_error_exits_nonzero(capsys):
    assert run(["evaluate"]) == 2
    assert "usage" in capsys.readouterr().err


def test_unknown_flag_exits_nonzero():
    assert run(["ingest", "--corpus", "x", "--out", "y", "--bogus"]) == 2


def test_missing_corpus_file_reports_error(tmp_path, capsys):
    code = run(["ingest", "--corpus", tmp_path / "absent.jsonl", "--out", tmp_path / "out"])
    assert code == 1
    assert "not found" in capsys.readouterr().err


def test_ingest_writes_splits_and_manifest(sample200, tmp_path):
    out = tmp_path / "out"
    code = run(["ingest", "--corpus", sample200.corpus, "--seed", 3, "--out", out])
    assert code == 0
    names = {p.name for p in out.iterdir()}
    assert {"sample200.train.jsonl", "sample200.val.jsonl", "sample200.test.jsonl",
            "sample200.split.json", "manifest.json"} == names
    manifest = manifest_of(out)
    assert manifest["tool"] == "leantext"
    assert manifest["artifacts"] == sorted(n for n in names if n != "manifest.json")
    assert any(str(sample200.corpus) in i["path"] for i in manifest["inputs"])


def test_extract_keyword_grid(sample200, tmp_path):
    out = tmp_path / "views"
    code = run([
        "extract", "--corpus", sample200.corpus, "--kind", "keyword",
        "--k", 0.10, "--k", 0.15, "--embeddings", sample200.embeddings, "--out", out,
    ])
    assert code == 0
    assert (out / "views_keyword_k0.10.jsonl").exists()
    assert (out / "views_keyword_k0.15.jsonl").exists()
    line = (out / "views_keyword_k0.10.jsonl").read_text().splitlines()[0]
    record = json.loads(line)
    assert record["kind"] == "keyword" and record["k"] == 0.10 and record["words"]


def test_extract_invalid_k_rejected(sample200, tmp_path, capsys):
    code = run([
        "extract", "--corpus", sample200.corpus, "--kind", "keyword",
        "--k", 1.5, "--embeddings", sample200.embeddings, "--out", tmp_path / "o",
    ])
    assert code == 1
    assert "invalid k" in capsys.readouterr().err


def test_extract_multimodal(sample200, tmp_path):
    out = tmp_path / "mm"
    code = run([
        "extract", "--corpus", sample200.corpus, "--kind", "keyword+title",
        "--k", 0.10, "--embeddings", sample200.embeddings,
        "--gazetteer", sample200.gazetteer, "--out", out,
    ])
    assert code == 0
    record = json.loads((out / "views_keyword_title_k0.10.jsonl").read_text().splitlines()[0])
    assert record["provenance"] == ["keyword", "title"]


def test_density_command(sample200, tmp_path):
    out = tmp_path / "density"
    code = run([
        "density", "--corpus", sample200.corpus, "--embeddings", sample200.embeddings,
        "--gazetteer", sample200.gazetteer, "--k", 0.10, "--out", out,
    ])
    assert code == 0
    lines = (out / "density.csv").read_text().splitlines()
    assert lines[0] == "kind,k,mean_entropy,mean_tokens,n_articles"
    kinds = [line.split(",")[0] for line in lines[1:]]
    assert kinds == ["fulltext", "pos", "keyword", "ner", "title", "author"]
    assert (out / "density.tsv").exists()


def test_train_command(planted1000, tmp_path):
    spec = write_spec(tmp_path / "exp.spec", planted1000, "kw", "keyword", k=0.10)
    out = tmp_path / "model"
    assert run(["train", "--spec", spec, "--out", out]) == 0
    model = json.loads((out / "model.json").read_text())
    assert model["featurizer_id"].startswith("hashed-bow")
    summary = json.loads((out / "train_summary.json").read_text())
    assert set(summary) >= {"train_loss", "val", "test"}


def test_evaluate_command(planted1000, tmp_path):
    spec = write_spec(tmp_path / "exp.spec", planted1000, "kw", "keyword", k=0.10)
    out = tmp_path / "eval"
    assert run(["evaluate", "--spec", spec, "--out", out]) == 0
    assert "| kw | keyword@0.10 |" in (out / "summary.md").read_text()
    assert (out / "trials.csv").read_text().count("\n") == 3  # header + 2 trials


def test_compare_command(planted1000, tmp_path):
    base = write_spec(tmp_path / "base.spec", planted1000, "base", "fulltext")
    kw = write_spec(tmp_path / "kw.spec", planted1000, "kw", "keyword", k=0.10)
    out = tmp_path / "cmp"
    assert run(["compare", "--spec", base, "--spec", kw, "--baseline", "base",
                "--out", out]) == 0
    body = (out / "comparison.md").read_text()
    assert "Baseline: base" in body


def test_report_deterministic_and_curves(planted1000, tmp_path):
    base = write_spec(tmp_path / "base.spec", planted1000, "base", "fulltext")
    k10 = write_spec(tmp_path / "k10.spec", planted1000, "k10", "keyword", k=0.10)
    k20 = write_spec(tmp_path / "k20.spec", planted1000, "k20", "keyword", k=0.20)
    args = ["report", "--spec", base, "--spec", k10, "--spec", k20,
            "--baseline", "base"]
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert run(args + ["--out", out1]) == 0
    assert run(args + ["--out", out2]) == 0

    files1 = sorted(p.name for p in out1.iterdir())
    assert files1 == ["manifest.json", "ratio_vs_k_keyword.tsv", "report.md", "trials.csv"]
    assert files1 == sorted(p.name for p in out2.iterdir())
    for name in files1:
        if name == "manifest.json":
            # Command line and config hash differ by --out; the rest must match.
            m1, m2 = manifest_of(out1), manifest_of(out2)
            for volatile in ("timestamp", "command", "config_hash"):
                m1.pop(volatile), m2.pop(volatile)
            assert m1 == m2
        else:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    curve = (out1 / "ratio_vs_k_keyword.tsv").read_text().splitlines()
    assert curve[1].startswith("0.10\t") and curve[2].startswith("0.20\t")


def test_failure_cleans_partial_outputs(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "1", "text": "ok text", "label": 1}\n'
                   '{"id": "2", "text": "fine", "label": 7}\n', encoding="utf-8")
    out = tmp_path / "out"
    code = run(["ingest", "--corpus", bad, "--out", out])
    assert code == 1
    assert "label" in capsys.readouterr().err
    leftovers = [p for p in out.iterdir()] if out.exists() else []
    assert leftovers == []


def test_version_flag(capsys):
    assert run(["--version"]) == 0
    assert "leantext" in capsys.readouterr().out
