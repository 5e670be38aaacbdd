import json
import shutil
from importlib import resources

import pytest

from cmforge.cli import main
from pipeline import GOLDEN, run_pipeline


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def work(tmp_path, monkeypatch):
    toy = resources.files("cmforge") / "data" / "toy"
    for name in ("mono.tsv", "emoji.tsv", "ncm.jsonl", "bitext_toy.tsv",
                 "neutral_candidates.tsv", "scores.tsv"):
        with resources.as_file(toy / name) as p:
            shutil.copy(p, tmp_path / name)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_no_args_is_usage(capsys):
    code, out, err = run(capsys)
    assert code == 2
    assert "usage" in err


def test_bad_flag_is_usage(capsys):
    assert run(capsys, "cmi")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "ngram")[0] == 2


def test_missing_file_names_path(capsys, work):
    code, out, err = run(capsys, "cmi", "--in", "missing.jsonl")
    assert code == 1
    assert "missing.jsonl" in err
    assert out == ""


def test_report_shape(capsys, work):
    code, out, _ = run(capsys, "preprocess", "--in", "mono.tsv", "--emoji", "emoji.tsv",
                       "--out", "clean.jsonl")
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "preprocess"
    assert rep["counts"] == {"rows": 30, "sentences": 29, "dropped_empty": 1}
    assert set(rep["inputs"]) == {"mono.tsv", "emoji.tsv"}
    assert len(rep["outputs"]["clean.jsonl"]) == 64
    assert rep["config"]["seed"] == 0 and "wall_time" in rep


def test_data_error_names_line(capsys, work):
    (work / "bad.tsv").write_text("a\tok\tpositive\nb\tbroken\n")
    code, _, err = run(capsys, "preprocess", "--in", "bad.tsv", "--out", "x.jsonl")
    assert code == 1
    assert "bad.tsv:2" in err


def test_mine_neutral(capsys, work):
    assert run(capsys, "preprocess", "--in", "neutral_candidates.tsv", "--out", "c.jsonl")[0] == 0
    code, out, _ = run(capsys, "mine-neutral", "--in", "c.jsonl", "--scores", "scores.tsv",
                       "--out", "n.jsonl")
    assert code == 0
    assert json.loads(out)["counts"] == {"candidates": 6, "kept": 3}


def test_cmi_and_stats(capsys, work):
    code, out, _ = run(capsys, "cmi", "--in", "ncm.jsonl", "--report", "r.json")
    assert code == 0
    report = json.loads((work / "r.json").read_text())
    assert report["n"] == 30
    assert json.loads(out)["counts"]["mean_cmi"] == pytest.approx(report["mean"])
    code, out, _ = run(capsys, "stats", "--in", "ncm.jsonl")
    assert code == 0
    assert json.loads(out)["counts"]["sentences"] == 30


def test_calibrate_and_generate_tau_from(capsys, work):
    run(capsys, "preprocess", "--in", "mono.tsv", "--out", "clean.jsonl")
    code, out, _ = run(capsys, "calibrate", "--source", "clean.jsonl", "--target-cmi", "20",
                       "--strategy", "word", "--grid", "0:0.5:0.1", "--samples", "100",
                       "--out", "calib.json")
    assert code == 0
    tau = json.loads((work / "calib.json").read_text())["tau_star"]
    code, out, _ = run(capsys, "generate", "--source", "clean.jsonl", "--strategy", "word",
                       "--tau-from", "calib.json", "--out", "g.jsonl")
    assert code == 0
    assert json.loads(out)["counts"]["generated"] == 29
    first = (work / "g.jsonl").read_text().splitlines()[1]
    assert json.loads(first)["gen"]["params"]["tau"] == tau


def test_generate_needs_tau(capsys, work):
    run(capsys, "preprocess", "--in", "mono.tsv", "--out", "clean.jsonl")
    code, _, err = run(capsys, "generate", "--source", "clean.jsonl", "--strategy", "word",
                       "--out", "g.jsonl")
    assert code == 1 and "--tau" in err


def test_generate_thread_invariance(capsys, work):
    run(capsys, "preprocess", "--in", "mono.tsv", "--out", "clean.jsonl")
    for threads, name in (("1", "a.jsonl"), ("3", "b.jsonl")):
        assert run(capsys, "generate", "--source", "clean.jsonl", "--strategy", "phrase",
                   "--tau", "0.3", "--count", "200", "--seed", "5", "--threads", threads,
                   "--out", name)[0] == 0
    assert (work / "a.jsonl").read_bytes() == (work / "b.jsonl").read_bytes()


def test_align_build_dict(capsys, work):
    assert run(capsys, "align", "--bitext", "bitext_toy.tsv", "--out", "links.txt")[0] == 0
    assert (work / "links.txt").read_text() == "0-0 1-1\n0-0\n"
    code, out, _ = run(capsys, "build-dict", "--bitext", "bitext_toy.tsv", "--links", "links.txt",
                       "--out", "d.tsv")
    assert code == 0
    assert "food\tkhana\t1.0\n" in (work / "d.tsv").read_text()


def test_tag_with_file(capsys, work):
    (work / "c.jsonl").write_text('{"id": "s1", "label": "positive", "tokens": '
                                  '[{"t": "i"}, {"t": "love"}, {"t": "food"}]}\n')
    (work / "t.tsv").write_text("s1\tPRP VBP NN\n")
    assert run(capsys, "tag", "--in", "c.jsonl", "--tags", "t.tsv", "--out", "o.jsonl")[0] == 0
    (work / "t.tsv").write_text("s1\tPRP VBP\n")
    code, _, err = run(capsys, "tag", "--in", "c.jsonl", "--tags", "t.tsv", "--out", "o.jsonl")
    assert code == 1 and "s1" in err


def test_ngram_train_generate(capsys, work):
    code, _, _ = run(capsys, "ngram", "train", "--in", "ncm.jsonl", "--label", "positive",
                     "--order", "3", "--out", "p3.model")
    assert code == 0
    code, out, _ = run(capsys, "ngram", "generate", "--models", "p3.model", "--count", "20",
                       "--seed", "7", "--out", "gen.jsonl")
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "ngram generate"
    assert rep["counts"]["sentences"] <= 20


def test_curriculum_too_small(capsys, work):
    code, _, err = run(capsys, "curriculum", "--scm", "ncm.jsonl", "--ncm", "ncm.jsonl",
                       "--out-dir", "run")
    assert code == 1


def test_golden_pipeline(tmp_path):
    codes, digests = run_pipeline(tmp_path)
    assert codes == [0] * len(codes)
    assert digests == json.loads(GOLDEN.read_text())
