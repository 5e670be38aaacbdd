import json

import pytest

from cmforge.corpus import Corpus, Lang, Sentence, Token, read_corpus
from cmforge.curriculum import build_schedule, build_stages
from cmforge.errors import ConfigError, ForgeError


def _corpus(prefix, n, pair=("en", "hi")):
    return Corpus(pair, [
        Sentence(f"{prefix}{i}", [Token(f"w{i % 7}", Lang.MATRIX), Token("!", Lang.UNIV)],
                 ["positive", "negative", "neutral"][i % 3])
        for i in range(n)
    ])


def test_scaled_sizes_and_nesting(tmp_path):
    scm, ncm = _corpus("scm", 400, ("en", "GIB")), _corpus("ncm", 30)
    m = build_schedule(scm, ncm, [300, 100, 30, 10, 0], epochs=3, seed=7, out_dir=tmp_path)
    sizes = [len(read_corpus(tmp_path / s.file)) for s in m.stages]
    assert sizes == [330, 130, 60, 40, 30]
    ncm_ids = set(ncm.ids())
    prev = None
    for st in m.stages:
        ids = read_corpus(tmp_path / st.file).ids()
        assert len(ids) == len(set(ids))
        assert ncm_ids <= set(ids)
        scm_part = set(ids) - ncm_ids
        assert len(scm_part) == st.scm_count
        if prev is not None:
            assert scm_part <= prev
        prev = scm_part


def test_manifest_fields(tmp_path):
    m = build_schedule(_corpus("s", 20), _corpus("n", 5), [10, 0], seed=1, out_dir=tmp_path,
                       scm_source="scm.jsonl", ncm_source="ncm.jsonl")
    d = json.loads((tmp_path / "manifest.json").read_text())
    assert d == m.to_json()
    assert [s["epochs"] for s in d["stages"]] == [3, 3]
    assert d["hyper"]["learning_rate"] == 4e-6
    assert d["hyper"]["max_sequence_length"] == 56
    assert d["scm_source"] == "scm.jsonl"


def test_spanglish_sequence_length():
    m = build_schedule(_corpus("s", 3), _corpus("n", 2, ("en", "es")), [1, 0])
    assert m.hyper["max_sequence_length"] == 40


def test_single_stage_baseline(tmp_path):
    m = build_schedule(Corpus(("en", "GIB")), _corpus("n", 5), [0], out_dir=tmp_path)
    assert len(m.stages) == 1
    assert sorted(read_corpus(tmp_path / "stage0.jsonl").ids()) == sorted(_corpus("n", 5).ids())


def test_byte_identical(tmp_path):
    scm, ncm = _corpus("s", 50), _corpus("n", 10)
    build_schedule(scm, ncm, [40, 20, 0], seed=3, out_dir=tmp_path / "a")
    build_schedule(scm, ncm, [40, 20, 0], seed=3, out_dir=tmp_path / "b")
    for name in ("stage0.jsonl", "stage1.jsonl", "stage2.jsonl", "manifest.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


@pytest.mark.parametrize("sizes", [[10, 20, 0], [10, 5], [], [10, -1, 0]])
def test_bad_sizes(sizes):
    with pytest.raises(ConfigError):
        build_schedule(_corpus("s", 50), _corpus("n", 5), sizes)


def test_too_little_scm_is_an_error():
    with pytest.raises(ConfigError, match="SCM corpus has 5"):
        build_schedule(_corpus("s", 5), _corpus("n", 5), [10, 0])


def test_epochs_and_overlap():
    with pytest.raises(ConfigError):
        build_schedule(_corpus("s", 5), _corpus("n", 5), [1, 0], epochs=0)
    with pytest.raises(ForgeError, match="share"):
        build_stages(_corpus("x", 5), _corpus("x", 5), [1, 0])
