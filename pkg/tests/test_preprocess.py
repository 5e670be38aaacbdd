import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmforge.corpus import URL_RE, Corpus, Label
from cmforge.errors import CorpusFormatError
from cmforge.preprocess import (
    EmojiMap,
    ScoreRecord,
    clean,
    mine_neutral,
    preprocess_file,
    read_scores,
)
from conftest import corpus_of, sent

EMOJI = EmojiMap({"😀": "grinning face", "❤️": "red heart", "👍🏽": "thumbs up medium skin"})


@pytest.mark.parametrize("raw,expected", [
    ("hello world", "hello world"),
    ("check http://x.co #cool", "check cool"),
    ("nice 😀", "nice grinning_face"),
    ("  lots   of\tspace ", "lots of space"),
    ("www.site.org only", "only"),
    ("#", ""),
    ("love❤️it", "love red_heart it"),
    ("ok 👍🏽 👍", "ok thumbs_up_medium_skin"),  # unmapped emoji is dropped
])
def test_clean_examples(raw, expected):
    assert clean(raw, EMOJI) == expected


def test_clean_without_map_drops_emoji():
    assert clean("yay 😀!") == "yay !"


_pieces = st.sampled_from(["#", "http://a.b/c", "www.x.y", "😀", "❤️", "👍", " ", "\t",
                           "word", "#tag", "é", "!", "️", "a#b"])


@given(st.one_of(st.text(), st.lists(_pieces).map("".join)))
def test_clean_idempotent(raw):
    once = clean(raw, EMOJI)
    assert clean(once, EMOJI) == once


@given(st.lists(_pieces).map("".join))
def test_clean_leaves_no_hash_or_url(raw):
    out = clean(raw, EMOJI)
    assert "#" not in out
    assert not any(URL_RE.match(t) for t in out.split())
    assert out == out.strip() and "  " not in out


def test_emoji_map_validation(tmp_path):
    with pytest.raises(ValueError):
        EmojiMap({"😀": "  "})
    assert EMOJI.mapping["😀"] == "grinning_face"
    p = tmp_path / "e.tsv"
    p.write_text("😀\tgrinning face\n\n", encoding="utf-8")
    assert EmojiMap.load(p).mapping == {"😀": "grinning_face"}
    p.write_text("😀\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError):
        EmojiMap.load(p)


def test_preprocess_file_drops_empty(toy_dir):
    c = preprocess_file(toy_dir / "mono.tsv", EmojiMap.load(toy_dir / "emoji.tsv"))
    assert len(c) == 29
    assert "m21" not in c.ids()
    assert c.sentences[0].surfaces[-1] == "grinning_face"


def test_score_record_bounds():
    with pytest.raises(ValueError):
        ScoreRecord("a", "neutral", 1.2)


@pytest.mark.parametrize("conf,kept", [(0.90, True), (0.85, False), (0.851, True), (0.5, False)])
def test_mine_neutral_threshold(conf, kept):
    c = corpus_of(sent("a/m", "x", "positive"))
    out = mine_neutral(c, [ScoreRecord("x", "neutral", conf)])
    assert (len(out) == 1) is kept
    assert all(s.label is Label.NEUTRAL for s in out)


def test_mine_neutral_cases():
    c = corpus_of(sent("a/m", "x"), sent("b/m", "y"), sent("c/m", "z"))
    out = mine_neutral(c, [ScoreRecord("x", "positive", 0.99), ScoreRecord("y", "neutral", 0.9)])
    assert list(out.ids()) == ["y"]
    assert len(mine_neutral(Corpus(("en", "hi")), [])) == 0
    with pytest.raises(CorpusFormatError, match="unknown"):
        mine_neutral(c, [ScoreRecord("q", "neutral", 0.99)])
    with pytest.raises(ValueError):
        mine_neutral(c, [], threshold=1.5)


def test_mine_neutral_toy(toy_dir, tmp_path):
    from cmforge.corpus import read_raw_rows
    from cmforge.preprocess import preprocess_rows

    cands = preprocess_rows(read_raw_rows(toy_dir / "neutral_candidates.tsv"))
    out = mine_neutral(cands, read_scores(toy_dir / "scores.tsv"))
    assert list(out.ids()) == ["c01", "c02", "c06"]
    assert set(out.ids()) <= set(cands.ids())


def test_read_scores_errors(tmp_path):
    p = tmp_path / "s.tsv"
    p.write_text("a\tneutral\n")
    with pytest.raises(CorpusFormatError):
        read_scores(p)
    p.write_text("a\tneutral\t1.5\n")
    with pytest.raises(CorpusFormatError):
        read_scores(p)
