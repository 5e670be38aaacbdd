import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmforge.corpus import Sentence, tokenize
from cmforge.errors import CorpusFormatError, TagMismatchError
from cmforge.postag import PENN_TAGS, TagLexicon, default_lexicon, load_tags, tag_corpus, tag_sentence
from conftest import corpus_of, sent


def test_lookup_suffix_default():
    lex = TagLexicon({"Food": "NN"}, (("ing", "VBG"), ("s", "NNS")))
    assert lex.tag_word("food") == "NN"
    assert lex.tag_word("FOOD") == "NN"
    assert lex.tag_word("blorping") == "VBG"
    assert lex.tag_word("cats") == "NNS"
    assert lex.tag_word("s") == "NN"  # the suffix alone is not a match
    assert lex.tag_word("zzz") == "NN"


def test_longest_suffix_wins():
    lex = TagLexicon({}, (("s", "NNS"), ("ness", "NN"), ("ss", "JJ")))
    assert lex.tag_word("kindness") == "NN"
    assert lex.tag_word("glass") == "JJ"


def test_default_tag_must_be_penn():
    with pytest.raises(ValueError):
        TagLexicon(default_tag="NOUN")


def test_tag_sentence_univ_is_sym():
    out = tag_sentence(sent("food/m !!/u"), TagLexicon({"food": "NN"}))
    assert [t.pos for t in out.tokens] == ["NN", "SYM"]


def test_default_lexicon_tags():
    lex = default_lexicon()
    s = tokenize("i really love the spicy food !")
    out = tag_sentence(Sentence("x", s, "positive"), lex)
    assert all(t.pos in PENN_TAGS for t in out.tokens)
    assert out.tokens[0].pos == "PRP"
    assert out.tokens[-1].pos == "SYM"


@given(st.lists(st.text(st.characters(whitelist_categories=("Ll", "Lu", "Nd", "Po")),
                        min_size=1, max_size=8), min_size=1, max_size=10))
def test_never_untagged(words):
    toks = tokenize(" ".join(words))
    if not toks:
        return
    out = tag_sentence(Sentence("x", toks, "neutral"), default_lexicon())
    assert all(t.pos for t in out.tokens)


def test_load_tags(tmp_path):
    c = corpus_of(sent("i/m/XX love/m food/m", "s1"), sent("ok/m", "s2"))
    p = tmp_path / "tags.tsv"
    p.write_text("s1\tPRP VBP NN\ns2\tUH\n")
    out = load_tags(c, p)
    assert [t.pos for t in out.sentences[0].tokens] == ["PRP", "VBP", "NN"]


def test_load_tags_errors(tmp_path):
    c = corpus_of(sent("i/m love/m food/m", "s1"), sent("ok/m", "s2"))
    p = tmp_path / "tags.tsv"
    p.write_text("s1\tPRP VBP\ns2\tUH\n")
    with pytest.raises(TagMismatchError, match="s1"):
        load_tags(c, p)
    p.write_text("s1\tPRP VBP NN\n")
    with pytest.raises(TagMismatchError, match="s2"):
        load_tags(c, p)
    p.write_text("s1\tPRP VBP NN\ns2\tUH\ns9\tNN\n")
    with pytest.raises(TagMismatchError, match="s9"):
        load_tags(c, p)
    p.write_text("no tab here\n")
    with pytest.raises(CorpusFormatError):
        load_tags(c, p)


def test_lexicon_files(tmp_path):
    (tmp_path / "lex.tsv").write_text("# comment\nfood\tNN\n")
    (tmp_path / "suf.tsv").write_text("ing\tVBG\n")
    lex = TagLexicon.load(tmp_path / "lex.tsv", tmp_path / "suf.tsv")
    c = tag_corpus(corpus_of(sent("food/m eating/m")), lex)
    assert [t.pos for t in c.sentences[0].tokens] == ["NN", "VBG"]
