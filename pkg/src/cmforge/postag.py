"""Penn Treebank POS tags: authoritative tag files or a small lexicon tagger."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources

from .corpus import Corpus, Lang, Sentence
from .errors import CorpusFormatError, TagMismatchError

PENN_TAGS = frozenset(
    "CC CD DT EX FW IN JJ JJR JJS LS MD NN NNS NNP NNPS PDT POS PRP PRP$ RB RBR "
    "RBS RP SYM TO UH VB VBD VBG VBN VBP VBZ WDT WP WP$ WRB".split()
)


@dataclass(frozen=True)
class TagLexicon:
    words: dict[str, str] = field(default_factory=dict)
    suffix_rules: tuple[tuple[str, str], ...] = ()
    default_tag: str = "NN"

    def __post_init__(self):
        if self.default_tag not in PENN_TAGS:
            raise ValueError(f"default tag {self.default_tag!r} is not a Penn pre-terminal")
        object.__setattr__(self, "words", {w.lower(): t for w, t in self.words.items()})
        # longest suffix first; stable for equal lengths
        rules = sorted(self.suffix_rules, key=lambda r: -len(r[0]))
        object.__setattr__(self, "suffix_rules", tuple((s.lower(), t) for s, t in rules))

    def tag_word(self, word: str) -> str:
        w = word.lower()
        tag = self.words.get(w)
        if tag is not None:
            return tag
        for suffix, tag in self.suffix_rules:
            if w.endswith(suffix) and len(w) > len(suffix):
                return tag
        return self.default_tag

    @classmethod
    def load(cls, lexicon_path=None, suffix_path=None, default_tag: str = "NN") -> TagLexicon:
        words = dict(_read_pairs(lexicon_path)) if lexicon_path else {}
        rules = tuple(_read_pairs(suffix_path)) if suffix_path else ()
        return cls(words, rules, default_tag)


def _read_pairs(path):
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise CorpusFormatError("expected two tab-separated fields", path, lineno)
            yield parts[0], parts[1]


def default_lexicon() -> TagLexicon:
    """The bundled English closed-class lexicon and suffix rules."""
    data = resources.files("cmforge") / "data"
    with resources.as_file(data / "en_lexicon.tsv") as lex, \
            resources.as_file(data / "en_suffixes.tsv") as suf:
        return TagLexicon.load(lex, suf)


def tag_sentence(sentence: Sentence, lexicon: TagLexicon) -> Sentence:
    tokens = [
        replace(t, pos="SYM" if t.lang is Lang.UNIV else lexicon.tag_word(t.surface))
        for t in sentence.tokens
    ]
    return replace(sentence, tokens=tuple(tokens))


def tag_corpus(corpus: Corpus, lexicon: TagLexicon) -> Corpus:
    return corpus.with_sentences(tag_sentence(s, lexicon) for s in corpus)


def read_tag_file(path) -> dict[str, list[str]]:
    tags = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            sid, sep, rest = line.partition("\t")
            if not sep:
                raise CorpusFormatError("expected id<TAB>tags", path, lineno)
            if sid in tags:
                raise CorpusFormatError(f"duplicate tag line for {sid!r}", path, lineno)
            tags[sid] = rest.split()
    return tags


def apply_tags(corpus: Corpus, tags: dict[str, list[str]]) -> Corpus:
    """Set every token's pos from ``tags``; existing tags are overwritten."""
    ids = set(corpus.ids())
    missing = [sid for sid in corpus.ids() if sid not in tags]
    if missing:
        raise TagMismatchError(f"no tags for sentence ids: {', '.join(missing)}")
    unknown = sorted(set(tags) - ids)
    if unknown:
        raise TagMismatchError(f"tags for unknown sentence ids: {', '.join(unknown)}")
    out = []
    for s in corpus:
        seq = tags[s.id]
        if len(seq) != len(s.tokens):
            raise TagMismatchError(
                f"sentence {s.id}: {len(seq)} tags for {len(s.tokens)} tokens"
            )
        toks = tuple(replace(t, pos=p) for t, p in zip(s.tokens, seq))
        out.append(replace(s, tokens=toks))
    return corpus.with_sentences(out)


def load_tags(corpus: Corpus, path) -> Corpus:
    return apply_tags(corpus, read_tag_file(path))
