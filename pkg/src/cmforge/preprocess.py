"""Coarse social-media cleaning and neutral-sentence mining."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import (
    DEFAULT_CONFIG,
    URL_RE,
    Corpus,
    Label,
    LanguageConfig,
    Sentence,
    read_raw_rows,
    tokenize,
)
from .errors import CorpusFormatError

DEFAULT_NEUTRAL_THRESHOLD = 0.85

# Pictographic ranges, regional indicators, dingbats, variation selectors,
# ZWJ and tag characters. Anything here that survives map substitution is
# deleted.
_EMOJI_CHARS = re.compile(
    "["
    "\U0001F000-\U0001FAFF"
    "☀-➿"
    "⌀-⏿"
    "⬀-⯿"
    "〰〽㊗㊙"
    "︀-️"
    "‍⃣"
    "\U000E0020-\U000E007F"
    "]"
)


class EmojiMap:
    """Emoji sequence -> underscore-joined English description."""

    def __init__(self, mapping: dict[str, str] | None = None):
        clean = {}
        for emoji, desc in (mapping or {}).items():
            desc = "_".join(_EMOJI_CHARS.sub(" ", desc.replace("#", " ")).split())
            if not emoji or not desc:
                raise ValueError(f"empty emoji or description for {emoji!r}")
            clean[emoji] = desc
        self.mapping = clean
        if clean:
            # longest sequences first so ZWJ / skin-tone sequences win
            alts = sorted(clean, key=lambda e: (-len(e), e))
            self._pattern = re.compile("|".join(re.escape(e) for e in alts))
        else:
            self._pattern = None

    def __len__(self):
        return len(self.mapping)

    def substitute(self, text: str) -> str:
        if self._pattern is not None:
            text = self._pattern.sub(lambda m: f" {self.mapping[m.group(0)]} ", text)
        return _EMOJI_CHARS.sub(" ", text)

    @classmethod
    def load(cls, path) -> EmojiMap:
        mapping = {}
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                parts = line.split("\t")
                if len(parts) != 2 or not parts[0] or not parts[1].strip():
                    raise CorpusFormatError("expected emoji<TAB>description", path, lineno)
                mapping[parts[0]] = parts[1]
        return cls(mapping)


def clean(raw: str, emoji_map: EmojiMap | None = None) -> str:
    """Replace emoji, drop '#' characters and URL tokens, squeeze whitespace.

    >>> clean("check http://x.co #cool")
    'check cool'
    """
    text = raw.replace("#", "")
    text = (emoji_map or EmojiMap()).substitute(text)
    return " ".join(tok for tok in text.split() if not URL_RE.match(tok))


def preprocess_rows(rows, emoji_map: EmojiMap | None = None,
                    config: LanguageConfig = DEFAULT_CONFIG) -> Corpus:
    """Clean (id, text, label, ...) rows into a natural corpus.

    Rows whose text is empty after cleaning are dropped.
    """
    sentences = []
    for row in rows:
        sid, text, label = row[:3]
        tokens = tokenize(clean(text, emoji_map), config)
        if tokens:
            sentences.append(Sentence(sid, tokens, Label(label)))
    return Corpus(config.language_pair, sentences, {}, config.mask)


def preprocess_file(path, emoji_map: EmojiMap | None = None,
                    config: LanguageConfig = DEFAULT_CONFIG) -> Corpus:
    return preprocess_rows(read_raw_rows(path), emoji_map, config)


@dataclass(frozen=True)
class ScoreRecord:
    id: str
    label: Label
    confidence: float

    def __post_init__(self):
        object.__setattr__(self, "label", Label(self.label))
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1] for {self.id}")


def read_scores(path) -> list[ScoreRecord]:
    records = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CorpusFormatError("expected id<TAB>label<TAB>confidence", path, lineno)
            try:
                records.append(ScoreRecord(parts[0], Label(parts[1].strip()), float(parts[2])))
            except ValueError as e:
                raise CorpusFormatError(str(e), path, lineno) from None
    return records


def mine_neutral(candidates: Corpus, scores, threshold: float = DEFAULT_NEUTRAL_THRESHOLD) -> Corpus:
    """Keep sentences scored neutral with confidence strictly above ``threshold``."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    known = set(candidates.ids())
    keep = set()
    for rec in scores:
        if rec.id not in known:
            raise CorpusFormatError(f"score record for unknown sentence id {rec.id!r}")
        if rec.label is Label.NEUTRAL and rec.confidence > threshold:
            keep.add(rec.id)
    kept = [
        Sentence(s.id, s.tokens, Label.NEUTRAL, s.origin, s.gen)
        for s in candidates if s.id in keep
    ]
    return candidates.with_sentences(kept)

