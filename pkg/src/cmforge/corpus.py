"""Core corpus types, tokenization, language tagging and jsonl/tsv I/O."""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusFormatError, DuplicateIdError, InvalidTokenError

DEFAULT_MASK = "<GIB>"
GIB = "GIB"  # embedded-language sentinel for mask corpora


class Lang(str, Enum):
    MATRIX = "mat"
    EMBEDDED = "emb"
    UNIV = "univ"
    MASK = "mask"


class Label(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


class Origin(str, Enum):
    NATURAL = "natural"
    SYNTHETIC = "synthetic"


_WS = re.compile(r"\s")
URL_RE = re.compile(r"^(?:https?://|www\.)\S*$", re.IGNORECASE)
MENTION_RE = re.compile(r"^@\w+$")


@dataclass(frozen=True)
class Token:
    surface: str
    lang: Lang
    pos: str | None = None

    def __post_init__(self):
        if not self.surface:
            raise InvalidTokenError("empty token surface")
        if _WS.search(self.surface):
            raise InvalidTokenError(f"token contains whitespace: {self.surface!r}")
        if not isinstance(self.lang, Lang):
            object.__setattr__(self, "lang", Lang(self.lang))


@dataclass(frozen=True)
class GenRecord:
    """Provenance of a synthetic sentence."""

    strategy: str
    params: dict
    seed: int | None
    src: str


@dataclass(frozen=True)
class Sentence:
    id: str
    tokens: tuple[Token, ...]
    label: Label
    origin: Origin = Origin.NATURAL
    gen: GenRecord | None = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "label", Label(self.label))
        object.__setattr__(self, "origin", Origin(self.origin))
        if not self.id:
            raise ValueError("sentence id must be non-empty")
        if not self.tokens:
            raise ValueError(f"sentence {self.id} has no tokens")
        if (self.origin is Origin.SYNTHETIC) != (self.gen is not None):
            raise ValueError(
                f"sentence {self.id}: synthetic sentences need a gen record "
                "and natural sentences must not have one"
            )

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    @property
    def text(self) -> str:
        return " ".join(self.surfaces)

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class Corpus:
    language_pair: tuple[str, str]
    sentences: tuple[Sentence, ...] = ()
    meta: dict = field(default_factory=dict)
    mask: str = DEFAULT_MASK

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "language_pair", tuple(self.language_pair))
        seen = set()
        for s in self.sentences:
            if s.id in seen:
                raise DuplicateIdError(f"duplicate sentence id {s.id!r}")
            seen.add(s.id)
            for t in s.tokens:
                if t.lang is Lang.MASK and t.surface != self.mask:
                    raise ValueError(
                        f"sentence {s.id}: mask-tagged token {t.surface!r} "
                        f"is not the mask string {self.mask!r}"
                    )

    def __len__(self):
        return len(self.sentences)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    @property
    def matrix(self) -> str:
        return self.language_pair[0]

    @property
    def embedded(self) -> str:
        return self.language_pair[1]

    def ids(self) -> list[str]:
        return [s.id for s in self.sentences]

    def with_sentences(self, sentences: Iterable[Sentence], **kw) -> Corpus:
        return replace(self, sentences=tuple(sentences), **kw)


@dataclass(frozen=True)
class LanguageConfig:
    """Settings for the script/pattern language heuristic.

    Script names are the first word of the Unicode character name
    (``LATIN``, ``DEVANAGARI``, ``MALAYALAM``, ...).
    """

    matrix: str = "en"
    embedded: str = "hi"
    matrix_scripts: tuple[str, ...] = ("LATIN",)
    embedded_scripts: tuple[str, ...] = ("DEVANAGARI",)
    mask: str = DEFAULT_MASK
    mixed: Lang = Lang.MATRIX

    @property
    def language_pair(self) -> tuple[str, str]:
        return (self.matrix, self.embedded)


DEFAULT_CONFIG = LanguageConfig()


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def split_surfaces(raw: str, mask: str = DEFAULT_MASK) -> list[str]:
    """Whitespace split, then peel leading/trailing punctuation runs.

    >>> split_surfaces("stop!! now")
    ['stop', '!!', 'now']
    >>> split_surfaces("#cool @user, http://x.co")
    ['#', 'cool', '@user', ',', 'http://x.co']
    """
    out = []
    for chunk in raw.split():
        if chunk == mask or URL_RE.match(chunk):
            out.append(chunk)
            continue
        i, j = 0, len(chunk)
        while i < j and _is_punct(chunk[i]):
            i += 1
        if i == j:  # punctuation only
            out.append(chunk)
            continue
        # keep '@' attached to a mention
        if i > 0 and chunk[i - 1] == "@":
            i -= 1
        while j > i and _is_punct(chunk[j - 1]):
            j -= 1
        if i:
            out.append(chunk[:i])
        out.append(chunk[i:j])
        if j < len(chunk):
            out.append(chunk[j:])
    return out


def _script(ch: str) -> str | None:
    try:
        return unicodedata.name(ch).split(" ", 1)[0]
    except ValueError:
        return None


@lru_cache(maxsize=65536)
def tag_language(surface: str, config: LanguageConfig = DEFAULT_CONFIG) -> Lang:
    """Heuristic language tag for one token surface.

    Letterless tokens (punctuation, digits, symbols, a lone ``#``), URLs and
    @-mentions are language independent. Otherwise the token is matrix or
    embedded when all its letters belong to that side's scripts; anything
    else falls back to ``config.mixed``.
    """
    if not surface:
        raise InvalidTokenError("cannot tag an empty token")
    if surface == config.mask:
        return Lang.MASK
    if URL_RE.match(surface) or MENTION_RE.match(surface):
        return Lang.UNIV
    scripts = {_script(ch) for ch in surface if ch.isalpha()}
    if not scripts:
        return Lang.UNIV
    if scripts <= set(config.matrix_scripts):
        return Lang.MATRIX
    if scripts <= set(config.embedded_scripts):
        return Lang.EMBEDDED
    return config.mixed


def tokenize(raw: str, config: LanguageConfig = DEFAULT_CONFIG) -> list[Token]:
    return [Token(s, tag_language(s, config)) for s in split_surfaces(raw, config.mask)]


# --- I/O -------------------------------------------------------------------


def _token_to_json(t: Token) -> dict:
    d = {"t": t.surface, "lang": t.lang.value}
    if t.pos is not None:
        d["pos"] = t.pos
    return d


def sentence_to_json(s: Sentence) -> dict:
    d = {
        "id": s.id,
        "label": s.label.value,
        "origin": s.origin.value,
        "tokens": [_token_to_json(t) for t in s.tokens],
    }
    if s.gen is not None:
        d["gen"] = {
            "strategy": s.gen.strategy,
            "params": dict(sorted(s.gen.params.items())),
            "seed": s.gen.seed,
            "src": s.gen.src,
        }
    return d


def dumps_sentence(s: Sentence) -> str:
    return json.dumps(sentence_to_json(s), ensure_ascii=False)


def _header(corpus: Corpus) -> dict:
    return {
        "corpus": {
            "matrix": corpus.matrix,
            "embedded": corpus.embedded,
            "mask": corpus.mask,
            "meta": dict(sorted(corpus.meta.items())),
        }
    }


def write_corpus(corpus: Corpus, path, format: str = "jsonl") -> None:
    """Write ``corpus`` as jsonl.

    The first line is a ``{"corpus": {...}}`` header carrying the language
    pair, mask string and meta; every following line is one sentence.
    """
    if format != "jsonl":
        raise ValueError(f"unsupported output format {format!r}")
    lines = [json.dumps(_header(corpus), ensure_ascii=False)]
    lines.extend(dumps_sentence(s) for s in corpus.sentences)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _parse_token(obj, config, path, lineno) -> Token:
    if not isinstance(obj, dict) or not isinstance(obj.get("t"), str):
        raise CorpusFormatError("token must be an object with a string 't'", path, lineno)
    surface = obj["t"]
    try:
        lang = Lang(obj["lang"]) if "lang" in obj else tag_language(surface, config)
        return Token(surface, lang, obj.get("pos"))
    except ValueError as e:
        raise CorpusFormatError(str(e), path, lineno) from None


def _parse_sentence(obj, config, path, lineno) -> Sentence:
    if not isinstance(obj, dict):
        raise CorpusFormatError("sentence line must be a JSON object", path, lineno)
    for key in ("id", "label", "tokens"):
        if key not in obj:
            raise CorpusFormatError(f"missing field {key!r}", path, lineno)
    if not isinstance(obj["tokens"], list):
        raise CorpusFormatError("'tokens' must be a list", path, lineno)
    try:
        label = Label(obj["label"])
    except ValueError:
        raise CorpusFormatError(f"unknown label {obj['label']!r}", path, lineno) from None
    tokens = [_parse_token(t, config, path, lineno) for t in obj["tokens"]]
    gen = None
    if obj.get("gen") is not None:
        g = obj["gen"]
        try:
            gen = GenRecord(g["strategy"], dict(g.get("params", {})), g.get("seed"), g["src"])
        except (KeyError, TypeError):
            raise CorpusFormatError("malformed gen record", path, lineno) from None
    try:
        return Sentence(str(obj["id"]), tokens, label, Origin(obj.get("origin", "natural")), gen)
    except ValueError as e:
        raise CorpusFormatError(str(e), path, lineno) from None


def _read_jsonl(path, config: LanguageConfig) -> Corpus:
    pair, mask, meta = config.language_pair, config.mask, {}
    sentences, seen = [], set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"invalid JSON ({e.msg})", path, lineno) from None
            if isinstance(obj, dict) and "corpus" in obj and "id" not in obj:
                if sentences:
                    raise CorpusFormatError("corpus header must be the first line", path, lineno)
                h = obj["corpus"]
                pair = (h.get("matrix", pair[0]), h.get("embedded", pair[1]))
                mask = h.get("mask", mask)
                meta = dict(h.get("meta", {}))
                if mask != config.mask:
                    config = replace(config, mask=mask)
                continue
            s = _parse_sentence(obj, config, path, lineno)
            if s.id in seen:
                raise DuplicateIdError(f"duplicate sentence id {s.id!r}", path, lineno)
            seen.add(s.id)
            sentences.append(s)
    try:
        return Corpus(pair, sentences, meta, mask)
    except ValueError as e:
        raise CorpusFormatError(str(e), path) from None


def read_raw_rows(path) -> list[tuple[str, str, Label, int]]:
    """Rows of an ``id<TAB>text<TAB>label`` file as (id, text, label, lineno)."""
    rows, seen = [], set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CorpusFormatError(
                    f"expected 3 tab-separated fields, got {len(parts)}", path, lineno
                )
            sid, text, label = parts
            if not sid:
                raise CorpusFormatError("empty sentence id", path, lineno)
            try:
                lab = Label(label.strip())
            except ValueError:
                raise CorpusFormatError(f"unknown label {label!r}", path, lineno) from None
            if sid in seen:
                raise DuplicateIdError(f"duplicate sentence id {sid!r}", path, lineno)
            seen.add(sid)
            rows.append((sid, text, lab, lineno))
    return rows


def _read_raw_tsv(path, config: LanguageConfig) -> Corpus:
    sentences = []
    for sid, text, label, lineno in read_raw_rows(path):
        tokens = tokenize(text, config)
        if not tokens:
            raise CorpusFormatError(f"sentence {sid!r} has no tokens", path, lineno)
        sentences.append(Sentence(sid, tokens, label))
    return Corpus(config.language_pair, sentences, {}, config.mask)


def read_corpus(path, format: str = "jsonl", config: LanguageConfig = DEFAULT_CONFIG) -> Corpus:
    if format == "jsonl":
        return _read_jsonl(path, config)
    if format in ("raw-tsv", "tsv"):
        return _read_raw_tsv(path, config)
    raise ValueError(f"unknown corpus format {format!r}")
