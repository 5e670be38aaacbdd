"""Replacement-based synthetic code-mixing generators.

Span selectors (random words, random phrases or a POS tag) feed one splice
step that runs the selected tokens through a translator and puts the result
back in place. The label and everything outside the spans are kept; the gen
record names the source sentence.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from .corpus import Corpus, GenRecord, Lang, Origin, Sentence
from .errors import ConfigError, ForgeError
from .lexicon import MaskTranslator, translate_tokens
from .rng import as_generator, stream

KINDS = ("word", "phrase", "pos")
DEFAULT_PHRASE_LENGTHS = (1, 2, 3)
_UNSELECTABLE = (Lang.UNIV, Lang.MASK)


class Span(NamedTuple):
    start: int
    length: int


@dataclass(frozen=True)
class StrategyConfig:
    kind: str
    tau: float | None = None
    pos_tags: tuple[str, ...] | None = None
    phrase_lengths: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown strategy kind {self.kind!r}")
        if self.kind == "pos":
            if not self.pos_tags or self.tau is not None or self.phrase_lengths is not None:
                raise ConfigError("pos strategy takes pos_tags only")
            object.__setattr__(self, "pos_tags", tuple(self.pos_tags))
            return
        if self.tau is None or not 0.0 <= self.tau <= 1.0:
            raise ConfigError(f"tau must be in [0, 1], got {self.tau}")
        if self.pos_tags is not None:
            raise ConfigError(f"{self.kind} strategy does not take pos_tags")
        if self.kind == "word":
            if self.phrase_lengths is not None:
                raise ConfigError("word strategy does not take phrase_lengths")
        else:
            lengths = tuple(sorted(set(self.phrase_lengths or DEFAULT_PHRASE_LENGTHS)))
            if not lengths or lengths[0] < 1:
                raise ConfigError("phrase lengths must be positive integers")
            object.__setattr__(self, "phrase_lengths", lengths)

    @classmethod
    def word(cls, tau):
        return cls("word", tau=tau)

    @classmethod
    def phrase(cls, tau, phrase_lengths=DEFAULT_PHRASE_LENGTHS):
        return cls("phrase", tau=tau, phrase_lengths=tuple(phrase_lengths))

    @classmethod
    def pos(cls, *tags):
        return cls("pos", pos_tags=tags)

    def with_tau(self, tau):
        return StrategyConfig(self.kind, tau, self.pos_tags, self.phrase_lengths)

    @property
    def name(self) -> str:
        if self.kind == "pos":
            return "pos-" + "+".join(self.pos_tags)
        return self.kind

    def params(self) -> dict:
        if self.kind == "pos":
            return {"pos_tags": list(self.pos_tags)}
        p = {"tau": self.tau}
        if self.kind == "phrase":
            p["phrase_lengths"] = list(self.phrase_lengths)
        return p


def select_words(sentence: Sentence, tau: float, rng) -> list[Span]:
    """One uniform draw per token; a language-bearing token is selected
    when its draw is below ``tau``."""
    rng = as_generator(rng)
    draws = rng.random(len(sentence.tokens))
    return [
        Span(i, 1)
        for i, (tok, u) in enumerate(zip(sentence.tokens, draws))
        if u < tau and tok.lang not in _UNSELECTABLE
    ]


def select_phrases(sentence: Sentence, tau: float, phrase_lengths=DEFAULT_PHRASE_LENGTHS,
                   rng=None) -> list[Span]:
    """Cursor walk: at each position draw r; on r < tau draw a phrase length
    L uniformly from ``phrase_lengths`` and take up to L tokens, otherwise
    step one token."""
    rng = as_generator(rng)
    lengths = sorted(set(phrase_lengths))
    n = len(sentence.tokens)
    spans, cr = [], 0
    while cr < n:
        if rng.random() < tau:
            length = lengths[int(rng.integers(len(lengths)))]
            length = min(length, n - cr)
            spans.append(Span(cr, length))
            cr += length
        else:
            cr += 1
    return spans


def select_by_pos(sentence: Sentence, p) -> list[Span]:
    """Every token whose tag is ``p`` (or in ``p`` when given a collection)."""
    tags = {p} if isinstance(p, str) else set(p)
    spans = []
    for i, tok in enumerate(sentence.tokens):
        if tok.pos is None:
            raise ForgeError(f"sentence {sentence.id}: token {i} ({tok.surface!r}) has no POS tag")
        if tok.pos in tags:
            spans.append(Span(i, 1))
    return spans


def select_spans(sentence: Sentence, config: StrategyConfig, rng) -> list[Span]:
    if config.kind == "word":
        return select_words(sentence, config.tau, rng)
    if config.kind == "phrase":
        return select_phrases(sentence, config.tau, config.phrase_lengths, rng)
    return select_by_pos(sentence, config.pos_tags)


def _check_spans(spans, n, sid):
    end = 0
    for s in spans:
        if s.length < 1 or s.start < end or s.start + s.length > n:
            raise ForgeError(f"sentence {sid}: invalid or overlapping span {tuple(s)}")
        end = s.start + s.length


def apply_replacement(sentence: Sentence, spans, translator, rng=None, *,
                      gen: GenRecord | None = None, new_id: str | None = None) -> Sentence:
    """Translate each span and splice the result back in place."""
    spans = sorted(Span(*s) for s in spans)
    _check_spans(spans, len(sentence.tokens), sentence.id)
    rng = as_generator(rng)
    tokens, cur = [], 0
    for start, length in spans:
        tokens.extend(sentence.tokens[cur:start])
        tokens.extend(translate_tokens(translator, sentence.tokens[start:start + length], rng))
        cur = start + length
    tokens.extend(sentence.tokens[cur:])
    if not tokens:
        raise ForgeError(f"sentence {sentence.id}: replacement produced no tokens")
    if gen is None:
        gen = GenRecord("replace", {"translator": translator.name}, None, sentence.id)
    return Sentence(new_id or sentence.id, tokens, sentence.label, Origin.SYNTHETIC, gen)


def _output_frame(source: Corpus, translator, config: StrategyConfig, seed) -> Corpus:
    embedded = getattr(translator, "embedded", None) or source.embedded
    mask = translator.mask if isinstance(translator, MaskTranslator) else source.mask
    meta = {
        "strategy": config.name,
        "translator": translator.name,
        "seed": str(seed),
    }
    return Corpus((source.matrix, embedded), (), meta, mask)


def generate_corpus(source: Corpus, config: StrategyConfig, translator, count: int,
                    seed: int, threads: int = 1) -> Corpus:
    """Emit ``count`` synthetic sentences cycling over the (seed-shuffled)
    source corpus.

    Emission ``i`` from source sentence ``s`` uses the random stream derived
    from ``(seed, s.id, i)``, so output does not depend on ``threads``.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    frame = _output_frame(source, translator, config, seed)
    if count == 0:
        return frame
    if not len(source):
        raise ForgeError("cannot generate from an empty source corpus")
    if config.kind == "pos":
        for s in source:
            for i, t in enumerate(s.tokens):
                if t.pos is None:
                    raise ForgeError(f"pos strategy needs tagged input; sentence {s.id} token {i} is untagged")

    order = stream(seed, "shuffle").permutation(len(source))
    sources = [source.sentences[k] for k in order]
    params = dict(config.params(), translator=translator.name)

    def emit(i):
        src = sources[i % len(sources)]
        rng = stream(seed, src.id, i)
        spans = select_spans(src, config, rng)
        gen = GenRecord(config.kind, dict(params, index=i), seed, src.id)
        return apply_replacement(src, spans, translator, rng, gen=gen,
                                 new_id=f"{src.id}:{config.name}:{i}")

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            out = list(pool.map(emit, range(count), chunksize=64))
    else:
        out = [emit(i) for i in range(count)]
    return frame.with_sentences(out)


def union_pos_datasets(datasets) -> Corpus:
    """Set union of several synthetic datasets.

    Sentences with the same token surfaces and label are kept once (first
    occurrence wins); colliding ids get a ``@k`` suffix.
    """
    datasets = list(datasets)
    if not datasets:
        raise ValueError("need at least one dataset")
    pair = datasets[0].language_pair
    for d in datasets[1:]:
        if d.language_pair != pair:
            raise ForgeError(f"language pair mismatch: {pair} vs {d.language_pair}")
    seen, ids, out = set(), set(), []
    for k, d in enumerate(datasets):
        for s in d:
            key = (s.surfaces, s.label)
            if key in seen:
                continue
            seen.add(key)
            sid, n = s.id, 0
            while sid in ids:
                n += 1
                sid = f"{s.id}@{k}" if n == 1 else f"{s.id}@{k}.{n}"
            ids.add(sid)
            out.append(s if sid == s.id else Sentence(sid, s.tokens, s.label, s.origin, s.gen))
    meta = dict(datasets[0].meta)
    meta["union_of"] = ",".join(d.meta.get("strategy", "?") for d in datasets)
    return Corpus(pair, out, meta, datasets[0].mask)
