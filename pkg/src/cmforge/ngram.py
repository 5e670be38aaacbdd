"""Per-label n-gram language models with backoff and add-lambda smoothing.

A model of order n stores counts for every context length 0..n-1. Scoring
uses the longest context that was observed in training and applies add-λ
smoothing there; contexts never seen fall back one order at a time down to
the unigram distribution. ``<unk>`` can be scored but is not part of the
normalized support, so it is never generated.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict

import numpy as np

from .corpus import Corpus, GenRecord, Label, Lang, Origin, Sentence, Token
from .errors import CorpusFormatError, ForgeError
from .rng import stream

BOS, EOS, UNK = "<s>", "</s>", "<unk>"
MIN_ORDER, MAX_ORDER = 2, 6
MODEL_FORMAT = "cmforge.ngram"
MODEL_VERSION = 1


class NgramModel:
    def __init__(self, order, lam, label, counts, langs, language_pair=("en", "hi"),
                 mask="<GIB>", bos=BOS, eos=EOS, unk=UNK):
        if not MIN_ORDER <= order <= MAX_ORDER:
            raise ValueError(f"order must be in [{MIN_ORDER}, {MAX_ORDER}]")
        if lam <= 0:
            raise ValueError("lambda must be > 0")
        self.order = order
        self.lam = float(lam)
        self.label = Label(label)
        self.bos, self.eos, self.unk = bos, eos, unk
        self.counts: dict[tuple, Counter] = {ctx: Counter(c) for ctx, c in counts.items()}
        self.langs = dict(langs)
        self.language_pair = tuple(language_pair)
        self.mask = mask

        words = set(self.counts.get((), ()))
        self.vocab = frozenset(words | {eos, unk})
        self.support = sorted(words | {eos})
        self._index = {w: k for k, w in enumerate(self.support)}
        self.totals = {ctx: sum(c.values()) for ctx, c in self.counts.items()}
        self._dist_cache = {}

    @property
    def name(self) -> str:
        return f"{self.label.value}-{self.order}gram"

    def __eq__(self, other):
        return (
            isinstance(other, NgramModel)
            and (self.order, self.lam, self.label, self.bos, self.eos, self.unk)
            == (other.order, other.lam, other.label, other.bos, other.eos, other.unk)
            and self.counts == other.counts
            and self.langs == other.langs
            and self.language_pair == other.language_pair
        )

    def _context(self, context) -> tuple:
        ctx = tuple(w if w in self.vocab or w == self.bos else self.unk for w in context)
        k = self.order - 1
        ctx = ctx[-k:] if len(ctx) >= k else (self.bos,) * (k - len(ctx)) + ctx
        return ctx

    def _backoff(self, ctx) -> tuple:
        """Longest suffix of ``ctx`` with a nonzero count (possibly ())."""
        for k in range(len(ctx), 0, -1):
            if self.totals.get(ctx[-k:], 0) > 0:
                return ctx[-k:]
        return ()

    def prob(self, context, word) -> float:
        ctx = self._backoff(self._context(context))
        w = word if word in self.vocab else self.unk
        c = self.counts.get(ctx, {}).get(w, 0)
        return (c + self.lam) / (self.totals.get(ctx, 0) + self.lam * len(self.support))

    def distribution(self, context) -> np.ndarray:
        """Probabilities over ``self.support`` (sums to one)."""
        ctx = self._backoff(self._context(context))
        dist = self._dist_cache.get(ctx)
        if dist is None:
            vec = np.full(len(self.support), self.lam)
            for w, c in self.counts.get(ctx, {}).items():
                vec[self._index[w]] += c
            dist = vec / (self.totals.get(ctx, 0) + self.lam * len(self.support))
            self._dist_cache[ctx] = dist
        return dist


def train_ngram(corpus: Corpus, label, order: int = 3, lam: float = 0.1,
                bos=BOS, eos=EOS, unk=UNK) -> NgramModel:
    label = Label(label)
    sents = [s for s in corpus if s.label is label]
    if not sents:
        raise ForgeError(f"no sentences labeled {label.value!r} to train on")
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [{MIN_ORDER}, {MAX_ORDER}]")
    counts = defaultdict(Counter)
    lang_votes = defaultdict(Counter)
    reserved = {bos, eos, unk}
    for s in sents:
        words = list(s.surfaces)
        for t in s.tokens:
            if t.surface in reserved:
                raise ForgeError(f"sentence {s.id} contains reserved symbol {t.surface!r}")
            lang_votes[t.surface][t.lang.value] += 1
        padded = [bos] * (order - 1) + words + [eos]
        for j in range(order - 1, len(padded)):
            w = padded[j]
            for k in range(order):
                counts[tuple(padded[j - k:j])][w] += 1
    langs = {w: max(v.items(), key=lambda x: (x[1], x[0]))[0] for w, v in lang_votes.items()}
    return NgramModel(order, lam, label, counts, langs, corpus.language_pair, corpus.mask,
                      bos, eos, unk)


def ngram_prob(model: NgramModel, context, word) -> float:
    return model.prob(context, word)


def generate_words(model: NgramModel, rng, max_len: int = 50) -> list[str]:
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    out = []
    ctx = (model.bos,) * (model.order - 1)
    while len(out) < max_len:
        cum = np.cumsum(model.distribution(ctx))
        k = min(int(np.searchsorted(cum, rng.random() * cum[-1], side="right")), len(cum) - 1)
        w = model.support[k]
        if w == model.eos:
            break
        out.append(w)
        ctx = ctx[1:] + (w,)
    return out


def generate_sentence(model: NgramModel, rng, max_len: int = 50, sid: str | None = None,
                      seed: int | None = None) -> Sentence | None:
    """Sample one sentence; ``None`` when the model emits EOS immediately."""
    words = generate_words(model, rng, max_len)
    if not words:
        return None
    tokens = [Token(w, Lang(model.langs.get(w, Lang.MATRIX.value))) for w in words]
    gen = GenRecord("ngram", {"model": model.name, "order": model.order,
                              "lambda": model.lam, "max_len": max_len}, seed, model.name)
    return Sentence(sid or model.name, tokens, model.label, Origin.SYNTHETIC, gen)


def combine_generated(models, per_model_count: int = 250, seed: int = 0,
                      max_len: int = 50) -> Corpus:
    """Pool samples from every model, shuffle by seed, drop exact duplicates."""
    models = list(models)
    if not models:
        raise ValueError("need at least one model")
    pool = []
    seen_names = Counter()
    for m in models:
        # j separates same-named models; other models never shift a stream
        j = seen_names[m.name]
        seen_names[m.name] += 1
        for i in range(per_model_count):
            s = generate_sentence(m, stream(seed, m.name, j, i), max_len,
                                  sid=f"{m.name}-{j}-{i}", seed=seed)
            if s is not None:
                pool.append(s)
    order = stream(seed, "combine").permutation(len(pool))
    seen, out = set(), []
    for k in order:
        s = pool[k]
        key = (s.surfaces, s.label)
        if key not in seen:
            seen.add(key)
            out.append(s)
    meta = {
        "strategy": "ngram",
        "models": ",".join(m.name for m in models),
        "generated": str(len(pool)),
        "duplicates_removed": str(len(pool) - len(out)),
    }
    return Corpus(models[0].language_pair, out, meta, models[0].mask)


# --- model files -----------------------------------------------------------

def model_to_json(model: NgramModel) -> dict:
    rows = sorted(
        ([list(ctx), w, c] for ctx, cnt in model.counts.items() for w, c in cnt.items()),
        key=lambda r: (len(r[0]), r[0], r[1]),
    )
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "order": model.order,
        "lambda": model.lam,
        "label": model.label.value,
        "bos": model.bos,
        "eos": model.eos,
        "unk": model.unk,
        "language_pair": list(model.language_pair),
        "mask": model.mask,
        "langs": dict(sorted(model.langs.items())),
        "counts": rows,
    }


def save_model(model: NgramModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_json(model), f, ensure_ascii=False)
        f.write("\n")


def load_model(path) -> NgramModel:
    try:
        with open(path, encoding="utf-8") as f:
            d = json.load(f)
    except json.JSONDecodeError as e:
        raise CorpusFormatError(f"invalid model JSON ({e.msg})", path) from None
    if d.get("format") != MODEL_FORMAT or d.get("version") != MODEL_VERSION:
        raise CorpusFormatError(
            f"not a {MODEL_FORMAT} v{MODEL_VERSION} model file", path
        )
    counts = defaultdict(Counter)
    for ctx, w, c in d["counts"]:
        counts[tuple(ctx)][w] = int(c)
    return NgramModel(d["order"], d["lambda"], d["label"], counts, d["langs"],
                      d["language_pair"], d["mask"], d["bos"], d["eos"], d["unk"])
