"""Word alignment, weighted translation dictionaries and translators."""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter, defaultdict
from typing import NamedTuple

from .corpus import DEFAULT_MASK, GIB, Lang, Token, split_surfaces
from .errors import CorpusFormatError, ForgeError, OOVError


class AlignmentLink(NamedTuple):
    src: int
    tgt: int

    def __str__(self):
        return f"{self.src}-{self.tgt}"


def _check_parallel(parallel):
    if not parallel:
        raise ForgeError("cannot align an empty parallel corpus")
    for k, (src, tgt) in enumerate(parallel):
        if not src or not tgt:
            raise ForgeError(f"parallel pair {k} has an empty side")


class IBM1:
    """IBM Model 1 lexical translation table t(tgt | src), no NULL word.

    Before the first :meth:`step` every t(tgt | src) equals
    1 / |target vocabulary|.
    """

    def __init__(self, parallel):
        _check_parallel(parallel)
        self.parallel = [(list(s), list(t)) for s, t in parallel]
        self.tgt_vocab = sorted({w for _, tgt in self.parallel for w in tgt})
        self.uniform = 1.0 / len(self.tgt_vocab)
        self.t: dict[tuple[str, str], float] | None = None
        self.iterations = 0

    def prob(self, tgt: str, src: str) -> float:
        if self.t is None:
            return self.uniform
        return self.t.get((src, tgt), 0.0)

    def step(self):
        count = defaultdict(float)
        total = defaultdict(float)
        for src, tgt in self.parallel:
            for f in tgt:
                z = sum(self.prob(f, e) for e in src)
                if z == 0.0:
                    continue
                for e in src:
                    delta = self.prob(f, e) / z
                    count[(e, f)] += delta
                    total[e] += delta
        # iterate in sorted order so float sums are reproducible
        self.t = {k: count[k] / total[k[0]] for k in sorted(count)}
        self.iterations += 1
        return self

    def train(self, iterations: int):
        for _ in range(iterations):
            self.step()
        return self

    def align_pair(self, src, tgt) -> list[AlignmentLink]:
        links = []
        for i, e in enumerate(src):
            best_j, best_p = 0, -1.0
            for j, f in enumerate(tgt):
                p = self.prob(f, e)
                if p > best_p:
                    best_j, best_p = j, p
            links.append(AlignmentLink(i, best_j))
        return links

    def align(self) -> list[list[AlignmentLink]]:
        return [self.align_pair(s, t) for s, t in self.parallel]


def ibm1_align(parallel, iterations: int = 5) -> list[list[AlignmentLink]]:
    """Train Model 1 for ``iterations`` EM rounds and link every source token
    to its most probable target token (ties go to the smallest index)."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    return IBM1(parallel).train(iterations).align()


def read_bitext(path) -> list[tuple[list[str], list[str]]]:
    """``src sentence<TAB>tgt sentence`` lines, tokenized like corpus text."""
    pairs = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise CorpusFormatError("expected src<TAB>tgt", path, lineno)
            src, tgt = split_surfaces(parts[0]), split_surfaces(parts[1])
            if not src or not tgt:
                raise CorpusFormatError("empty side in bitext pair", path, lineno)
            pairs.append((src, tgt))
    return pairs


def write_links(links, path):
    with open(path, "w", encoding="utf-8") as f:
        for pair_links in links:
            f.write(" ".join(str(l) for l in pair_links) + "\n")


def read_links(path) -> list[list[AlignmentLink]]:
    out = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            pair = []
            for item in line.split():
                try:
                    i, j = item.split("-")
                    pair.append(AlignmentLink(int(i), int(j)))
                except ValueError:
                    raise CorpusFormatError(f"bad link {item!r}", path, lineno) from None
            out.append(pair)
    return out


class TranslationDictionary:
    """Weighted one-to-many source -> target word map.

    Source keys are lowercase. Candidates are sorted by descending weight,
    then lexicographically, and weights per source sum to one.
    """

    def __init__(self, entries: dict[str, list[tuple[str, float]]] | None = None):
        grouped = defaultdict(Counter)
        for src, cands in (entries or {}).items():
            for tgt, w in cands:
                if w <= 0:
                    raise ValueError(f"non-positive weight for {src} -> {tgt}")
                if not tgt or any(c.isspace() for c in tgt):
                    raise ValueError(f"bad target word {tgt!r} for {src!r}")
                grouped[src.lower()][tgt] += w
        self.entries: dict[str, tuple[tuple[str, float], ...]] = {}
        for key in sorted(grouped):
            merged = grouped[key]
            total = math.fsum(merged.values())
            self.entries[key] = tuple(
                sorted(((t, w / total) for t, w in merged.items()), key=lambda x: (-x[1], x[0]))
            )
        self._cum = {
            k: _cumulative([w for _, w in v]) for k, v in self.entries.items()
        }

    @classmethod
    def from_counts(cls, counts: dict[tuple[str, str], int]) -> TranslationDictionary:
        grouped = defaultdict(list)
        for (s, t), c in counts.items():
            grouped[s].append((t, c))
        return cls(grouped)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word.lower() in self.entries

    def __eq__(self, other):
        return isinstance(other, TranslationDictionary) and self.entries == other.entries

    def candidates(self, word: str):
        return self.entries.get(word.lower())

    def sample(self, word: str, u: float) -> str | None:
        """Candidate picked by a uniform draw ``u`` in [0, 1)."""
        key = word.lower()
        cands = self.entries.get(key)
        if cands is None:
            return None
        k = min(bisect_right(self._cum[key], u), len(cands) - 1)
        return cands[k][0]

    def save(self, path):
        with open(path, "w", encoding="utf-8") as f:
            for src, cands in self.entries.items():
                for tgt, w in cands:
                    f.write(f"{src}\t{tgt}\t{w!r}\n")

    @classmethod
    def load(cls, path) -> TranslationDictionary:
        grouped = defaultdict(list)
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise CorpusFormatError("expected src<TAB>tgt<TAB>weight", path, lineno)
                try:
                    grouped[parts[0]].append((parts[1], float(parts[2])))
                except ValueError:
                    raise CorpusFormatError(f"bad weight {parts[2]!r}", path, lineno) from None
        try:
            return cls(grouped)
        except ValueError as e:
            raise CorpusFormatError(str(e), path) from None


def _cumulative(weights):
    out, acc = [], 0.0
    for w in weights:
        acc += w
        out.append(acc)
    return out


def build_dictionary(parallel, links) -> TranslationDictionary:
    """Count aligned (source, target) surface pairs and normalize per source."""
    if len(links) != len(parallel):
        raise ForgeError(f"{len(links)} link lines for {len(parallel)} sentence pairs")
    counts = Counter()
    for k, ((src, tgt), pair_links) in enumerate(zip(parallel, links)):
        for i, j in pair_links:
            if not (0 <= i < len(src) and 0 <= j < len(tgt)):
                raise ForgeError(f"link {i}-{j} out of range for pair {k}")
            counts[(src[i].lower(), tgt[j])] += 1
    return TranslationDictionary.from_counts(counts)


# --- translators ------------------------------------------------------------

OOV_POLICIES = ("keep", "drop", "error")
_PASSTHROUGH = (Lang.UNIV, Lang.MASK)


class DictionaryTranslator:
    """Per-token sampling from a :class:`TranslationDictionary`.

    One uniform draw is consumed per input token, in order, whether or not
    the token is translated.
    """

    name = "dict"
    embedded = None  # keeps the source corpus's embedded language

    def __init__(self, dictionary: TranslationDictionary, oov: str = "keep"):
        if oov not in OOV_POLICIES:
            raise ValueError(f"oov policy must be one of {OOV_POLICIES}")
        self.dictionary = dictionary
        self.oov = oov

    def translate(self, tokens, rng) -> list[Token]:
        draws = rng.random(len(tokens))
        out = []
        for tok, u in zip(tokens, draws):
            if tok.lang in _PASSTHROUGH:
                out.append(tok)
                continue
            tgt = self.dictionary.sample(tok.surface, u)
            if tgt is not None:
                out.append(Token(tgt, Lang.EMBEDDED, tok.pos))
            elif self.oov == "keep":
                out.append(tok)
            elif self.oov == "error":
                raise OOVError(f"no dictionary entry for {tok.surface!r}")
        return out


class MaskTranslator:
    """Replace every (language-bearing) token by one mask token."""

    name = "mask"
    embedded = GIB

    def __init__(self, mask: str = DEFAULT_MASK):
        self.mask = mask

    def translate(self, tokens, rng=None) -> list[Token]:
        return [
            tok if tok.lang in _PASSTHROUGH else Token(self.mask, Lang.MASK, tok.pos)
            for tok in tokens
        ]


class TableTranslator:
    """Whole-phrase lookup in a phrase table; misses keep the source."""

    name = "table"
    embedded = None

    def __init__(self, table: dict[str, list[str]]):
        self.table = {" ".join(k.lower().split()): tuple(v) for k, v in table.items()}

    def translate(self, tokens, rng=None) -> list[Token]:
        key = " ".join(t.surface for t in tokens).lower()
        tgt = self.table.get(key)
        if not tgt:
            return list(tokens)
        return [Token(w, Lang.EMBEDDED) for w in tgt]

    @classmethod
    def load(cls, path) -> TableTranslator:
        table = {}
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                line = line.rstrip("\n")
                if not line.strip():
                    continue
                parts = line.split("\t")
                if len(parts) != 2 or not parts[0].split() or not parts[1].split():
                    raise CorpusFormatError("expected src phrase<TAB>tgt phrase", path, lineno)
                table[parts[0]] = parts[1].split()
        return cls(table)


def translate_tokens(translator, tokens, rng) -> list[Token]:
    if not tokens:
        raise ValueError("translate_tokens needs at least one token")
    return translator.translate(list(tokens), rng)
