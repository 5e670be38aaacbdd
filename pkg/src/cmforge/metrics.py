"""Code-Mixing Index and temperature calibration."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, Lang, Sentence
from .errors import ConfigError, ForgeError
from .lexicon import MaskTranslator
from .rng import derive_seed
from .synthesis import StrategyConfig, generate_corpus

HIST_EDGES = np.linspace(0.0, 100.0, 21)


def sentence_cmi(sentence: Sentence) -> float:
    """100 * (1 - max_i w_i / (n - u)), or 0 when every token is univ.

    Languages are the non-univ tags; the mask counts as a language of its own.
    """
    tokens = sentence.tokens if isinstance(sentence, Sentence) else sentence
    n = len(tokens)
    w = Counter(t.lang for t in tokens if t.lang is not Lang.UNIV)
    u = n - sum(w.values())
    if n <= u:
        return 0.0
    return 100.0 * (1.0 - max(w.values()) / (n - u))


@dataclass(frozen=True)
class CmiReport:
    per_sentence: tuple[tuple[str, float], ...]
    mean: float
    stddev: float
    histogram: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "n": len(self.per_sentence),
            "mean": self.mean,
            "stddev": self.stddev,
            "histogram": {
                "edges": [float(e) for e in HIST_EDGES],
                "counts": list(self.histogram),
            },
            "per_sentence": [{"id": i, "cmi": c} for i, c in self.per_sentence],
        }


def corpus_cmi(corpus: Corpus) -> CmiReport:
    if not len(corpus):
        raise ForgeError("CMI of an empty corpus is undefined")
    per = tuple((s.id, sentence_cmi(s)) for s in corpus)
    values = [c for _, c in per]
    mean = math.fsum(values) / len(values)
    # population standard deviation: a single sentence has spread 0
    std = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))
    hist, _ = np.histogram(values, bins=HIST_EDGES)
    return CmiReport(per, mean, std, tuple(int(h) for h in hist))


@dataclass(frozen=True)
class CalibrationResult:
    tau_star: float
    grid: tuple[tuple[float, float, float], ...]  # (tau, mean cmi, |mean - target|)
    target_cmi: float
    samples_per_point: int
    seed: int

    def to_json(self) -> dict:
        return {
            "tau_star": self.tau_star,
            "target_cmi": self.target_cmi,
            "samples_per_point": self.samples_per_point,
            "seed": self.seed,
            "grid": [{"tau": t, "mean_cmi": m, "abs_diff": d} for t, m, d in self.grid],
        }


def parse_grid(text: str) -> list[float]:
    """``"start:stop:step"`` (stop inclusive) or a comma list.

    >>> parse_grid("0:0.2:0.05")
    [0.0, 0.05, 0.1, 0.15, 0.2]
    """
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0 or stop < start:
            raise ConfigError(f"bad grid {text!r}")
        n = int(math.floor((stop - start) / step + 1e-9))
        return [round(start + k * step, 10) for k in range(n + 1)]
    return [float(x) for x in text.split(",") if x.strip()]


def calibrate_temperature(source: Corpus, target_cmi: float, config: StrategyConfig,
                          tau_grid, samples_per_point: int = 2000, seed: int = 0,
                          translator=None, threads: int = 1) -> CalibrationResult:
    """Pick the tau whose synthetic mean CMI is closest to ``target_cmi``.

    Each grid point generates ``samples_per_point`` sentences with a seed
    derived from ``(seed, tau)``; ties go to the smallest tau. The default
    translator is the constant mask, which translates every selected token.
    """
    if not 0.0 <= target_cmi <= 100.0:
        raise ConfigError(f"target CMI {target_cmi} outside [0, 100]")
    grid = sorted(float(t) for t in tau_grid)
    if not grid:
        raise ConfigError("tau grid is empty")
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise ConfigError("tau grid values must lie in [0, 1]")
    if config.kind == "pos":
        raise ConfigError("temperature calibration needs a word or phrase strategy")
    if samples_per_point < 1:
        raise ConfigError("samples_per_point must be >= 1")
    translator = translator or MaskTranslator(source.mask)

    rows = []
    for tau in grid:
        point_seed = derive_seed(seed, f"tau={tau:.6f}")
        scm = generate_corpus(source, config.with_tau(tau), translator,
                              samples_per_point, point_seed, threads=threads)
        mean = math.fsum(sentence_cmi(s) for s in scm) / len(scm)
        rows.append((tau, mean, abs(mean - target_cmi)))
    best = min(rows, key=lambda r: (r[2], r[0]))
    return CalibrationResult(best[0], tuple(rows), float(target_cmi), samples_per_point, seed)
