"""Gradual fine-tuning schedule: staged SCM + NCM dataset files and a manifest."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus, write_corpus
from .errors import ConfigError, ForgeError
from .rng import stream

DEFAULT_STAGE_SIZES = (30000, 10000, 3000, 1000, 0)
DEFAULT_EPOCHS = 3
DEFAULT_LEARNING_RATE = 4e-6
# embedding length per NCM embedded language; Hinglish and Spanglish
MAX_SEQUENCE_LENGTH = {"hi": 56, "es": 40}


@dataclass(frozen=True)
class Stage:
    index: int
    scm_count: int
    ncm_count: int
    epochs: int
    file: str


@dataclass(frozen=True)
class CurriculumManifest:
    stages: tuple[Stage, ...]
    seed: int
    scm_source: str | None = None
    ncm_source: str | None = None
    hyper: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "stages": [
                {"index": s.index, "scm_count": s.scm_count, "ncm_count": s.ncm_count,
                 "epochs": s.epochs, "file": s.file}
                for s in self.stages
            ],
            "seed": self.seed,
            "scm_source": self.scm_source,
            "ncm_source": self.ncm_source,
            "hyper": self.hyper,
        }

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n", encoding="utf-8")


def advisory_hyper(ncm: Corpus, max_sequence_length: int | None = None) -> dict:
    if max_sequence_length is None:
        max_sequence_length = MAX_SEQUENCE_LENGTH.get(ncm.embedded, 56)
    return {
        "learning_rate": DEFAULT_LEARNING_RATE,
        "max_sequence_length": max_sequence_length,
        "optimizer": "AdamW",
        "scheduler": "linear",
    }


def _check_sizes(stage_sizes, scm_len, epochs):
    if not stage_sizes:
        raise ConfigError("stage_sizes must not be empty")
    if any(b > a for a, b in zip(stage_sizes, stage_sizes[1:])):
        raise ConfigError(f"stage sizes must be non-increasing: {list(stage_sizes)}")
    if stage_sizes[-1] != 0:
        raise ConfigError("the last stage must use no SCM data")
    if min(stage_sizes) < 0:
        raise ConfigError("stage sizes must be >= 0")
    if epochs < 1:
        raise ConfigError("epochs must be >= 1")
    if scm_len < max(stage_sizes):
        raise ConfigError(f"SCM corpus has {scm_len} sentences but a stage needs {max(stage_sizes)}")


def build_stages(scm: Corpus, ncm: Corpus, stage_sizes=DEFAULT_STAGE_SIZES,
                 seed: int = 0) -> list[Corpus]:
    """Stage k = the first ``stage_sizes[k]`` of the seed-shuffled SCM plus all
    of the NCM, shuffled with a per-stage seed."""
    overlap = set(scm.ids()) & set(ncm.ids())
    if overlap:
        raise ForgeError(f"SCM and NCM share sentence ids: {', '.join(sorted(overlap)[:5])}")
    order = stream(seed, "scm").permutation(len(scm))
    scm_sorted = [scm.sentences[k] for k in order]
    stages = []
    meta = dict(ncm.meta, scm_language_pair="-".join(scm.language_pair))
    for k, size in enumerate(stage_sizes):
        pool = scm_sorted[:size] + list(ncm.sentences)
        perm = stream(seed, "stage", k).permutation(len(pool))
        stages.append(Corpus(ncm.language_pair, [pool[i] for i in perm],
                             dict(meta, stage=str(k)), ncm.mask))
    return stages


def build_schedule(scm: Corpus, ncm: Corpus, stage_sizes=DEFAULT_STAGE_SIZES,
                   epochs: int = DEFAULT_EPOCHS, seed: int = 0, out_dir=None,
                   scm_source=None, ncm_source=None,
                   max_sequence_length: int | None = None) -> CurriculumManifest:
    """Build the staged mix; with ``out_dir`` also write stage files and
    ``manifest.json`` there."""
    stage_sizes = tuple(int(s) for s in stage_sizes)
    _check_sizes(stage_sizes, len(scm), epochs)
    corpora = build_stages(scm, ncm, stage_sizes, seed)
    stages = tuple(
        Stage(k, size, len(ncm), epochs, f"stage{k}.jsonl")
        for k, size in enumerate(stage_sizes)
    )
    manifest = CurriculumManifest(stages, seed, scm_source, ncm_source,
                                  advisory_hyper(ncm, max_sequence_length))
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for st, corpus in zip(stages, corpora):
            write_corpus(corpus, out / st.file)
        manifest.save(out / "manifest.json")
    return manifest
