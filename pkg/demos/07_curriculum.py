"""
A staged fine-tuning schedule
=============================

Each stage mixes a shrinking slice of synthetic data with all of the natural
data. Slices are nested, so every sentence used late was also used early.
"""

import json
import tempfile
from pathlib import Path

from cmforge import MaskTranslator, StrategyConfig, build_schedule, generate_corpus, read_corpus
from cmforge.preprocess import preprocess_file
from _toy import toy

ncm = read_corpus(toy("ncm.jsonl"))
scm = generate_corpus(preprocess_file(toy("mono.tsv")), StrategyConfig.phrase(0.35),
                      MaskTranslator(), count=300, seed=7)

with tempfile.TemporaryDirectory() as d:
    manifest = build_schedule(scm, ncm, stage_sizes=[300, 100, 30, 10, 0], epochs=3,
                              seed=7, out_dir=d)
    for st in manifest.stages:
        n = len(read_corpus(Path(d) / st.file))
        print(f"stage {st.index}: {st.scm_count:3d} synthetic + {st.ncm_count} natural = {n}")
    print(json.dumps(manifest.hyper, indent=2))
