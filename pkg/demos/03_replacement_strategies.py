"""
Three ways to pick what gets replaced
=====================================

Word-level replacement flips a coin for every token, phrase-level replacement
walks a cursor and grabs short spans, and POS replacement takes every token
with a chosen tag. Each one feeds the same translator, here the constant
<GIB> mask, so the effect is easy to see.
"""

import numpy as np

from cmforge import MaskTranslator, StrategyConfig, apply_replacement, default_lexicon, tokenize
from cmforge import Corpus, Sentence, generate_corpus, select_by_pos, select_phrases, select_words
from cmforge.postag import tag_sentence

s = tag_sentence(Sentence("x", tokenize("i really love the spicy food they serve here"),
                          "positive"), default_lexicon())
mask = MaskTranslator()

for name, spans in [
    ("word   tau=0.3", select_words(s, 0.3, np.random.default_rng(1))),
    ("phrase tau=0.3", select_phrases(s, 0.3, (1, 2, 3), np.random.default_rng(1))),
    ("pos    JJ     ", select_by_pos(s, "JJ")),
]:
    print(name, "->", apply_replacement(s, spans, mask).text)

# generate_corpus cycles over a shuffled source. Every output keeps its
# source label and records where it came from.

src = Corpus(("en", "hi"), [s])
out = generate_corpus(src, StrategyConfig.phrase(0.4), mask, count=3, seed=7)
for x in out:
    print(x.id, x.label.value, x.gen.src, "|", x.text)
