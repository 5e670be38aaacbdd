"""
A bilingual dictionary from a tiny parallel corpus
==================================================

IBM Model 1 learns word translation probabilities by expectation
maximization. Linking every English word to its most probable Hindi word and
counting the links gives a weighted dictionary for replacement.
"""

import numpy as np

from cmforge import DictionaryTranslator, StrategyConfig, build_dictionary, generate_corpus
from cmforge.lexicon import IBM1, read_bitext
from cmforge.preprocess import preprocess_file
from _toy import toy

pairs = read_bitext(toy("bitext_toy.tsv"))
model = IBM1(pairs)
for it in range(1, 6):
    model.step()
    print(f"iter {it}: t(khana|food) = {model.prob('khana', 'food'):.4f}  "
          f"t(mujhe|food) = {model.prob('mujhe', 'food'):.4f}")

pairs = read_bitext(toy("bitext.tsv"))
links = IBM1(pairs).train(5).align()
dictionary = build_dictionary(pairs, links)
for word in ("food", "good", "music", "movie"):
    print(word, "->", dictionary.candidates(word))

translator = DictionaryTranslator(dictionary)
source = preprocess_file(toy("mono.tsv"))
scm = generate_corpus(source, StrategyConfig.word(0.4), translator, count=5, seed=3)
for s in scm:
    print(s.text)
