"""
From raw tweets to a tagged corpus
==================================

Cleaning removes URLs and '#' signs and swaps emoji for short English
descriptions. A small lexicon + suffix tagger then assigns Penn Treebank tags,
which the POS replacement strategy needs later.
"""

from cmforge import EmojiMap, clean, default_lexicon, mine_neutral
from cmforge.corpus import read_raw_rows
from cmforge.postag import tag_corpus
from cmforge.preprocess import preprocess_file, preprocess_rows, read_scores
from _toy import toy

emoji = EmojiMap.load(toy("emoji.tsv"))
print(clean("so good 😀 #foodie https://t.co/abc", emoji))

corpus = preprocess_file(toy("mono.tsv"), emoji)
print(f"{len(corpus)} sentences survive cleaning (one tweet was only a link)")

tagged = tag_corpus(corpus, default_lexicon())
first = tagged.sentences[0]
print(" ".join(f"{t.surface}/{t.pos}" for t in first.tokens))

# Neutral mining keeps only confident neutral predictions (strictly above 0.85).
candidates = preprocess_rows(read_raw_rows(toy("neutral_candidates.tsv")))
neutral = mine_neutral(candidates, read_scores(toy("scores.tsv")))
print("mined neutral:", list(neutral.ids()))
