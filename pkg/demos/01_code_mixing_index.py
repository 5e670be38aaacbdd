"""
Measuring how mixed a sentence is
=================================

The Code-Mixing Index is 0 for monolingual text and tops out at 50 when two
languages are perfectly balanced. Punctuation, numbers, URLs and mentions are
language-independent and do not count.
"""

from cmforge import Lang, Sentence, Token, corpus_cmi, read_corpus, sentence_cmi
from _toy import toy

# Hand-tagged tokens: two English words, one Hindi word, one punctuation mark.
s = Sentence("demo", [
    Token("i", Lang.MATRIX),
    Token("love", Lang.MATRIX),
    Token("khana", Lang.EMBEDDED),
    Token("!", Lang.UNIV),
], "positive")
print(f"CMI of {s.text!r}: {sentence_cmi(s):.2f}")   # 100 * (1 - 2/3)

# The bundled natural code-mixed sample carries gold language tags.
ncm = read_corpus(toy("ncm.jsonl"))
report = corpus_cmi(ncm)
print(f"{len(ncm)} natural sentences, mean CMI {report.mean:.2f} (sd {report.stddev:.2f})")

# Histogram buckets are 5 CMI points wide.
for k, n in enumerate(report.histogram):
    if n:
        print(f"  [{5 * k:3d}, {5 * k + 5:3d})  {'#' * n}")
