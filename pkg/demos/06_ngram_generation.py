"""
Sampling code-mixed text from n-gram models
===========================================

One model per sentiment label and order is trained on the natural corpus.
Their samples are pooled, shuffled and de-duplicated.
"""

from collections import Counter

from cmforge import Label, combine_generated, ngram_prob, read_corpus, train_ngram
from _toy import toy

ncm = read_corpus(toy("ncm.jsonl"))
labels = [lab for lab in Label if any(s.label is lab for s in ncm)]
models = [train_ngram(ncm, lab, order, lam=0.1) for order in (3, 4, 5, 6) for lab in labels]

m = models[0]
print(f"{m.name}: P(food | <s> i) = {ngram_prob(m, ('i',), 'food'):.4f}")

out = combine_generated(models, per_model_count=100, seed=7)
print(f"kept {len(out)} of {out.meta['generated']} samples "
      f"({out.meta['duplicates_removed']} duplicates removed)")
print(Counter(s.label.value for s in out))
for s in out.sentences[:5]:
    print(f"  [{s.label.value}] {s.text}")
