"""cmforge: synthetic code-mixed corpora for sentiment analysis.

Replacement-based (word, phrase, POS) and n-gram generation of labeled
code-mixed sentences from monolingual data, Code-Mixing Index statistics,
temperature calibration and staged curriculum manifests.
"""

from .corpus import (
    Corpus,
    GenRecord,
    Label,
    Lang,
    LanguageConfig,
    Origin,
    Sentence,
    Token,
    read_corpus,
    tag_language,
    tokenize,
    write_corpus,
)
from .curriculum import CurriculumManifest, build_schedule
from .lexicon import (
    DictionaryTranslator,
    MaskTranslator,
    TableTranslator,
    TranslationDictionary,
    build_dictionary,
    ibm1_align,
    translate_tokens,
)
from .metrics import CalibrationResult, CmiReport, calibrate_temperature, corpus_cmi, sentence_cmi
from .ngram import NgramModel, combine_generated, generate_sentence, ngram_prob, train_ngram
from .postag import TagLexicon, default_lexicon, load_tags, tag_sentence
from .preprocess import EmojiMap, ScoreRecord, clean, mine_neutral
from .synthesis import (
    Span,
    StrategyConfig,
    apply_replacement,
    generate_corpus,
    select_by_pos,
    select_phrases,
    select_words,
    union_pos_datasets,
)

__version__ = "0.1.0"
