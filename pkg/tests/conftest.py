from importlib import resources

import pytest

from cmforge.corpus import Corpus, Lang, Sentence, Token

LANG_CODES = {"m": Lang.MATRIX, "e": Lang.EMBEDDED, "u": Lang.UNIV, "k": Lang.MASK}


def sent(desc, sid="s1", label="positive"):
    """Build a sentence from ``"word/m word/e !/u"``; ``/TAG`` after the lang
    code sets pos, e.g. ``food/m/NN``."""
    toks = []
    for item in desc.split():
        parts = item.split("/")
        surface, lang = parts[0], LANG_CODES[parts[1]]
        pos = parts[2] if len(parts) > 2 else None
        toks.append(Token(surface, lang, pos))
    return Sentence(sid, toks, label)


def corpus_of(*sentences, pair=("en", "hi")):
    return Corpus(pair, sentences)


@pytest.fixture(scope="session")
def toy_dir():
    with resources.as_file(resources.files("cmforge") / "data" / "toy") as p:
        yield p


# criterion number -> (title, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {title}: {detail}")
