"""``forge`` command line interface.

Every subcommand writes data to files and prints a JSON run report on
stdout. Exit status: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from collections import Counter
from pathlib import Path

from . import __version__
from .corpus import LanguageConfig, read_corpus, write_corpus
from .curriculum import DEFAULT_EPOCHS, DEFAULT_STAGE_SIZES, build_schedule
from .errors import ConfigError, ForgeError
from .lexicon import (
    DictionaryTranslator,
    MaskTranslator,
    TableTranslator,
    TranslationDictionary,
    build_dictionary,
    ibm1_align,
    read_bitext,
    read_links,
    write_links,
)
from .metrics import calibrate_temperature, corpus_cmi, parse_grid
from .ngram import combine_generated, load_model, save_model, train_ngram
from .postag import TagLexicon, default_lexicon, load_tags, tag_corpus
from .preprocess import DEFAULT_NEUTRAL_THRESHOLD, EmojiMap, mine_neutral, preprocess_file, read_scores
from .synthesis import StrategyConfig, generate_corpus, union_pos_datasets

log = logging.getLogger("cmforge")


def digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _int_list(s):
    return [int(x) for x in s.split(",") if x.strip()]


def _str_list(s):
    return [x.strip() for x in s.split(",") if x.strip()]


def _lang_config(args) -> LanguageConfig:
    return LanguageConfig(
        matrix=args.matrix,
        embedded=args.embedded,
        matrix_scripts=tuple(_str_list(args.matrix_script.upper())),
        embedded_scripts=tuple(_str_list(args.embedded_script.upper())),
        mask=args.mask,
    )


def _read(path, args):
    return read_corpus(path, "jsonl", _lang_config(args))


def _translator(args, mask):
    kind = args.translator
    if kind == "mask":
        return MaskTranslator(mask)
    if kind == "dict":
        if not args.dict:
            raise ConfigError("--translator dict needs --dict")
        return DictionaryTranslator(TranslationDictionary.load(args.dict), args.oov)
    if kind == "table":
        if not args.table:
            raise ConfigError("--translator table needs --table")
        return TableTranslator.load(args.table)
    raise ConfigError(f"unknown translator {kind!r}")


# --- subcommands: each returns (inputs, outputs, counts) ----------------------

def cmd_preprocess(args):
    emoji = EmojiMap.load(args.emoji) if args.emoji else EmojiMap()
    corpus = preprocess_file(args.input, emoji, _lang_config(args))
    write_corpus(corpus, args.out)
    rows = sum(1 for line in open(args.input, encoding="utf-8") if line.strip())
    return [args.input] + ([args.emoji] if args.emoji else []), [args.out], {
        "rows": rows, "sentences": len(corpus), "dropped_empty": rows - len(corpus)}


def cmd_mine_neutral(args):
    cands = _read(args.input, args)
    mined = mine_neutral(cands, read_scores(args.scores), args.threshold)
    write_corpus(mined, args.out)
    return [args.input, args.scores], [args.out], {"candidates": len(cands), "kept": len(mined)}


def cmd_cmi(args):
    corpus = _read(args.input, args)
    report = corpus_cmi(corpus)
    outputs = []
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8")
        outputs.append(args.report)
    return [args.input], outputs, {"sentences": len(corpus), "mean_cmi": report.mean,
                                   "stddev_cmi": report.stddev}


def _strategy(args, tau=None):
    if args.strategy == "pos":
        if not args.pos:
            raise ConfigError("--strategy pos needs --pos")
        return StrategyConfig.pos(*_str_list(args.pos))
    lengths = tuple(_int_list(args.phrase_lengths))
    if args.strategy == "phrase":
        return StrategyConfig.phrase(tau, lengths)
    return StrategyConfig.word(tau)


def cmd_calibrate(args):
    source = _read(args.source, args)
    inputs = [args.source]
    if args.target_cmi is not None:
        target = args.target_cmi
    else:
        target = corpus_cmi(_read(args.ncm, args)).mean
        inputs.append(args.ncm)
    if args.strategy == "pos":
        raise ConfigError("calibration needs --strategy word or phrase")
    config = _strategy(args, tau=0.0)
    translator = _translator(args, source.mask)
    if args.dict:
        inputs.append(args.dict)
    result = calibrate_temperature(source, target, config, parse_grid(args.grid),
                                   args.samples, args.seed, translator, args.threads)
    Path(args.out).write_text(json.dumps(result.to_json(), indent=2) + "\n", encoding="utf-8")
    return inputs, [args.out], {"grid_points": len(result.grid), "tau_star": result.tau_star,
                                "target_cmi": target}


def cmd_align(args):
    pairs = read_bitext(args.bitext)
    links = ibm1_align(pairs, args.iters)
    write_links(links, args.out)
    return [args.bitext], [args.out], {"pairs": len(pairs), "links": sum(map(len, links))}


def cmd_build_dict(args):
    pairs = read_bitext(args.bitext)
    d = build_dictionary(pairs, read_links(args.links))
    d.save(args.out)
    return [args.bitext, args.links], [args.out], {"entries": len(d)}


def cmd_tag(args):
    corpus = _read(args.input, args)
    inputs = [args.input]
    if args.tags:
        tagged = load_tags(corpus, args.tags)
        inputs.append(args.tags)
    else:
        if args.lexicon:
            lex = TagLexicon.load(args.lexicon, args.suffixes)
            inputs += [p for p in (args.lexicon, args.suffixes) if p]
        else:
            lex = default_lexicon()
        tagged = tag_corpus(corpus, lex)
    write_corpus(tagged, args.out)
    return inputs, [args.out], {"sentences": len(tagged)}


def _tau(args):
    if args.tau is not None:
        return args.tau
    if args.tau_from:
        return json.loads(Path(args.tau_from).read_text(encoding="utf-8"))["tau_star"]
    raise ConfigError(f"--strategy {args.strategy} needs --tau or --tau-from")


def cmd_generate(args):
    source = _read(args.source, args)
    inputs = [args.source] + [p for p in (args.dict, args.table, args.tau_from) if p]
    translator = _translator(args, source.mask)
    count = len(source) if args.count is None else args.count
    if args.strategy == "pos":
        tags = _str_list(args.pos or "")
        if not tags:
            raise ConfigError("--strategy pos needs --pos")
        if args.union:
            parts = [generate_corpus(source, StrategyConfig.pos(t), translator, count,
                                     args.seed, args.threads) for t in tags]
            out = union_pos_datasets(parts)
        else:
            out = generate_corpus(source, StrategyConfig.pos(*tags), translator, count,
                                  args.seed, args.threads)
    else:
        out = generate_corpus(source, _strategy(args, _tau(args)), translator, count,
                              args.seed, args.threads)
    write_corpus(out, args.out)
    return inputs, [args.out], {"source": len(source), "generated": len(out)}


def cmd_ngram_train(args):
    corpus = _read(args.input, args)
    model = train_ngram(corpus, args.label, args.order, args.lam)
    save_model(model, args.out)
    return [args.input], [args.out], {"vocab": len(model.support),
                                      "sentences": sum(1 for s in corpus if s.label.value == args.label)}


def cmd_ngram_generate(args):
    paths = _str_list(args.models)
    models = [load_model(p) for p in paths]
    out = combine_generated(models, args.count, args.seed, args.max_len)
    write_corpus(out, args.out)
    return paths, [args.out], {"models": len(models), "sentences": len(out),
                               "duplicates_removed": int(out.meta["duplicates_removed"])}


def cmd_curriculum(args):
    scm, ncm = _read(args.scm, args), _read(args.ncm, args)
    manifest = build_schedule(scm, ncm, _int_list(args.stages), args.epochs, args.seed,
                              args.out_dir, args.scm, args.ncm, args.max_seq_len)
    out_dir = Path(args.out_dir)
    outputs = [str(out_dir / s.file) for s in manifest.stages] + [str(out_dir / "manifest.json")]
    return [args.scm, args.ncm], outputs, {
        "stages": len(manifest.stages),
        "stage_sizes": [s.scm_count + s.ncm_count for s in manifest.stages]}


def cmd_stats(args):
    corpus = _read(args.input, args)
    labels = Counter(s.label.value for s in corpus)
    origins = Counter(s.origin.value for s in corpus)
    langs = Counter(t.lang.value for s in corpus for t in s.tokens)
    ntok = sum(langs.values())
    counts = {
        "sentences": len(corpus),
        "tokens": ntok,
        "labels": dict(sorted(labels.items())),
        "origins": dict(sorted(origins.items())),
        "langs": dict(sorted(langs.items())),
        "mean_length": ntok / len(corpus) if len(corpus) else 0.0,
        "language_pair": list(corpus.language_pair),
    }
    if len(corpus):
        counts["mean_cmi"] = corpus_cmi(corpus).mean
    return [args.input], [], counts


# --- parser -----------------------------------------------------------------

def _parents():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    g.add_argument("--log-level", default=argparse.SUPPRESS)
    lang = argparse.ArgumentParser(add_help=False)
    g = lang.add_argument_group("language tagging")
    g.add_argument("--matrix", default="en", help="matrix language id")
    g.add_argument("--embedded", default="hi", help="embedded language id")
    g.add_argument("--matrix-script", default="LATIN")
    g.add_argument("--embedded-script", default="DEVANAGARI")
    g.add_argument("--mask", default="<GIB>")
    return common, lang


def _add_translator_args(p):
    p.add_argument("--translator", choices=("mask", "dict", "table"), default="mask")
    p.add_argument("--dict", help="dictionary TSV (src, tgt, weight)")
    p.add_argument("--table", help="phrase table TSV (src phrase, tgt phrase)")
    p.add_argument("--oov", choices=("keep", "drop", "error"), default="keep")


def build_parser() -> argparse.ArgumentParser:
    common, lang = _parents()
    parser = argparse.ArgumentParser(prog="forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--log-level", default=os.environ.get("FORGE_LOG", "WARNING"))
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, func, helptext, parents=(common, lang)):
        p = sub.add_parser(name, help=helptext, parents=list(parents))
        p.set_defaults(func=func)
        return p

    p = add("preprocess", cmd_preprocess, "clean raw id/text/label TSV into a jsonl corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--emoji")
    p.add_argument("--out", required=True)

    p = add("mine-neutral", cmd_mine_neutral, "keep confidently-neutral sentences")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_NEUTRAL_THRESHOLD)
    p.add_argument("--out", required=True)

    p = add("cmi", cmd_cmi, "Code-Mixing Index report")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--report")

    p = add("calibrate", cmd_calibrate, "choose tau matching a target CMI")
    p.add_argument("--source", required=True)
    tgt = p.add_mutually_exclusive_group(required=True)
    tgt.add_argument("--target-cmi", type=float)
    tgt.add_argument("--ncm", help="natural corpus whose mean CMI is the target")
    p.add_argument("--strategy", choices=("word", "phrase"), default="phrase")
    p.add_argument("--phrase-lengths", default="1,2,3")
    p.add_argument("--grid", default="0:1:0.05")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--out", required=True)
    _add_translator_args(p)

    p = add("align", cmd_align, "IBM Model 1 word alignment (Pharaoh output)", parents=(common,))
    p.add_argument("--bitext", required=True)
    p.add_argument("--iters", type=int, default=5)
    p.add_argument("--out", required=True)

    p = add("build-dict", cmd_build_dict, "weighted dictionary from alignments", parents=(common,))
    p.add_argument("--bitext", required=True)
    p.add_argument("--links", required=True)
    p.add_argument("--out", required=True)

    p = add("tag", cmd_tag, "attach POS tags")
    p.add_argument("--in", dest="input", required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--tags", help="authoritative tag file (id<TAB>tags)")
    src.add_argument("--lexicon", help="word<TAB>tag lexicon for the built-in tagger")
    p.add_argument("--suffixes", help="suffix<TAB>tag rules (with --lexicon)")
    p.add_argument("--out", required=True)

    p = add("generate", cmd_generate, "replacement-based SCM generation")
    p.add_argument("--source", required=True)
    p.add_argument("--strategy", choices=("word", "phrase", "pos"), required=True)
    p.add_argument("--tau", type=float)
    p.add_argument("--tau-from", help="calibration JSON whose tau_star to use")
    p.add_argument("--phrase-lengths", default="1,2,3")
    p.add_argument("--pos", help="comma-separated Penn tags")
    p.add_argument("--union", action="store_true", help="one dataset per tag, then union")
    p.add_argument("--count", type=int)
    p.add_argument("--out", required=True)
    _add_translator_args(p)

    p = sub.add_parser("ngram", help="n-gram language model SCM")
    nsub = p.add_subparsers(dest="ngram_command", metavar="ACTION")
    q = nsub.add_parser("train", parents=[common, lang])
    q.set_defaults(func=cmd_ngram_train)
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--label", choices=("positive", "negative", "neutral"), required=True)
    q.add_argument("--order", type=int, default=3)
    q.add_argument("--lambda", dest="lam", type=float, default=0.1)
    q.add_argument("--out", required=True)
    q = nsub.add_parser("generate", parents=[common])
    q.set_defaults(func=cmd_ngram_generate)
    q.add_argument("--models", required=True, help="comma-separated model files")
    q.add_argument("--count", type=int, default=250, help="sentences per model")
    q.add_argument("--max-len", type=int, default=50)
    q.add_argument("--out", required=True)

    p = add("curriculum", cmd_curriculum, "staged SCM/NCM training files + manifest")
    p.add_argument("--scm", required=True)
    p.add_argument("--ncm", required=True)
    p.add_argument("--stages", default=",".join(map(str, DEFAULT_STAGE_SIZES)))
    p.add_argument("--epochs", type=int, default=DEFAULT_EPOCHS)
    p.add_argument("--max-seq-len", type=int)
    p.add_argument("--out-dir", required=True)

    p = add("stats", cmd_stats, "corpus summary")
    p.add_argument("--in", dest="input", required=True)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    logging.basicConfig(level=str(args.log_level).upper(), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("forge: error: --threads must be >= 1", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        inputs, outputs, counts = args.func(args)
    except FileNotFoundError as e:
        print(f"forge: error: no such file: {e.filename}", file=sys.stderr)
        return 1
    except (ForgeError, OSError, ValueError, KeyError) as e:
        print(f"forge: error: {e}", file=sys.stderr)
        return 1
    report = {
        "command": args.command if args.command != "ngram" else f"ngram {args.ngram_command}",
        "config": _config(args),
        "inputs": {str(p): digest(p) for p in inputs},
        "outputs": {str(p): digest(p) for p in outputs},
        "counts": counts,
        "wall_time": round(time.perf_counter() - start, 6),
    }
    print(json.dumps(report, indent=2, ensure_ascii=False))
    return 0


if __name__ == "__main__":
    sys.exit(main())
