"""Command-line front end: ``decompound <subcommand> ...``."""

from __future__ import annotations

import argparse
import contextlib
import logging
import os
import sys
import tempfile

from . import __version__
from .corpus import (DEFAULT_MIN_LENGTH, build_index, count_words, load_counts, load_index, read_lines,
                     save_counts, save_index, tokenize)
from .errors import ParseError
from .evaluate import evaluate, load_gold
from .lexicon import DEFAULT_ITERATIONS, load_lexicon, read_parallel, save_lexicon, train_lexicon
from .parallel import (DEFAULT_THRESHOLD, apply_knowledge, bootstrap_second_lexicon, learn_knowledge,
                       load_knowledge, save_knowledge)
from .pos import DEFAULT_WHITELIST, content_words, load_pos_table, load_whitelist, restrict_index
from .splitter import SplitConfig, read_split_file, render_line, split_eager, split_frequency, split_raw

log = logging.getLogger("decompound")

METHODS = ("raw", "eager", "frequency", "parallel", "parallel-pos")


class UsageError(Exception):
    pass


@contextlib.contextmanager
def output_file(path):
    """Write to a temp file next to ``path``; rename only on success."""
    if path is None or path == "-":
        yield sys.stdout
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".decompound-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _atomic_save(save, obj, path):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".decompound-", suffix=".tmp")
    os.close(fd)
    try:
        save(obj, tmp)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _split_config(args) -> SplitConfig:
    fillers = frozenset(f for f in args.fillers.split(",") if f)
    deletions = frozenset(d for d in (args.deletions or "").split(",") if d)
    return SplitConfig(fillers=fillers, min_part_length=args.min_part_len, deletions=deletions,
                       max_word_length=args.max_word_len)


def _parallel(args):
    if args.parallel:
        return read_parallel(tsv_path=args.parallel)
    if args.german and args.english:
        return read_parallel(args.german, args.english)
    return None


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"method {args.method!r} requires {flags}")


def _whitelist(args):
    if args.pos_whitelist in (None, "default"):
        return DEFAULT_WHITELIST
    return load_whitelist(args.pos_whitelist)


def _indices(args, counts, config):
    """Return (full index, index used for splitting decisions)."""
    if getattr(args, "index", None):
        index = load_index(args.index, min_length=config.min_part_length)
    else:
        index = build_index(counts, min_length=config.min_part_length)
    if getattr(args, "pos", None):
        allowed = content_words(load_pos_table(args.pos), _whitelist(args))
        return index, restrict_index(index, allowed)
    return index, index


def _lexicon_for(args, corpus, full_index, counts, config):
    if args.lexicon:
        return load_lexicon(args.lexicon)
    # the bootstrap's frequency pass runs without POS restriction
    log.info("no --lexicon given; bootstrapping one from the parallel corpus")
    return bootstrap_second_lexicon(corpus, full_index, counts, config, args.em_iters)


def build_splitter(args):
    """Return a callable word -> SplitOption for ``args.method``."""
    config = _split_config(args)
    method = args.method
    if method == "raw":
        return split_raw
    _require(args, "counts")
    counts = load_counts(args.counts)
    if method == "parallel-pos":
        _require(args, "pos")
    elif method != "parallel":
        args.pos = None
    full_index, index = _indices(args, counts, config)
    if method == "eager":
        return lambda w: split_eager(w, index, counts, config)
    if method == "frequency":
        return lambda w: split_frequency(w, index, counts, config)
    if args.knowledge:
        knowledge = load_knowledge(args.knowledge)
    else:
        corpus = _parallel(args)
        if corpus is None:
            raise UsageError(f"method {method!r} requires --knowledge or a parallel corpus "
                             "(--parallel, or --german and --english)")
        lexicon = _lexicon_for(args, corpus, full_index, counts, config)
        knowledge = learn_knowledge(corpus, index, counts, lexicon, config, args.threshold)
    return lambda w: apply_knowledge(w, knowledge, index, counts, config)


def cmd_count(args):
    counts = count_words(read_lines(args.corpus))
    _atomic_save(save_counts, counts, args.out)
    log.info("counted %d word types", len(counts))


def cmd_index(args):
    counts = load_counts(args.counts)
    _atomic_save(save_index, build_index(counts, args.min_part_len), args.out)


def cmd_split(args):
    split = build_splitter(args)
    cache = {}

    def decide(token):
        if token not in cache:
            cache[token] = split(token)
        return cache[token]

    lines = read_lines(args.input)
    with output_file(args.out) as out:
        if args.sentences:
            for line_no, line in enumerate(lines, 1):
                for token in tokenize(line):
                    out.write(f"{line_no}\t{render_line(decide(token))}\n")
        else:
            for line in lines:
                word = line.strip()
                if word:
                    out.write(render_line(decide(word)) + "\n")


def cmd_train_lexicon(args):
    corpus = _parallel(args)
    if corpus is None:
        raise UsageError("train-lexicon requires --parallel, or --german and --english")
    _atomic_save(save_lexicon, train_lexicon(corpus, args.em_iters), args.out)


def cmd_bootstrap(args):
    corpus = _parallel(args)
    if corpus is None:
        raise UsageError("bootstrap requires --parallel, or --german and --english")
    config = _split_config(args)
    counts = load_counts(args.counts)
    index, _ = _indices(args, counts, config)
    base = load_lexicon(args.lexicon) if args.lexicon else None
    lexicon = bootstrap_second_lexicon(corpus, index, counts, config, args.em_iters, base=base)
    _atomic_save(save_lexicon, lexicon, args.out)


def cmd_learn_splits(args):
    corpus = _parallel(args)
    if corpus is None:
        raise UsageError("learn-splits requires --parallel, or --german and --english")
    config = _split_config(args)
    counts = load_counts(args.counts)
    full_index, index = _indices(args, counts, config)
    lexicon = _lexicon_for(args, corpus, full_index, counts, config)
    knowledge = learn_knowledge(corpus, index, counts, lexicon, config, args.threshold)
    _atomic_save(save_knowledge, knowledge, args.out)


def cmd_evaluate(args):
    gold = load_gold(args.gold)
    predictions = {o.surface: o for o in read_split_file(args.predictions)}
    report = evaluate(predictions, gold, strict=args.strict)
    if args.format == "tsv":
        text = report.format_tsv()
    elif args.format == "jsonl":
        text = report.format_jsonl()
    else:
        text = report.format_table(args.label)
    with output_file(args.report) as out:
        out.write(text + "\n")


def _add_split_options(p):
    p.add_argument("--fillers", default="s,es", help="comma-separated joint fillers (default: s,es)")
    p.add_argument("--min-part-len", type=int, default=DEFAULT_MIN_LENGTH)
    p.add_argument("--deletions", default="", help="comma-separated letters that may be dropped at joints")
    p.add_argument("--max-word-len", type=int, default=100)


def _add_parallel_options(p):
    p.add_argument("--parallel", help="parallel corpus as german<TAB>english lines")
    p.add_argument("--german", help="German side, one sentence per line")
    p.add_argument("--english", help="English side, aligned with --german")
    p.add_argument("--em-iters", type=int, default=DEFAULT_ITERATIONS)


def _add_pos_options(p):
    p.add_argument("--pos", help="POS table (word/tag/count or token/tag TSV)")
    p.add_argument("--pos-whitelist", default="default", help="file with one tag per line, or 'default'")


def make_parser():
    parser = argparse.ArgumentParser(prog="decompound", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count words in a monolingual corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("index", help="write the known-word index built from counts")
    p.add_argument("--counts", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-part-len", type=int, default=DEFAULT_MIN_LENGTH)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("split", help="split words with one of the methods")
    p.add_argument("--input", required=True, help="one word per line (or running text with --sentences)")
    p.add_argument("--out")
    p.add_argument("--method", choices=METHODS, default="frequency")
    p.add_argument("--counts")
    p.add_argument("--index", help="known-word index or word list (default: built from --counts)")
    p.add_argument("--lexicon")
    p.add_argument("--knowledge")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--sentences", action="store_true", help="input is running text; emit per-token lines")
    _add_split_options(p)
    _add_parallel_options(p)
    _add_pos_options(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("train-lexicon", help="train p(english|german) with EM")
    p.add_argument("--out", required=True)
    _add_parallel_options(p)
    p.set_defaults(func=cmd_train_lexicon)

    p = sub.add_parser("bootstrap", help="build the merged lexicon from a frequency-split corpus")
    p.add_argument("--counts", required=True)
    p.add_argument("--lexicon", help="existing lexicon for the unsplit corpus (otherwise trained)")
    p.add_argument("--out", required=True)
    _add_split_options(p)
    _add_parallel_options(p)
    p.set_defaults(func=cmd_bootstrap, index=None, pos=None)

    p = sub.add_parser("learn-splits", help="harvest splitting knowledge from a parallel corpus")
    p.add_argument("--counts", required=True)
    p.add_argument("--lexicon", help="translation lexicon (otherwise bootstrapped)")
    p.add_argument("--index")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    _add_split_options(p)
    _add_parallel_options(p)
    _add_pos_options(p)
    p.set_defaults(func=cmd_learn_splits)

    p = sub.add_parser("evaluate", help="score predictions against a gold standard")
    p.add_argument("--predictions", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--report")
    p.add_argument("--format", choices=("table", "tsv", "jsonl"), default="table")
    p.add_argument("--label", default="")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True,
                      help="compare parts and fillers (default)")
    mode.add_argument("--lenient", dest="strict", action="store_false",
                      help="compare joint positions only")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"decompound {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ParseError, OSError, ValueError, KeyError) as exc:
        print(f"decompound {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
