import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from decompound.corpus import KnownWordIndex, WordCountTable, build_index
from decompound.splitter import (SplitConfig, SplitOption, SplitPart, enumerate_splits, parse_option,
                                 read_split_file, score_frequency, split_eager, split_frequency, split_raw,
                                 unsplit, write_split_file)

from oracles import brute_force_splits, geometric_mean


def as_tuples(options):
    return {tuple((p.word, p.filler) for p in o.parts) for o in options}


def test_enumerate_aktionsplan(aktion_index):
    got = enumerate_splits("aktionsplan", aktion_index)
    assert [o.render() for o in got] == [
        "akt ion(+s) plan",
        "aktion(+s) plan",
        "aktions plan",
        "aktionsplan",
    ]
    assert all(o.known for o in got)


def test_enumerate_short_word():
    got = enumerate_splits("plan", KnownWordIndex(["plan"]))
    assert as_tuples(got) == {(("plan", ""),)}


def test_unknown_word_flagged():
    got = enumerate_splits("xyzzy", KnownWordIndex(["plan"]))
    assert len(got) == 1
    assert not got[0].is_split and not got[0].known


def test_enumerate_preserves_surface(aktion_index):
    for option in enumerate_splits("Aktionsplan", aktion_index):
        assert option.surface == "Aktionsplan"
        assert option.reconstruct() == "aktionsplan"


def test_enumerate_rejects_empty(aktion_index):
    with pytest.raises(ValueError):
        enumerate_splits("", aktion_index)


def test_long_word_guard():
    index = KnownWordIndex(["abc"])
    got = enumerate_splits("abc" * 10, index, SplitConfig(max_word_length=20))
    assert [o.is_split for o in got] == [False]


def test_disallow_whole_word(aktion_index):
    got = enumerate_splits("aktionsplan", aktion_index, SplitConfig(allow_whole_word=False))
    assert all(o.is_split for o in got)
    only = enumerate_splits("plan", aktion_index, SplitConfig(allow_whole_word=False))
    assert [o.is_split for o in only] == [False]


def test_letter_dropping_hook():
    index = KnownWordIndex(["schweigen", "minute"])
    assert as_tuples(enumerate_splits("schweigeminute", index)) == {(("schweigeminute", ""),)}
    got = enumerate_splits("schweigeminute", index, SplitConfig(deletions={"n"}))
    split = [o for o in got if o.is_split]
    assert [o.render() for o in split] == ["schweigen(-n) minute"]
    assert split[0].reconstruct() == "schweigeminute"
    assert parse_option("schweigeminute", "schweigen(-n) minute") == split[0]


@pytest.mark.parametrize("words, expected", [
    (["aktion", "plan"], 825.6),
    (["akt", "ion", "plan"], 54.2),
    (["frei", "tag"], 1284.4),
    (["aktionsplan"], 852.0),
    (["aktions", "plan"], 59.6),
])
def test_score_frequency_paper_values(words, expected):
    counts = WordCountTable({"aktionsplan": 852, "aktion": 960, "aktions": 5, "akt": 224, "ion": 1,
                             "plan": 710, "frei": 885, "tag": 1864})
    option = SplitOption("x", tuple(SplitPart(w) for w in words))
    assert score_frequency(option, counts) == pytest.approx(expected, abs=0.05)


def test_score_zero_count():
    option = SplitOption("x", (SplitPart("aaa"), SplitPart("bbb")))
    assert score_frequency(option, WordCountTable({"aaa": 5})) == 0.0


def test_split_frequency_paper(aktion_index, aktion_counts, freitag_counts):
    assert not split_frequency("aktionsplan", aktion_index, aktion_counts).is_split
    got = split_frequency("freitag", build_index(freitag_counts), freitag_counts)
    assert got.render() == "frei tag"


def test_split_frequency_oov():
    got = split_frequency("unbekannt", KnownWordIndex(["plan"]), WordCountTable({"plan": 3}))
    assert not got.is_split and not got.known


def test_split_frequency_prefers_known_split_over_unknown_whole():
    counts = WordCountTable({"haus": 1, "tür": 1})
    got = split_frequency("haustür", build_index(counts), counts)
    assert got.words == ["haus", "tür"]


def test_split_frequency_tie_prefers_fewer_parts():
    # sqrt(4 * 9) == 6: exact tie between whole word and split
    counts = WordCountTable({"aaabbb": 6, "aaa": 4, "bbb": 9})
    assert not split_frequency("aaabbb", build_index(counts), counts).is_split


def test_split_eager_paper(aktion_index, aktion_counts):
    assert split_eager("aktionsplan", aktion_index, aktion_counts).render() == "akt ion(+s) plan"


def test_split_eager_unsplit_only():
    counts = WordCountTable({"plan": 3})
    assert not split_eager("plan", build_index(counts), counts).is_split


def test_split_eager_two_part_choice():
    # two 2-part options: abc(+s)|def and abcs|def
    counts = WordCountTable({"abc": 2, "abcs": 50, "def": 8})
    index = build_index(counts)
    options = [o for o in enumerate_splits("abcsdef", index) if o.n_parts == 2]
    assert len(options) == 2
    expected = max(options, key=lambda o: geometric_mean([counts[w] for w in o.words]))
    assert split_eager("abcsdef", index, counts) == expected
    assert expected.render() == "abcs def"


def test_split_raw():
    assert split_raw("Aktionsplan") == unsplit("Aktionsplan")
    assert split_raw("Aktionsplan").render() == "Aktionsplan"


def test_option_equality_ignores_case_of_surface():
    a = SplitOption("Aktionsplan", (SplitPart("aktion", "s"), SplitPart("plan")))
    b = SplitOption("aktionsplan", (SplitPart("aktion", "s"), SplitPart("plan")))
    c = SplitOption("aktionsplan", (SplitPart("aktions"), SplitPart("plan")))
    assert a == b and hash(a) == hash(b)
    assert a != c


def test_parse_render_round_trip(aktion_index):
    for option in enumerate_splits("Aktionsplan", aktion_index):
        assert parse_option("Aktionsplan", option.render()) == option


@pytest.mark.parametrize("rendered", ["aktion plan", "aktion(+s) plan(+s)", "akt(+s)", "aktion(s) plan"])
def test_parse_option_rejects(rendered):
    with pytest.raises(ValueError):
        parse_option("aktionsplan", rendered)


def test_split_file_round_trip(tmp_path, aktion_index):
    options = enumerate_splits("Aktionsplan", aktion_index)
    write_split_file(options, tmp_path / "out.tsv")
    assert (tmp_path / "out.tsv").read_text().splitlines()[-1] == "Aktionsplan\tAktionsplan"
    assert read_split_file(tmp_path / "out.tsv") == options


# -- properties --------------------------------------------------------------

ALPHABET = "aesnt"
vocab_words = st.text(alphabet=ALPHABET, min_size=3, max_size=5)
vocabularies = st.sets(vocab_words, min_size=1, max_size=12)


@st.composite
def vocab_and_word(draw):
    vocab = draw(vocabularies)
    pieces = draw(st.lists(st.sampled_from(sorted(vocab)), min_size=1, max_size=3))
    glue = draw(st.lists(st.sampled_from(["", "", "s", "es"]), min_size=len(pieces), max_size=len(pieces)))
    word = "".join(p + g for p, g in zip(pieces, glue[:-1] + [""]))
    if draw(st.booleans()):
        word = draw(st.text(alphabet=ALPHABET, min_size=1, max_size=12))
    return vocab, word[:12] or "a"


@settings(max_examples=400, deadline=None)
@given(vocab_and_word())
def test_enumeration_matches_brute_force(data):
    vocab, word = data
    got = enumerate_splits(word, KnownWordIndex(vocab))
    assert as_tuples(got) == brute_force_splits(word, vocab)
    assert len(got) == len(as_tuples(got))


@settings(max_examples=200, deadline=None)
@given(vocab_and_word())
def test_coverage_and_order(data):
    vocab, word = data
    got = enumerate_splits(word, KnownWordIndex(vocab))
    for option in got:
        assert option.reconstruct() == word
        assert option.parts[-1].filler == ""
        assert all(p.filler in {"", "s", "es"} for p in option.parts)
    assert got == sorted(got, key=SplitOption.sort_key)
    assert got == enumerate_splits(word, KnownWordIndex(vocab))


@settings(max_examples=200, deadline=None)
@given(vocab_and_word(), st.data())
def test_scaling_leaves_argmax_unchanged(data, draw):
    vocab, word = data
    counts = WordCountTable({w: draw.draw(st.integers(1, 500)) for w in vocab})
    factor = draw.draw(st.integers(2, 1000))
    index = KnownWordIndex(vocab)
    base = split_frequency(word, index, counts)
    scaled = counts.scaled(factor)
    assert split_frequency(word, index, scaled) == base
    assert score_frequency(base, scaled) == pytest.approx(factor * score_frequency(base, counts), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(vocab_and_word(), st.data())
def test_eager_has_most_parts(data, draw):
    vocab, word = data
    counts = WordCountTable({w: draw.draw(st.integers(1, 50)) for w in vocab})
    index = KnownWordIndex(vocab)
    eager = split_eager(word, index, counts)
    assert all(eager.n_parts >= o.n_parts for o in enumerate_splits(word, index))


def test_random_compounds_against_oracle():
    rng = random.Random(7)
    for _ in range(60):
        vocab = {"".join(rng.choice(ALPHABET) for _ in range(rng.randint(3, 5))) for _ in range(10)}
        ordered = sorted(vocab)
        for _ in range(20):
            parts = [rng.choice(ordered) for _ in range(rng.randint(1, 3))]
            word = "".join(p + rng.choice(["", "s", "es"]) for p in parts[:-1]) + parts[-1]
            word = word[:12]
            assert as_tuples(enumerate_splits(word, KnownWordIndex(vocab))) == brute_force_splits(word, vocab)


def test_geometric_mean_matches_oracle():
    counts = WordCountTable({"akt": 224, "ion": 1, "plan": 710})
    option = SplitOption("aktionsplan", (SplitPart("akt"), SplitPart("ion", "s"), SplitPart("plan")))
    assert math.isclose(score_frequency(option, counts), geometric_mean([224, 1, 710]), rel_tol=1e-12)
