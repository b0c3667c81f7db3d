import pytest
from hypothesis import given, strategies as st

from decompound.corpus import KnownWordIndex
from decompound.errors import ParseError
from decompound.pos import DEFAULT_WHITELIST, PosTable, content_words, load_pos_table, restrict_index
from decompound.splitter import enumerate_splits


def test_default_whitelist():
    assert DEFAULT_WHITELIST == {
        "ADJA", "ADJD", "ADV", "NN", "NE", "PTKNEG", "VVFIN", "VVIMP", "VVINF", "VVIZU", "VVPP",
        "VAFIN", "VAIMP", "VAINF", "VAPP", "VMFIN", "VMINF", "VMPP",
    }


def test_content_words_majority():
    table = PosTable({"den": {"ART": 100, "NN": 1}, "plan": {"NN": 40}, "half": {"NN": 5, "APPR": 5},
                      "folgen": {"NN": 30, "VVFIN": 20, "ART": 1}})
    assert content_words(table) == {"plan", "folgen"}


def test_restrict_prevents_prefix_split():
    index = KnownWordIndex(["vor", "aussetzung", "voraussetzung"])
    before = {o.render() for o in enumerate_splits("voraussetzung", index)}
    assert "vor aussetzung" in before
    restricted = restrict_index(index, {"aussetzung", "voraussetzung"})
    assert [o.render() for o in enumerate_splits("voraussetzung", restricted)] == ["voraussetzung"]


def test_restrict_identity_and_empty():
    index = KnownWordIndex(["aktion", "plan"])
    assert restrict_index(index, {"aktion", "plan", "extra"}) == index
    empty = restrict_index(index, {"nothing"})
    assert len(empty) == 0
    options = enumerate_splits("aktionplan", empty)
    assert len(options) == 1 and not options[0].is_split


def test_words_missing_from_table_excluded():
    table = PosTable({"plan": {"NN": 3}})
    assert restrict_index(KnownWordIndex(["plan", "aktion"]), content_words(table)).words() == {"plan"}


def test_load_aggregated_and_stream(tmp_path):
    (tmp_path / "agg.tsv").write_text("den\tART\t100\nden\tNN\t1\nplan\tNN\t4\n")
    (tmp_path / "stream.tsv").write_text("Den\tART\nden\tART\nPlan\tNN\n")
    agg = load_pos_table(tmp_path / "agg.tsv")
    assert agg.tags("den") == {"ART": 100, "NN": 1}
    stream = load_pos_table(tmp_path / "stream.tsv")
    assert stream.tags("den") == {"ART": 2}
    assert stream.tags("plan") == {"NN": 1}


@pytest.mark.parametrize("content, line_no", [
    ("den\tART\t1\nplan\tNN\n", 2),
    ("den\tART\tmany\n", 1),
    ("den\n", 1),
    ("den\tART\t0\n", 1),
])
def test_load_malformed(tmp_path, content, line_no):
    (tmp_path / "pos.tsv").write_text(content)
    with pytest.raises(ParseError) as err:
        load_pos_table(tmp_path / "pos.tsv")
    assert err.value.line_no == line_no


tags = st.sampled_from(["NN", "ART", "APPR", "ADJA", "VVFIN", "KON", "XY"])
tables = st.dictionaries(st.text("abcde", min_size=3, max_size=5),
                         st.dictionaries(tags, st.integers(1, 20), min_size=1), max_size=10)


@given(tables, st.sets(tags, min_size=1), st.sets(tags))
def test_content_words_monotone_in_whitelist(entries, small, extra):
    table = PosTable(entries)
    assert content_words(table, small) <= content_words(table, small | extra)


@given(tables, st.sets(st.text("abcde", min_size=3, max_size=5)))
def test_restrict_is_subset(entries, words):
    index = KnownWordIndex(words)
    restricted = restrict_index(index, content_words(PosTable(entries)))
    assert restricted.words() <= index.words()
    for word in words:
        full = set(enumerate_splits(word, index))
        sub = enumerate_splits(word, restricted)
        assert {o for o in sub if o.is_split} <= {o for o in full if o.is_split}
        assert any(not o.is_split for o in sub)
