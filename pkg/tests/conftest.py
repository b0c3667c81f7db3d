import pytest

from decompound.corpus import WordCountTable, build_index
from decompound.lexicon import ParallelCorpus

CRITERIA = []


def record_criterion(number, description, status):
    """``status`` is True/False for pass/fail, or a string such as "N/A"."""
    if isinstance(status, bool):
        status = "PASS" if status else "FAIL"
    CRITERIA.append((number, description, status))


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, status in sorted(CRITERIA, key=lambda c: str(c[0])):
        terminalreporter.write_line(f"[{status}] criterion {number}: {description}")


AKTIONSPLAN_COUNTS = {"aktionsplan": 852, "aktion": 960, "aktions": 5, "akt": 224, "ion": 1, "plan": 710}
FREITAG_COUNTS = {"frei": 885, "tag": 1864, "freitag": 556}


@pytest.fixture
def aktion_counts():
    return WordCountTable(AKTIONSPLAN_COUNTS)


@pytest.fixture
def aktion_index(aktion_counts):
    return build_index(aktion_counts)


@pytest.fixture
def freitag_counts():
    return WordCountTable(FREITAG_COUNTS)


def desk_corpus():
    """50 sentence pairs: aktionsplan ~ action plan, freitag ~ friday."""
    blocks = [
        ("der aktionsplan", "the action plan", 10),
        ("am freitag", "on friday", 10),
        ("die aktion", "the action", 8),
        ("der plan", "the plan", 8),
        ("ich bin frei", "i am free", 7),
        ("der tag", "the day", 7),
    ]
    pairs = []
    for german, english, times in blocks:
        pairs += [(german.split(), english.split())] * times
    return ParallelCorpus(pairs)


@pytest.fixture
def desk():
    return desk_corpus()
