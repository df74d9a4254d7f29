import pytest

from reidemeister.groups import parse_builtin
from reidemeister.harness import GroupContext, default_corpus

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def record_acceptance(number: int, title: str, ok: bool, detail: str = "") -> str:
    line = f"CRITERION {number} {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_RESULTS[number] = ("PASS" if ok else "FAIL", line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[n][1])


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def contexts(corpus):
    """Loaded default-corpus groups, shared so enumerations happen once per session."""
    return [GroupContext(entry, corpus) for entry in corpus.entries]


@pytest.fixture(scope="session")
def paper32():
    return parse_builtin("builtin:paper32")
