import pathlib

import pytest

from nctt.surface import loader

TESTS = pathlib.Path(__file__).resolve().parent
REPO = TESTS.parent
GOOD = TESTS / "good"
BAD = TESTS / "bad"

# criterion number -> verdict line, filled in by test_acceptance
ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = {}


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash[ACCEPTANCE]
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])


@pytest.fixture(scope="session")
def prelude() -> dict:
    return loader.Loader().load_prelude()


@pytest.fixture
def check_src(prelude):
    """Check a source string with the prelude in scope; returns the module."""

    def run(src: str, with_prelude: bool = True):
        return loader.check_source(src, dict(prelude) if with_prelude else {})

    return run
