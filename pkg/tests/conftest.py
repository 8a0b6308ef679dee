from importlib import resources

import pytest

from rhetabs.catalog import default_catalog
from rhetabs.ingest import split_document, tag_relations


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def example_text():
    return resources.files("rhetabs").joinpath("data/zero_crossing.txt").read_text("utf-8")


@pytest.fixture(scope="session")
def example_path():
    with resources.as_file(resources.files("rhetabs").joinpath("data/zero_crossing.txt")) as p:
        yield p


@pytest.fixture(scope="session")
def example_doc(example_text, catalog):
    return tag_relations(split_document(example_text), catalog)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
