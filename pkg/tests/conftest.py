import pytest

import kit
from uvkernel.corpus import CorpusManifest, verify_corpus
from uvkernel.loader import prelude_env


@pytest.fixture(scope="session")
def prelude():
    return prelude_env()


@pytest.fixture(scope="session")
def manifest():
    return CorpusManifest.load(kit.MANIFEST)


@pytest.fixture(scope="session")
def corpus_report(manifest):
    return verify_corpus(prelude_env(), manifest)


@pytest.fixture(scope="session")
def corpus_env(corpus_report):
    assert corpus_report.ok, [e.render() for e in corpus_report.errors]
    return corpus_report.env


def pytest_terminal_summary(terminalreporter):
    if not kit.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(kit.ACCEPTANCE):
        title, passed = kit.ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}")
