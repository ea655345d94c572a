"""Shared fixtures and the acceptance-summary reporting hook."""
from __future__ import annotations

from pathlib import Path

import pytest

from bridgekit.gbdt import HyperParams, encode, train
from bridgekit.harmonize import harmonize_corpus
from bridgekit.pairgen import build_balanced_dataset
from bridgekit.synth import balanced_sampling_corpus, planted_rule_corpus

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixture_path() -> Path:
    return DATA_DIR / "harmonize_fixture.sff"


@pytest.fixture(scope="session")
def planted_docs():
    docs, _ = harmonize_corpus(planted_rule_corpus(42))
    return docs


@pytest.fixture(scope="session")
def planted_split(planted_docs):
    return planted_docs[:18], planted_docs[18:]


@pytest.fixture(scope="session")
def planted_train_dataset(planted_split):
    train_docs, _ = planted_split
    return build_balanced_dataset(train_docs, seed=3, corpus="planted", partition="train")


@pytest.fixture(scope="session")
def planted_eval_dataset(planted_split):
    _, eval_docs = planted_split
    return build_balanced_dataset(eval_docs, seed=4, corpus="planted", partition="eval")


@pytest.fixture(scope="session")
def planted_full_dataset(planted_docs):
    return build_balanced_dataset(planted_docs, seed=3, corpus="planted", partition="all")


@pytest.fixture(scope="session")
def planted_model(planted_train_dataset):
    X, y, schema = encode(planted_train_dataset)
    hp = HyperParams(n_rounds=100, max_depth=4, learning_rate=0.3)
    return train(X, y, hp, seed=1, schema=schema)


@pytest.fixture(scope="session")
def sampling_docs():
    docs, _ = harmonize_corpus(balanced_sampling_corpus(9))
    return docs


# ---------------------------------------------------------------------------
# one summary line per acceptance criterion, printed after the run

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.skipped:
        _ACCEPTANCE_RESULTS[name] = "SKIP"
    elif report.when == "setup" and report.failed:
        _ACCEPTANCE_RESULTS[name] = "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_ACCEPTANCE_RESULTS):
        label = name.removeprefix("test_").replace("_", " ")
        terminalreporter.write_line(f"{label}: {_ACCEPTANCE_RESULTS[name]}")
