import pytest

from cadential import corpus_path
from cadential.chordsym import load_leadsheet


@pytest.fixture(scope="session")
def blues():
    return load_leadsheet(corpus_path("blues_for_alice"))


@pytest.fixture(scope="session")
def cherokee():
    return load_leadsheet(corpus_path("cherokee"))


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py::test_criterion" in rep.nodeid and rep.when == "call":
                cid = rep.nodeid.rsplit("[", 1)[1].rstrip("]")
                rows.append((int(cid[2:]), cid, "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for _, cid, status in sorted(rows):
            terminalreporter.write_line(f"{cid}: {status}")
