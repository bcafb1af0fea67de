import os
from pathlib import Path

import numpy as np
import pytest

from nospam.graph import DirectedGraph

DATA_DIR = Path(os.environ.get("NOSPAM_DATA_DIR", Path(__file__).resolve().parents[1] / "data"))


def random_digraph(n, p, rng, reciprocity=None):
    """Bernoulli digraph; ``reciprocity`` optionally forces extra mutual arcs."""
    adj = rng.random((n, n)) < p
    np.fill_diagonal(adj, False)
    if reciprocity is not None:
        mutual = np.triu(rng.random((n, n)) < reciprocity, 1)
        adj |= mutual | mutual.T
    src, dst = np.nonzero(adj)
    return DirectedGraph(n, src, dst)


def gnm_digraph(n, m, seed):
    """Uniform simple digraph with exactly ``m`` arcs."""
    rng = np.random.default_rng(seed)
    keys = rng.choice(n * (n - 1), size=m, replace=False)
    src = keys // (n - 1)
    dst = keys % (n - 1)
    dst = dst + (dst >= src)
    return DirectedGraph(n, src, dst)


def from_labels(*arcs):
    """Graph from ``"a b"`` strings; nodes are indexed in order of appearance."""
    index = {}
    pairs = []
    for arc in arcs:
        a, b = arc.split()
        pairs.append((index.setdefault(a, len(index)), index.setdefault(b, len(index))))
    return DirectedGraph.from_arcs(len(index), pairs, list(index))


@pytest.fixture
def cycle3():
    return from_labels("a b", "b c", "c a")


@pytest.fixture
def ffl():
    return from_labels("X Y", "X Z", "Y Z")


# -- acceptance summary --------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    num, title = marker
    status = _ACCEPTANCE.get(num, (title, "PASS", ""))[1]
    if report.skipped:
        status, detail = "SKIP", str(report.longrepr[-1]) if isinstance(report.longrepr, tuple) else ""
    elif report.failed:
        status, detail = "FAIL", ""
    else:
        detail = ""
    if status != "PASS" or num not in _ACCEPTANCE:
        _ACCEPTANCE[num] = (title, status, detail)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report._criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, status, detail = _ACCEPTANCE[num]
        line = f"[{status}] criterion {num}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
