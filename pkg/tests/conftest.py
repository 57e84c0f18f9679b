import numpy as np
import pytest

from rieszcap.geometry import NodeCloud

_VERDICTS = []


def random_cloud(rng, n_nodes, dim, scale=1.0, min_sep=0.0):
    """Cloud of uniform random nodes in [0, scale]^dim with unit cell measures.

    ``min_sep`` rejects candidates closer than that to an accepted node.
    """
    if min_sep <= 0:
        nodes = rng.uniform(0.0, scale, size=(n_nodes, dim))
    else:
        kept = []
        while len(kept) < n_nodes:
            x = rng.uniform(0.0, scale, size=dim)
            if all(np.linalg.norm(x - y) >= min_sep for y in kept):
                kept.append(x)
        nodes = np.array(kept)
    return NodeCloud(nodes, np.ones(n_nodes), dim, 0.5 * scale * n_nodes ** (-1.0 / dim))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion and assert it."""

    def record(number, title, checks):
        failed = [name for name, ok in checks if not ok]
        line = f"{'PASS' if not failed else 'FAIL'} criterion {number}: {title}"
        if failed:
            line += " (failed: " + "; ".join(failed) + ")"
        print(line)
        _VERDICTS.append(line)
        assert not failed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
