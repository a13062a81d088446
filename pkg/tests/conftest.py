import numpy as np
import pytest

from mapel.network import Network
from mapel.topology import paper_fixture


@pytest.fixture
def single_link():
    return Network([[1.0]], [1.0], [1.0], [1.0])


@pytest.fixture
def sym2():
    """Two identical links with weak coupling."""
    return Network([[1.0, 0.1], [0.1, 1.0]], [0.01, 0.01], [1.0, 1.0], [0.5, 0.5])


@pytest.fixture
def dominance2():
    """Full-strength cross gains: only one link should be on."""
    return Network(np.ones((2, 2)), [0.01, 0.01], [1.0, 1.0], [0.5, 0.5])


@pytest.fixture(scope="session")
def g1():
    return paper_fixture("g1")


@pytest.fixture(scope="session")
def g2():
    return paper_fixture("g2")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion; shown in the summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, ok, detail):
        line = f"acceptance {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        lines.append(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
