import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import RESULTS  # noqa: E402
from fastpcmm.backends import ElGamalBackend, PaillierBackend  # noqa: E402


@pytest.fixture(scope="session")
def ec():
    return ElGamalBackend(seed=1234, bound=1 << 20)


@pytest.fixture(scope="session")
def pai():
    return PaillierBackend(seed=1234, bits=64)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        title, ok = RESULTS[num]
        terminalreporter.write_line(f"criterion {num} {'PASS' if ok else 'FAIL'}: {title}")
