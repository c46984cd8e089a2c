from contextlib import contextmanager

import numpy as np
import pytest

from theta_norms import _kernels


@pytest.fixture(params=_kernels.available_backends())
def backend(request):
    """Run the test once per kernel backend."""
    previous = _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


@pytest.fixture
def criterion():
    """Record one acceptance line: ``with criterion(n, text) as notes: ...``."""

    @contextmanager
    def record(n: int, text: str):
        notes: list[str] = []
        try:
            yield notes
        except BaseException:
            ACCEPTANCE_LINES[n] = f"FAIL  criterion {n:2d}: {text}  {'; '.join(notes)}".rstrip()
            raise
        ACCEPTANCE_LINES[n] = f"PASS  criterion {n:2d}: {text}  {'; '.join(notes)}".rstrip()

    return record
