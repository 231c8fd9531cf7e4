import numpy as np
import pytest

from pairdiff import _backend, _pykernels

try:
    from pairdiff import _ckernels
except ImportError:
    _ckernels = None

BACKENDS = ["python"] + (["cython"] if _ckernels is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run a test once per available kernel implementation."""
    impl = _pykernels if request.param == "python" else _ckernels
    monkeypatch.setattr(_backend, "kernels", impl)
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
