import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from recurprimes import _kernels


def pytest_generate_tests(metafunc):
    if "kernel_backend" in metafunc.fixturenames:
        metafunc.parametrize("kernel_backend", _kernels.available_backends())


@pytest.fixture
def kernels(kernel_backend):
    return _kernels.get_backend(kernel_backend)


_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
