import pytest

from symbif import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the JIT kernels once so timed tests measure computation, not compilation
    _kernels.warmup()
