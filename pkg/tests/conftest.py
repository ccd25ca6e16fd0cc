import pytest

from fglab.lazard import build_ctx


@pytest.fixture(scope="session")
def ctx2():
    return build_ctx(2)


@pytest.fixture(scope="session")
def ctx3():
    return build_ctx(3)


@pytest.fixture(scope="session")
def ctx4():
    return build_ctx(4)


@pytest.fixture(scope="session")
def ctx5():
    return build_ctx(5)
