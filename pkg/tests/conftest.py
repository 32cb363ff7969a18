from __future__ import annotations

import random

import pytest

from configs.toric import toric
from fixtures.catalog import build_decoration, build_fan


@pytest.fixture(scope="session")
def p1():
    return build_fan("p1")


@pytest.fixture(scope="session")
def p2():
    return build_fan("p2")


@pytest.fixture(scope="session")
def f1():
    return build_fan("f1")


@pytest.fixture(scope="session")
def dp7():
    return build_fan("dp7-fig1")


@pytest.fixture(scope="session")
def p3():
    return build_fan("p3")


@pytest.fixture(scope="session")
def tangent():
    return build_decoration("p2-tangent")[1]


@pytest.fixture(scope="session")
def f1_rank2():
    return build_decoration("f1-example31")[1]


@pytest.fixture(scope="session")
def p1_jump():
    return build_decoration("p1-remark")[1]


@pytest.fixture
def rng():
    return random.Random(toric.RANDOM_SEED)


@pytest.fixture(autouse=True)
def _restore_config():
    saved = toric.SCAN_SHELL_CAP, toric.SCAN_QUIET_SHELLS
    yield
    toric.SCAN_SHELL_CAP, toric.SCAN_QUIET_SHELLS = saved
