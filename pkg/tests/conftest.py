import random

import pytest
from hypothesis import HealthCheck, settings

from quivtensor import Decomposition, detect_shape, fusion_table, type_a_quiver, type_d_quiver
from quivtensor.decompose import root_lookup

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def shape_of(kind, l, bits=None):
    q = type_a_quiver(l, bits) if kind == "A" else type_d_quiver(l, bits)
    return detect_shape(q)


def decomp(shape, entries):
    """``{"1,1,0": 2}`` style literal -> Decomposition."""
    lk = root_lookup(shape)
    return Decomposition({lk[tuple(int(x) for x in k.split(","))]: m for k, m in entries.items()})


def root(shape, key):
    return root_lookup(shape)[tuple(int(x) for x in key.split(","))]


@pytest.fixture
def a3():
    return shape_of("A", 3)


@pytest.fixture
def d4():
    return shape_of("D", 4)


@pytest.fixture
def a3_table(a3):
    return fusion_table(a3)


@pytest.fixture
def d4_table(d4):
    return fusion_table(d4)


@pytest.fixture
def rng():
    return random.Random(20240601)
