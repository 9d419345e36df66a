import numpy as np
import pytest

from qchardy.extension import make_disc_map


@pytest.fixture(scope="session")
def identity_map():
    return make_disc_map("identity")


@pytest.fixture(scope="session")
def moebius_map():
    return make_disc_map("moebius:0.5")


@pytest.fixture(scope="session")
def thm2_map():
    return make_disc_map("thm2_sqrt")


@pytest.fixture(scope="session")
def pow2_map():
    return make_disc_map("power:2")


@pytest.fixture(scope="session")
def catalog_maps(identity_map, moebius_map, thm2_map, pow2_map):
    return {
        "identity": identity_map,
        "moebius(0.5)": moebius_map,
        "thm2_sqrt": thm2_map,
        "power(2)": pow2_map,
    }


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260826)
