import random
import warnings

import pytest

from hrpks import curve_q, hierarchy

TOY_P = 3123456773
TOY_Q = 3123456773


def make_toy_params(seed=12345, l_s=64):
    """toy17 with p = q, as in the worked example. Suppresses the expected
    q-range warning."""
    rng = random.Random(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return hierarchy.setup("toy17", TOY_P, TOY_Q, rng, l_s=l_s)


def make_small_params(seed=7, p=97, q=257, l_s=24):
    rng = random.Random(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return hierarchy.setup("toy17", p, q, rng, l_s=l_s)


def make_r3_params(seed=99, p=10007, q=1009, l_s=32):
    """Three generators on toy17 (P1, P2, P1+P2) for depth-2 trees.

    The third point is a dependent combination, which is fine for
    exercising the tree/proof machinery at functional scale.
    """
    curve = curve_q.catalog("toy17")
    g1, g2 = curve.generators
    g3 = curve_q.add_q(curve, g1, g2)
    rng = random.Random(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return hierarchy.setup("toy17", p, q, rng, l_s=l_s,
                               generators=[g1, g2, g3])


@pytest.fixture(scope="session")
def toy():
    return make_toy_params()


@pytest.fixture(scope="session")
def small97():
    return make_small_params()


@pytest.fixture(scope="session")
def r3():
    return make_r3_params()
