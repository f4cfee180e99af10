import random

import pytest
from hypothesis import HealthCheck, settings

from annulus_mcluster.checks import random_walks, walk_states
from annulus_mcluster.geometry import AnnulusConfig

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SMALL_CONFIGS = [(2, 2, 1), (3, 2, 1), (2, 3, 2), (3, 3, 2), (2, 2, 3)]


@pytest.fixture(params=SMALL_CONFIGS, ids=lambda c: "p{}q{}m{}".format(*c))
def cfg(request):
    return AnnulusConfig(*request.param)


def sample_angulations(cfg, count, seed=0, max_length=10):
    rng = random.Random(seed)
    return walk_states(random_walks(cfg, count, max_length, rng))
