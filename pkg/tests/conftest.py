import numpy as np
import pytest
from hypothesis import settings

from lowsnr import ChannelParams, StormSpec, build_storm

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def storm_425():
    """T=4, Nt=2, zeta=2: four full-peak points and the zero matrix."""
    params = ChannelParams.from_zeta(T=4, Nt=2, Nr=1, P=0.1, zeta=2.0)
    return build_storm(StormSpec(params))
