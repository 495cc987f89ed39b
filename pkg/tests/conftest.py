import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=200,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def tent2():
    from fuzzyshadow.systems import tent

    return tent(2.0)


@pytest.fixture
def three_piece():
    from fuzzyshadow.systems import example43_map

    return example43_map()


@pytest.fixture
def standard_metric():
    from fuzzyshadow.fuzzy_metric import StandardFuzzyMetric

    return StandardFuzzyMetric()


@pytest.fixture
def ratio_phi_metric():
    from fuzzyshadow.fuzzy_metric import RatioPhiFuzzyMetric

    return RatioPhiFuzzyMetric()


@pytest.fixture
def ratio_metric():
    from fuzzyshadow.fuzzy_metric import RatioFuzzyMetric

    return RatioFuzzyMetric()
