import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from reslie.catalog import load_example

settings.register_profile(
    "reslie", derandomize=True, max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("reslie")

# one representative instance of every catalog entry that carries a p-map
CATALOG_CASES = [
    ("D7", dict(p=5, q=2)),
    ("D7", dict(p=3, q=2)),
    ("C11A", dict(p=5)),
    ("C11A", dict(p=3)),
    ("D5", dict(p=5)),
    ("2A11", dict(p=3)),
    ("2A11", dict(p=5)),
    ("W1", dict(p=5)),
    ("K2m_odd", dict(p=3, m=3)),
    ("K2m_odd", dict(p=5, m=5)),
    ("K2m_odd", dict(p=5, m=3)),
    ("K2m_even", dict(p=3, m=2)),
    ("K2m_even", dict(p=5, m=4)),
]


def case_id(case):
    name, params = case
    return name + "-" + "-".join(f"{k}{v}" for k, v in params.items())


@pytest.fixture(params=CATALOG_CASES, ids=case_id)
def entry(request):
    name, params = request.param
    return load_example(name, **params)


def random_even(alg, rng):
    v = np.zeros(alg.dim, dtype=np.int64)
    v[alg.space.even] = rng.integers(0, alg.p, size=len(alg.space.even))
    return v


def random_vec(alg, rng):
    return rng.integers(0, alg.p, size=alg.dim).astype(np.int64)
