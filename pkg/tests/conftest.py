"""Shared helpers: seeded generators and random problem factories."""
import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hopfphase import NormalFormCoefficients, SystemParams, build_coupling

settings.register_profile(
    "suite", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

COUPLING_KEYS = ["a_minus1"] + [f"a{k}" for k in range(2, 12)]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_coeffs(rng, scale=0.3, a1=None, only=None):
    """Random coefficient set; `only` restricts which coupling keys are drawn."""
    if a1 is None:
        a1 = complex(-rng.uniform(0.5, 2.0), rng.normal() * 0.5)
    keys = COUPLING_KEYS if only is None else list(only)
    vals = {k: scale * complex(rng.normal(), rng.normal()) for k in keys}
    return NormalFormCoefficients(a1=a1, **vals)


def random_params(rng, n_osc, lam=None, omega=None, epsilon=None, **kw):
    if lam is None:
        lam = rng.uniform(0.02, 0.5)
    if omega is None:
        omega = rng.uniform(-2.0, 2.0)
    if epsilon is None:
        epsilon = rng.uniform(0.0, 0.2)
    return SystemParams(lam=lam, omega=omega, epsilon=epsilon, n_osc=n_osc,
                        coeffs=random_coeffs(rng, **kw))


def random_coupling(rng, n_osc, delta=0.0, **kw):
    return build_coupling(random_params(rng, n_osc, **kw), delta=delta)


@pytest.fixture
def rng():
    return make_rng(20240817)
