import math

import numpy as np
import pytest

from quantumdesks import GameSpec, ObservableFrame, PayoffCoefficients


def make_spec(c1=1.0, c2=1.0, c3=1.0, c4=1.0,
              theta=0.0, lam=0.0, tau=0.0, mu=0.0) -> GameSpec:
    return GameSpec(
        coefficients=PayoffCoefficients(c1, c2, c3, c4),
        alice_frame=ObservableFrame(theta, lam),
        bob_frame=ObservableFrame(tau, mu),
    )


def random_spec(rng: np.random.Generator, c_scale: float = 2.0) -> GameSpec:
    c = rng.uniform(-c_scale, c_scale, 4)
    return make_spec(*c,
                     theta=rng.uniform(0.0, math.pi),
                     lam=rng.uniform(0.0, 2.0 * math.pi),
                     tau=rng.uniform(0.0, math.pi),
                     mu=rng.uniform(0.0, 2.0 * math.pi))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
