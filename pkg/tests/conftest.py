import math

import pytest

from thermaldrag import LorentzianMirror, PerfectMirror, RationalMirror


@pytest.fixture(scope="session")
def lorentzian():
    return LorentzianMirror(1.0)


@pytest.fixture(scope="session")
def perfect():
    return PerfectMirror()


@pytest.fixture(scope="session")
def rational_lorentzian():
    """The lorentzian written as a rational model (exact coefficients)."""
    return RationalMirror(r_num=[-1.0], r_den=[1.0, -1.0],
                          s_num=[0.0, -1.0], s_den=[1.0, -1.0])


def weak_mirror(epsilon: float = 0.3, tau: float = 1.0) -> RationalMirror:
    """Unitary mirror with small reflection everywhere.

    r = eps z / D(z), s = (1 - tau^2 z^2) / D(z) with the stable spectral
    factor D(z) = 1 - sqrt(eps^2 + 4 tau^2) z + tau^2 z^2 of
    (1 - tau^2 z^2)^2 - eps^2 z^2; unitarity holds identically.
    """
    root = math.sqrt(epsilon**2 + 4.0 * tau**2)
    den = [1.0, -root, tau**2]
    return RationalMirror(r_num=[0.0, epsilon], r_den=den,
                          s_num=[1.0, 0.0, -tau**2], s_den=den)


@pytest.fixture(scope="session")
def weak():
    return weak_mirror()


@pytest.fixture(scope="session")
def transparent_model():
    """r identically 0, s identically 1: chi vanishes for every omega."""
    return RationalMirror(r_num=[0.0], r_den=[1.0],
                          s_num=[1.0], s_den=[1.0], cutoff=1.0)
