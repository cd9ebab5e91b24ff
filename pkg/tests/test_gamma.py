from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from complexbessel.errors import PoleError
from complexbessel.gamma import gamma, reciprocal_gamma

from conftest import rel

# 50-digit mpmath values
ORACLES = [
    (1, 1),
    (0.5, math.sqrt(math.pi)),
    (5, 24),
    (0.3 + 2j, 0.05746533756958803346 - 0.074984912582646138176j),
    (-2.5 + 0.5j, -0.3338752035224323374 - 0.20645730796360841492j),
    (12.7, 225322480.2414184856),
]


@pytest.mark.parametrize("z, expected", ORACLES)
def test_gamma_oracles(z, expected):
    assert rel(gamma(z), expected) < 1e-12


@pytest.mark.parametrize("z", [0, -1, -3, -3 + 1e-13])
def test_poles(z):
    with pytest.raises(PoleError):
        gamma(z)


@pytest.mark.parametrize("z, expected", [(0, 0), (-3, 0), (2, 1)])
def test_reciprocal_gamma_values(z, expected):
    assert reciprocal_gamma(z) == expected


complexes = st.builds(complex, st.floats(-20, 20), st.floats(-20, 20))


def far_from_poles(z: complex) -> bool:
    return abs(z) <= 20 and min(abs(z + n) for n in range(0, 22)) >= 0.1


@given(complexes)
def test_recurrence(z):
    assume(far_from_poles(z) and far_from_poles(z + 1))
    g1 = gamma(z + 1)
    assert abs(g1 - z * gamma(z)) / abs(g1) < 1e-11


@given(complexes)
def test_reflection(z):
    assume(far_from_poles(z) and far_from_poles(1 - z) and abs(z.imag) < 10)
    lhs = gamma(z) * gamma(1 - z)
    assert rel(lhs, math.pi / cmath.sin(math.pi * z)) < 1e-10


@given(complexes)
def test_reciprocal_conjugation(z):
    assert abs(reciprocal_gamma(z.conjugate()) - reciprocal_gamma(z).conjugate()) <= 1e-15 * (
        1 + abs(reciprocal_gamma(z)))


@given(complexes)
def test_reciprocal_matches_inverse(z):
    assume(far_from_poles(z) and abs(gamma(z)) < 1e300)
    assert rel(reciprocal_gamma(z) * gamma(z), 1) < 1e-12
