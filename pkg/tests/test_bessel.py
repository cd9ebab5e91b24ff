from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from complexbessel.bessel import (
    BranchedArgument,
    EvalOptions,
    bessel_i,
    bessel_j,
    bessel_j_asymptotic,
    bessel_j_series,
    bessel_pair,
    bessel_y,
    dist_to_int,
    hankel,
    hankel_asymptotic,
    j_array,
    pair_array,
)
from complexbessel.errors import DomainError, SectorError

from conftest import rel

# 50-digit mpmath values
J_ORACLES = [
    (0, 0, 1),
    (0.5, math.pi / 2, 2 / math.pi),
    (-0.5, math.pi, -math.sqrt(2) / math.pi),
    (1, 1, 0.44005058574493351596),
    (2j, 10, -2.6421922033687531631 + 1.1785490528974076702j),
    (1.5, -2 + 3j, -1.435303771470134308 - 2.9776058579923041035j),
    (0.3 + 0.1j, BranchedArgument.polar(30, math.pi / 6), 201700.685238251125 + 30240.735033683416925j),
]


@pytest.mark.parametrize("nu, z, expected", J_ORACLES)
def test_j_oracles(nu, z, expected):
    assert rel(bessel_j(nu, z).value, expected) < 1e-9


def test_series_oracle_and_zero():
    assert bessel_j_series(0, 0).value == 1
    assert rel(bessel_j_series(1, 1).value, 0.44005058574493351596) < 1e-14
    with pytest.raises(DomainError):
        bessel_j_series(-0.5, 0)


@pytest.mark.parametrize("nu, z, expected", [
    (0.5, math.pi / 2, 0.0),
    (0, 1, 0.088256964215676957983),
    (0.25, 2, 0.39273839961538505532),
])
def test_y_values(nu, z, expected):
    v = bessel_y(nu, z).value
    assert abs(v - expected) < 1e-9 * max(1, abs(expected))


def test_y_at_zero_is_domain_error():
    with pytest.raises(DomainError):
        bessel_y(0.3, 0)


@pytest.mark.parametrize("nu, z, expected", [
    (0, 0, 1),
    (0.5, 1, math.sqrt(2 / math.pi) * math.sinh(1)),
    (0.7, 3.2, 5.2133809318459072586),
])
def test_i_values(nu, z, expected):
    assert rel(bessel_i(nu, z).value, expected) < 1e-10


def test_hankel_values():
    h = hankel(1, 0.5, 2).value
    assert rel(h, -1j * math.sqrt(2 / (math.pi * 2)) * cmath.exp(2j)) < 1e-10
    assert rel(hankel(2, 0.5, 2).value, h.conjugate()) < 1e-10
    assert rel(hankel(1, 0, 0.5).value, 0.93846980724081290423 - 0.44451873350670655715j) < 1e-9


def test_hankel_asymptotic_half_integer():
    x = 50.0
    h1 = hankel_asymptotic(1, 0.5, x)
    h2 = hankel_asymptotic(2, 0.5, x)
    assert rel(h1.value, -1j * math.sqrt(2 / (math.pi * x)) * cmath.exp(1j * x)) < 1e-13
    assert rel(h2.value, 1j * math.sqrt(2 / (math.pi * x)) * cmath.exp(-1j * x)) < 1e-13
    assert h1.method == "asymptotic"


def test_hankel_asymptotic_vs_connection():
    z = BranchedArgument.polar(30, math.pi / 6)
    a = hankel_asymptotic(1, 0.3 + 0.1j, z).value
    assert rel(a, 4.0700825221065015631e-8 - 3.2399423209292090662e-8j) < 1e-9


@pytest.mark.parametrize("kind, arg", [(1, -math.pi), (1, 2 * math.pi), (2, math.pi), (2, -2 * math.pi)])
def test_hankel_sector_enforced(kind, arg):
    with pytest.raises(SectorError):
        hankel_asymptotic(kind, 0.3, BranchedArgument.polar(30, arg))


def test_two_term_asymptotic_residual_is_second_order():
    # the two-term form has residual O(|z|^-2) relative to the leading term
    nu = 0.3 + 0.2j
    resid = []
    for r in (40.0, 80.0, 160.0):
        full = hankel_asymptotic(1, nu, r).value
        lead = math.sqrt(2 / (math.pi * r)) * cmath.exp(1j * (r - math.pi * nu / 2 - math.pi / 4))
        two = lead * (1 + 1j * (4 * nu * nu - 1) / (8 * r))
        resid.append(abs(full - two) / abs(lead))
    slopes = [math.log2(resid[i] / resid[i + 1]) for i in range(2)]
    assert all(1.8 < s < 2.2 for s in slopes)


def test_options_validation():
    with pytest.raises(ValueError):
        EvalOptions(sector_margin_delta=2.0)
    with pytest.raises(ValueError):
        EvalOptions(tol=0)


orders = st.builds(complex, st.floats(-2, 2), st.floats(-2, 2)).filter(lambda v: abs(v) <= 2)


@given(orders, st.floats(0.5, 40), st.floats(-math.pi, math.pi))
def test_connection_consistency(nu, r, arg):
    assume(dist_to_int(nu) >= 0.05)
    z = BranchedArgument.polar(r, arg)
    j = bessel_j(nu, z)
    h1, h2 = hankel(1, nu, z), hankel(2, nu, z)
    budget = j.err_estimate + h1.err_estimate + h2.err_estimate
    scale = abs(j.value) + abs(h1.value) + abs(h2.value)
    assert abs(j.value - 0.5 * (h1.value + h2.value)) < 10 * budget + 1e-11 * scale


@given(orders, st.floats(0.1, 10), st.floats(-math.pi, 0))
def test_rotation_law(nu, r, arg):
    z = BranchedArgument.polar(r, arg)
    rotated = BranchedArgument.polar(r, arg + math.pi)
    lhs = bessel_j(nu, rotated).value
    rhs = cmath.exp(1j * math.pi * nu) * bessel_j(nu, z).value
    assert abs(lhs - rhs) <= 1e-9 * abs(rhs) + 1e-14


@given(orders, st.floats(20, 30), st.floats(-math.pi, math.pi))
def test_overlap_agreement(nu, r, arg):
    z = BranchedArgument.polar(r, arg)
    s = bessel_j_series(nu, z).value
    assert rel(bessel_j_asymptotic(nu, z).value, s) < 1e-8


@given(orders, st.floats(0.1, 35), st.floats(-math.pi, math.pi))
def test_conjugation(nu, r, arg):
    z = BranchedArgument.polar(r, arg)
    v = bessel_j(nu, z).value
    c = bessel_j(nu.conjugate(), z.conj()).value
    assert abs(c - v.conjugate()) <= 1e-13 * abs(v) + 1e-300


HALF = {
    0.5: lambda x: cmath.sqrt(2 / (math.pi * x)) * cmath.sin(x),
    -0.5: lambda x: cmath.sqrt(2 / (math.pi * x)) * cmath.cos(x),
    1.5: lambda x: cmath.sqrt(2 / (math.pi * x)) * (cmath.sin(x) / x - cmath.cos(x)),
    -1.5: lambda x: cmath.sqrt(2 / (math.pi * x)) * (-cmath.cos(x) / x - cmath.sin(x)),
}


@pytest.mark.parametrize("nu", sorted(HALF))
@given(r=st.floats(0.1, 40), arg=st.floats(-1.5, 1.5))
def test_half_integer_closed_forms(nu, r, arg):
    z = cmath.rect(r, arg)
    expected = HALF[nu](z)
    assume(abs(expected) > 1e-3 * abs(cmath.sqrt(2 / (math.pi * z))) * math.cosh(z.imag))
    assert rel(bessel_j(nu, z).value, expected) < 1e-10


def test_arrays_match_scalars():
    rng = np.random.default_rng(3)
    z = rng.uniform(0.2, 60, 40) * np.exp(1j * rng.uniform(-1.5, 1.5, 40))
    nu = 0.3 + 0.2j
    ref = np.array([bessel_j(nu, complex(v)).value for v in z])
    assert np.max(np.abs(j_array(nu, z) - ref) / np.abs(ref)) < 1e-10
    w = rng.uniform(0.2, 60, 40) * np.exp(1j * rng.uniform(-0.4, 0.4, 40))
    ref = np.array([bessel_pair(nu, complex(v)).value for v in w])
    got = pair_array(nu, w)
    assert np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300)) < 1e-9
