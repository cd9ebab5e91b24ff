from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complexbessel.errors import DomainError, InnerFailure, SubdivisionLimit, TailBoundExceeded
from complexbessel.quad import (
    BesselCombination,
    IBPTailSpec,
    QuadResult,
    RegularizationSchedule,
    adaptive_quad,
    cosh_substituted_tail,
    damped_radial,
    fourier_radial_split,
    graded_quad,
    ibp_tail,
    iterated_double,
    phase_breaks,
    regularized_fourier_radial,
)
from complexbessel.bessel import bessel_j

from conftest import rel


@pytest.mark.parametrize("f, a, b, expected", [
    (lambda x: np.ones_like(x), 0, 1, 1),
    (np.sin, 0, math.pi, 2),
    (lambda x: np.exp(10j * math.pi * x), 0, 1, 0),
])
def test_adaptive_quad_examples(f, a, b, expected):
    res = adaptive_quad(f, a, b, tol=1e-12)
    assert abs(res.value - expected) <= max(1e-12 * abs(expected), 1e-13)
    assert res.evaluations > 0


def test_adaptive_quad_errors():
    with pytest.raises(DomainError):
        adaptive_quad(np.sin, 1, 0)
    with pytest.raises(SubdivisionLimit):
        adaptive_quad(lambda x: np.sign(x - 1 / 3) + 1e3 * (x > 1 / 3), 0, 1, tol=1e-15, max_depth=5)


def test_graded_quad_endpoint_singularity():
    res = graded_quad(lambda x: x ** -0.5, 0.0, 1.0, tol=1e-12)
    assert abs(res.value - 2) < 1e-10


@given(st.floats(0.1, 3), st.floats(-3, 3))
def test_adaptive_quad_polynomial_exact(a, shift):
    f = lambda x: (x - shift) ** 3
    exact = ((a - shift) ** 4 - shift ** 4) / 4
    assert abs(adaptive_quad(f, 0, a).value - exact) < 1e-10 * max(1, abs(exact))


def test_schedule_validation():
    with pytest.raises(ValueError):
        RegularizationSchedule(eps_start=1e-5, eps_ratio=0.5, eps_steps=12)
    s = RegularizationSchedule()
    assert len(s.epsilons()) == 13 and s.truncation(1.0) == 50 and s.truncation(0.01) == 2000


def test_phase_breaks_cover_range():
    br = phase_breaks(0.0, 10.0, 2 * math.pi, 4 * math.pi)
    assert br[0] == 0 and br[-1] == 10 and np.all(np.diff(br) > 0) and np.max(np.diff(br)) <= 2.0


SCHED = RegularizationSchedule(eps_start=0.5, eps_ratio=0.5, eps_steps=8, richardson_depth=5)


@pytest.mark.parametrize("g, expected, tol", [
    (lambda x: np.ones_like(x), 1j / (2 * math.pi), 1e-8),
    (lambda x: x ** -0.5, 0.5 + 0.5j, 1e-6),
    (lambda x: np.exp(-x), 1 / (1 - 2j * math.pi), 1e-9),
])
def test_regularized_examples(g, expected, tol):
    res = regularized_fourier_radial(g, 1.0, 1, SCHED)
    assert rel(res.value, expected) < tol


def test_regularized_absolutely_convergent_matches_direct():
    g = lambda x: np.exp(-x) * np.cos(3 * x) / (1 + x)
    reg = regularized_fourier_radial(g, 0.7, -1, SCHED).value
    f = lambda x: g(x) * np.exp(-2j * math.pi * 0.7 * x)
    direct = adaptive_quad(f, 0, 60, tol=1e-13, initial_panels=64).value
    assert abs(reg - direct) < 1e-9


def test_regularized_linearity():
    g1 = lambda x: x ** -0.5
    g2 = lambda x: np.exp(-x)
    alpha = 0.3 - 1.2j
    r1 = regularized_fourier_radial(g1, 1.0, 1, SCHED)
    r2 = regularized_fourier_radial(g2, 1.0, 1, SCHED)
    r = regularized_fourier_radial(lambda x: alpha * g1(x) + g2(x), 1.0, 1, SCHED)
    budget = r.err_estimate + abs(alpha) * r1.err_estimate + r2.err_estimate
    assert abs(r.value - (alpha * r1.value + r2.value)) <= budget + 1e-12


def test_regularized_argument_checks():
    with pytest.raises(DomainError):
        regularized_fourier_radial(lambda x: x, 0.0, 1, SCHED)
    with pytest.raises(ValueError):
        regularized_fourier_radial(lambda x: x, 1.0, 2, SCHED)


def test_damped_radial_closed_form():
    p_sq = 1 + 2j
    res = damped_radial(lambda x: np.ones_like(x), p_sq)
    assert rel(res.value, 1 / p_sq) < 1e-10


@pytest.mark.parametrize("sigma, expected", [(0.5, 0.27880558528066197), (1.0, 0.21938393439552029)])
def test_ibp_tail_incomplete_gamma(sigma, expected):
    res = ibp_tail(IBPTailSpec(sigma, 0.0), 1.0)
    assert rel(res.value, expected) < 1e-11


def test_ibp_depth_self_consistency():
    p_sq = -2j * math.pi
    a = ibp_tail(IBPTailSpec(0.5, 2.0, depth=3), p_sq)
    b = ibp_tail(IBPTailSpec(0.5, 2.0, depth=4), p_sq)
    assert abs(a.value - b.value) <= a.err_estimate + b.err_estimate


def test_ibp_tail_domain():
    with pytest.raises(DomainError):
        ibp_tail(IBPTailSpec(0.5), 0)
    with pytest.raises(DomainError):
        ibp_tail(IBPTailSpec(0.5), -1.0)


def test_cosh_tail_power_law():
    # int_1^inf x^-3/2 (x^2-1)^-1/2 dx = sqrt(pi) Gamma(3/4) / (2 Gamma(5/4))
    res = cosh_substituted_tail(lambda x: x ** -1.5, tol=1e-10)
    assert abs(res.value - 1.1981402347355922074) < 1e-9


def test_cosh_tail_zero_and_bound():
    assert cosh_substituted_tail(lambda x: np.zeros_like(x)).value == 0
    with pytest.raises(TailBoundExceeded):
        cosh_substituted_tail(lambda x: x ** -0.5, U=3.0, tol=1e-10)


@pytest.mark.parametrize("c", [0.0, 1.0, 3.0])
def test_cosh_substitution_matches_brute_force(c):
    g = lambda x: np.exp(-x / 5) / x ** 2
    res = cosh_substituted_tail(g, c=c, tol=1e-11)
    delta = 1e-8
    f = lambda x: g(x) * np.cos(c * np.sqrt(x * x - 1)) / np.sqrt(x * x - 1)
    brute = graded_quad(f, 1 + delta, 300.0, tol=1e-12, singular_end="a").value
    # the sliver (1, 1 + delta) contributes g(1) sqrt(2 delta) to leading order
    brute += g(1.0) * math.sqrt(2 * delta)
    assert abs(res.value - brute) < 1e-6


def test_cosh_tail_bessel_combination_lemma_value():
    # nu = 1/2, a = 1, c = 0: w = 1/2 and the right side is built from J_{+-1/4}(1/2)
    g = BesselCombination(orders=(-0.5, 0.5), coefs=(1.0, 1.0), scale=1.0)
    res = cosh_substituted_tail(g, c=0.0, a=1.0, tol=1e-11)
    jm, jp = bessel_j(-0.25, 0.5).value, bessel_j(0.25, 0.5).value
    rhs = 0.5 * math.pi / math.tan(math.pi / 4) * (jm * jm - jp * jp)
    assert rel(res.value, rhs) < 1e-9


def test_iterated_double_examples():
    one = lambda phi: QuadResult(1.0, 0.0)
    assert abs(iterated_double(one, (0, 2 * math.pi), 1e-10).value - 2 * math.pi) < 1e-12
    cos = lambda phi: QuadResult(math.cos(phi), 0.0)
    assert abs(iterated_double(cos, (0, 2 * math.pi), 1e-10).value) < 1e-12


def test_iterated_double_weak_point_and_failure():
    weak = lambda phi: QuadResult(abs(phi) ** -0.5, 0.0)
    res = iterated_double(weak, (-1.0, 1.0), 1e-10, weak_points=(0.0,))
    assert abs(res.value - 4) < 1e-8

    def bad(phi):
        raise DomainError("boom")
    with pytest.raises(InnerFailure):
        iterated_double(bad, (0, 1), 1e-6)


def test_fourier_radial_split_matches_regularization():
    # g = x^-1/2 cos(2 sqrt x) = sum of amp(x) exp(+-2i sqrt x) with amp = x^-1/2 / 2
    g = lambda x: np.cos(2 * np.sqrt(x)) / np.sqrt(x)
    pieces = [(lambda x: 0.5 / np.sqrt(x), 2.0), (lambda x: 0.5 / np.sqrt(x), -2.0)]
    split = fourier_radial_split(g, 1.0, 1, pieces, tol=1e-11).value
    reg = regularized_fourier_radial(g, 1.0, 1, SCHED).value
    # closed form: sqrt(pi/p2) exp(-1/p2), p2 = -2 pi i
    p2 = -2j * math.pi
    exact = np.sqrt(math.pi / p2) * np.exp(-1 / p2)
    assert rel(split, exact) < 1e-9
    assert rel(reg, exact) < 1e-6
