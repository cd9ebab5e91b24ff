from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import example, given
from hypothesis import strategies as st

from complexbessel import identities as ids
from complexbessel.bessel import bessel_j
from complexbessel.errors import PreconditionError, SectorError


def test_report_pass_rule():
    ok = ids.VerificationReport.build("x", {}, 1.0, 1.0 + 1e-7, 1e-6)
    assert ok.passed
    zero = ids.VerificationReport.build("x", {}, 1e-15, 0.0, 1e-6)
    assert zero.passed and zero.abs_err <= 1e-6
    bad = ids.VerificationReport.build("x", {}, 1.0, 2.0, 1e-6)
    assert not bad.passed


@pytest.mark.parametrize("nu, y, sign", [(1, 1, 1), (0.5, 2, -1), (-0.5, 1, 1)])
def test_weber_real(nu, y, sign):
    rep = ids.verify_weber_real(nu, y, sign)
    assert rep.passed, rep


@pytest.mark.parametrize("nu, y, sign", [(0.4, 1, 1), (0.6j, 0.5, -1)])
def test_hardy_real(nu, y, sign):
    rep = ids.verify_hardy_real(nu, y, sign, tol=1e-5)
    assert rep.passed, rep


def test_hardy_k_oracles():
    assert abs(ids.hardy_k(0.4, 2.0) - 0.11772913317042332612) < 1e-12
    assert abs(ids.hardy_k(0.6j, 1.5) - 0.19433387587110900323) < 1e-12


@pytest.mark.parametrize("verifier, args", [
    (ids.verify_hardy_real, (1.2, 1.0)),
    (ids.verify_weber_real, (-1.0, 1.0)),
    (ids.verify_weber_real, (0.5, -1.0)),
    (ids.verify_main_theorem, (0.6, 1.0, 0.0)),
    (ids.verify_main_theorem, (0.1, 1.0, 7.0)),
    (ids.verify_second_lemma, (0.5, 2.0, 3.0)),
    (ids.verify_emot, (0.5, 3.0, -1.0)),
    (ids.verify_first_lemma, (0.5, 0.0, 1.0)),
])
def test_preconditions(verifier, args):
    with pytest.raises(PreconditionError):
        verifier(*args)


def test_weber_second_interior_and_degenerate():
    assert ids.verify_weber_second(0.3, 1.0, 1.0, tol=1e-8).passed
    rep = ids.verify_weber_second(0.0, 1.0, 1.0)
    assert abs(rep.lhs) < 1e-10 and abs(rep.rhs) < 1e-10 and rep.passed
    with pytest.raises(SectorError):
        ids.verify_weber_second(0.3, 1.0, cmath.exp(0.3j * math.pi))


def test_weber_second_boundary():
    rep = ids.verify_weber_second(0.3, 1 + 0.5j, cmath.exp(0.25j * math.pi), tol=1e-4)
    assert rep.passed, rep


@pytest.mark.parametrize("nu, a, c, sign", [(0.4, 1, 2, 1), (0.5, cmath.exp(1j * math.pi / 8), 1, -1)])
def test_first_lemma(nu, a, c, sign):
    assert ids.verify_first_lemma(nu, a, c, sign).passed


def test_first_lemma_depends_on_a_mod_sign():
    a = cmath.exp(1j * math.pi / 8)
    r1 = ids.first_lemma_rhs(0.4, a, 1.0, 1)
    r2 = ids.first_lemma_rhs(0.4, -a, 1.0, 1)
    assert r1 == r2


@pytest.mark.parametrize("b", [1.0, 2j, 0.0])
def test_emot(b):
    rep = ids.verify_emot(0.5, 3.0, b)
    assert rep.passed, rep


def test_emot_first_integral_vanishes_at_b_zero():
    first, second = ids.emot_lhs(0.5, 3.0, 0.0)
    assert first.value == 0
    rep = ids.verify_emot(0.5, 3.0, 0.0)
    assert abs(-second.value - rep.rhs) < 1e-6 * abs(rep.rhs)


@pytest.mark.parametrize("c, tol", [(0.0, 1e-6), (2.0, 1e-5)])
def test_second_lemma(c, tol):
    assert ids.verify_second_lemma(0.5, 2.0, c, tol=tol).passed


def test_second_lemma_conjugate_sides():
    a = ids.verify_second_lemma(0.5, 2.0, 1.0)
    b = ids.verify_second_lemma(0.5, 2.0, -1.0)
    for v in (a.lhs, a.rhs, b.lhs, b.rhs):
        assert abs(v.imag) < 1e-12 * abs(v)
    assert abs(a.rhs - b.rhs) < 1e-12 * abs(a.rhs)


def test_theorem_rhs_half_turn_relation():
    mu, y, th = 0.2 + 0.1j, 0.7, 0.4
    r0 = ids.theorem_rhs(mu, y, th)
    r1 = ids.theorem_rhs(mu, y, th + math.pi)
    factor = ids.e(-2 * math.cos(th) / y)
    assert abs(r1 - r0 * factor) < 1e-13 * abs(r0)


@pytest.mark.parametrize("theta", [0.0, math.pi / 4, math.pi / 2])
def test_pipeline(theta):
    rep = ids.verify_proof_pipeline(0.2, 1.0, theta, 1, tol=1e-6)
    assert rep.passed, rep


@pytest.mark.parametrize("mu, y, theta", [(0.3, 1.0, 0.7), (0.1j, 2.0, 0.0)])
def test_consistency_examples(mu, y, theta):
    assert ids.verify_reformulation_consistency(mu, y, theta).rel_err < 1e-10


mus = st.builds(complex, st.floats(-0.45, 0.45), st.floats(-0.5, 0.5)).filter(
    lambda m: min(abs(2 * m), abs(2 * m - 1), abs(2 * m + 1)) >= 1e-2)


def _product_scale(mu, y, theta):
    """Size of the two products whose difference forms the reformulated side."""
    t = math.remainder(theta, 2 * math.pi)
    if abs(t) > math.pi / 2:
        t = math.remainder(t - math.pi, 2 * math.pi)
    u = math.pi / y * cmath.exp(-1j * t)
    v = u.conjugate()
    terms = [bessel_j(s * mu, u).value * bessel_j(s * mu, v).value for s in (1, -1)]
    return abs(cmath.cos(math.pi * mu)) / (2 * y) * max(abs(x) for x in terms)


@given(mus, st.floats(0.5, 3.0), st.floats(0.0, 6.28))
@example(0.125j, 0.5, 0.5)
def test_consistency_property(mu, y, theta):
    # near zeros of the right side the product difference cancels, so the
    # error is measured against the size of the products themselves
    rep = ids.verify_reformulation_consistency(mu, y, theta)
    assert rep.abs_err <= 1e-10 * max(abs(rep.rhs), _product_scale(mu, y, theta))


@given(mus, st.floats(0.3, 3.0), st.floats(0.0, 6.28))
def test_consistency_index_symmetry(mu, y, theta):
    a = ids.verify_reformulation_consistency(mu, y, theta)
    b = ids.verify_reformulation_consistency(-mu, y, theta)
    assert abs(a.lhs - b.lhs) <= 1e-10 * abs(a.lhs) and abs(a.rhs - b.rhs) <= 1e-10 * abs(a.rhs)


@given(mus, st.floats(0.3, 3.0), st.floats(0.0, 0.5 * math.pi - 1e-3))
def test_sign_coherence(mu, y, theta):
    # the two signs differ only by the factor e(-+cos theta / y)
    plus = ids.prop_rhs(mu, y, theta, 1)
    minus = ids.prop_rhs(mu, y, theta, -1)
    base_p = plus * ids.e(math.cos(theta) / y)
    base_m = minus * ids.e(-math.cos(theta) / y)
    assert abs(base_p - base_m) <= 1e-10 * abs(base_p)


def test_sweep_contracts():
    empty = ids.sweep(ids.ParamGrid({}), "weber")
    assert empty.reports == [] and empty.summary["count"] == 0 and empty.summary["passed"] == 0
    one = ids.sweep(ids.ParamGrid({"mu": [0.3], "y": [1.0], "theta": [0.7]}), "consistency")
    direct = ids.verify_reformulation_consistency(0.3, 1.0, 0.7)
    assert len(one.reports) == 1 and one.reports[0].lhs == direct.lhs and one.reports[0].rhs == direct.rhs
    grid = ids.ParamGrid({"nu": [0.4, 0.6j, 1.0], "y": [0.5, 2.0]})
    pts = grid.points()
    assert len(pts) == 6 and pts[1] == {"nu": 0.4, "y": 2.0} and pts[2] == {"nu": 0.6j, "y": 0.5}


def test_sweep_rejects_invalid_grid_before_running():
    with pytest.raises(PreconditionError):
        ids.sweep(ids.ParamGrid({"mu": [0.1, 0.7], "y": [1.0], "theta": [0.0]}), "consistency")


def test_run_binding():
    with pytest.raises(PreconditionError):
        ids.run("lemma2", {"nu": 0.5})
    with pytest.raises(PreconditionError):
        ids.run("lemma2", {"nu": 0.5, "a": 2, "c": 0, "q": 1})
    assert ids.run("lemma2", {"nu": 0.5, "a": 2.0, "c": 0.0}).passed
