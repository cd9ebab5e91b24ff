"""Numerical verification of the integral identities.

Every verifier evaluates the integral side with the engines in
:mod:`complexbessel.quad` and the closed-form side with the special
functions of :mod:`complexbessel.bessel` / :mod:`complexbessel.spherical`,
then compares them in a :class:`VerificationReport`.  The two sides share
no code path beyond the basic Bessel routines.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .bessel import (
    DEFAULT_OPTS,
    asymptotic_sum,
    bessel_i,
    bessel_j,
    bessel_pair,
    bessel_y,
    dist_to_int,
    j_array,
    pair_array,
)
from .errors import BesselError, PreconditionError, SectorPreconditionError
from .quad import (
    BesselCombination,
    QuadResult,
    RegularizationSchedule,
    adaptive_quad,
    cosh_substituted_tail,
    damped_radial,
    fourier_radial_split,
    graded_quad,
    iterated_double,
    regularized_fourier_radial,
)
from .spherical import ray_asymptotic_start, ray_pieces, spherical_j, spherical_j_array

TAU = 2 * math.pi
ZERO_RHS = 1e-12

TOL_ABSOLUTE = 1e-6
TOL_REGULARIZED = 1e-4
TOL_DOUBLE = 1e-2


def e(x):
    """exp(2 pi i x)."""
    return cmath.exp(2j * math.pi * x)


@dataclass
class VerificationReport:
    identity_name: str
    params: dict
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    diagnostics: list = field(default_factory=list)

    @classmethod
    def build(cls, name: str, params: dict, lhs: complex, rhs: complex, tol: float,
              diagnostics=(), rel_err: float | None = None) -> "VerificationReport":
        lhs, rhs = complex(lhs), complex(rhs)
        abs_err = abs(lhs - rhs)
        if rel_err is None:
            rel_err = abs_err / abs(rhs) if rhs != 0 else (0.0 if abs_err == 0 else math.inf)
        ok = bool(rel_err <= tol or (abs(rhs) < ZERO_RHS and abs_err <= tol))
        return cls(name, dict(params), lhs, rhs, float(abs_err), float(rel_err), tol, ok, list(diagnostics))

    @classmethod
    def failure(cls, name: str, params: dict, tol: float, exc: Exception) -> "VerificationReport":
        return cls(name, dict(params), complex(math.nan, math.nan), complex(math.nan, math.nan),
                   math.nan, math.nan, tol, False, [f"error: {type(exc).__name__}: {exc}"])

    def as_dict(self) -> dict:
        return asdict(self)


def _require(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


def _sign(sign) -> int:
    s = int(sign)
    _require(s in (1, -1), "sign must be +1 or -1")
    return s


def _note(label: str, res) -> str:
    return f"{label}: err_estimate={res.err_estimate:.3e} evaluations={getattr(res, 'evaluations', 0)}"


def auto_schedule(c: float, stiffness: float = 1.0, steps: int = 6, depth: int = 5) -> RegularizationSchedule:
    """Damping schedule for frequency c.

    The eps -> 0 extrapolation is reliable once eps is small against both
    2 pi c (distance to the singularity at p^2 = 0) and c^2 / stiffness
    (rate at which the closed form's exponential factors change with eps).
    """
    eps0 = 0.5 * min(1.0, c, c * c / stiffness)
    return RegularizationSchedule(eps_start=eps0, eps_ratio=0.5, eps_steps=steps, richardson_depth=depth)


# ---------------------------------------------------------------------------
# Weber and Hardy over the reals
# ---------------------------------------------------------------------------

def check_weber_real(nu, y, sign=1):
    _require(complex(nu).real > -1, "need Re nu > -1")
    _require(float(y) > 0, "need y > 0")
    _sign(sign)


def verify_weber_real(nu, y: float, sign: int = 1, tol: float = TOL_REGULARIZED,
                      sched: RegularizationSchedule | None = None) -> VerificationReport:
    """int_0^inf x^-1/2 J_nu(4 pi sqrt x) e(+-x y) dx against Weber's closed form."""
    check_weber_real(nu, y, sign)
    nu, y, s = complex(nu), float(y), _sign(sign)
    params = {"nu": nu, "y": y, "sign": s}
    try:
        g = lambda x: j_array(nu, 4 * math.pi * np.sqrt(x)) / np.sqrt(x)
        sched = sched or auto_schedule(y, stiffness=1.0)
        lhs = regularized_fourier_radial(g, y, s, sched, beta=4 * math.pi, tol=1e-10)
        rhs = (2 * y) ** -0.5 * e(-s * (1 / (2 * y) - nu / 8 - 1 / 8)) * bessel_j(nu / 2, math.pi / y).value
        return VerificationReport.build("weber", params, lhs.value, rhs, tol, [_note("lhs", lhs)])
    except BesselError as exc:
        return VerificationReport.failure("weber", params, tol, exc)


def _k_large(nu: complex, x: np.ndarray) -> np.ndarray:
    s1, _ = asymptotic_sum(1, nu, 1j * x)
    return np.sqrt(math.pi / (2 * x)) * np.exp(-x) * s1


def _k_small(nu: complex, x: float) -> complex:
    # I_{-nu} and I_nu nearly cancel; extra digits absorb the e^{2x} loss
    with mpmath.workdps(20 + int(x)):
        mnu = mpmath.mpc(nu.real, nu.imag)
        d = mpmath.besseli(-mnu, x) - mpmath.besseli(mnu, x)
        return complex(mpmath.pi * d / (2 * mpmath.sin(mpmath.pi * mnu)))


def hardy_k(nu, x) -> np.ndarray:
    """K_nu(x) = pi (I_-nu(x) - I_nu(x)) / (2 sin pi nu) for x > 0."""
    nu = complex(nu)
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    big = x >= 20.0 + abs(nu) ** 2
    if big.any():
        out[big] = _k_large(nu, x[big])
    for i in np.flatnonzero(~big.ravel()):
        out.flat[i] = _k_small(nu, float(x.flat[i]))
    return out


def check_hardy_real(nu, y, sign=1):
    nu = complex(nu)
    _require(abs(nu.real) < 1, "need |Re nu| < 1")
    _require(dist_to_int(nu) >= 1e-3, "nu too close to an integer")
    _require(float(y) > 0, "need y > 0")
    _sign(sign)


def verify_hardy_real(nu, y: float, sign: int = 1, tol: float = TOL_ABSOLUTE,
                      sched: RegularizationSchedule | None = None) -> VerificationReport:
    """int_0^inf x^-1/2 K_nu(4 pi sqrt x) e(+-x y) dx against Hardy's closed form."""
    check_hardy_real(nu, y, sign)
    nu, y, s = complex(nu), float(y), _sign(sign)
    params = {"nu": nu, "y": y, "sign": s}
    try:
        g = lambda x: hardy_k(nu, 4 * math.pi * np.sqrt(x)) / np.sqrt(x)
        sched = sched or auto_schedule(y, stiffness=1.0)
        lhs = regularized_fourier_radial(g, y, s, sched, tol=1e-11)
        pre = -math.pi / (2 * cmath.sin(math.pi * nu)) * (2 * y) ** -0.5 * e(s * (1 / (2 * y) + 1 / 8))
        rhs = pre * (e(s * nu / 8) * bessel_j(nu / 2, math.pi / y).value
                     - e(-s * nu / 8) * bessel_j(-nu / 2, math.pi / y).value)
        return VerificationReport.build("hardy", params, lhs.value, rhs, tol, [_note("lhs", lhs)])
    except BesselError as exc:
        return VerificationReport.failure("hardy", params, tol, exc)


# ---------------------------------------------------------------------------
# pair-kernel identities
# ---------------------------------------------------------------------------

def _fold_a(a: complex) -> complex:
    """Representative of a modulo sign with -pi/2 < arg a <= pi/2."""
    return -a if (a.real < 0 or (a.real == 0 and a.imag < 0)) else a


def check_weber_second(nu, a, p):
    nu, a, p = complex(nu), complex(a), complex(p)
    _require(abs(nu.real) < 1, "need |Re nu| < 1")
    _require(a != 0, "need a != 0")
    _require(p != 0, "need p != 0")
    if abs(cmath.phase(p)) > math.pi / 4 + 1e-12:
        raise SectorPreconditionError("need |arg p| <= pi/4")


def verify_weber_second(nu, a, p, tol: float | None = None,
                        sched: RegularizationSchedule | None = None) -> VerificationReport:
    """Pair form of Weber's second exponential integral, including |arg p| = pi/4."""
    check_weber_second(nu, a, p)
    nu, a, p = complex(nu), _fold_a(complex(a)), complex(p)
    boundary = abs(abs(cmath.phase(p)) - math.pi / 4) < 1e-12
    if tol is None:
        tol = TOL_REGULARIZED if boundary else TOL_ABSOLUTE
    params = {"nu": nu, "a": a, "p": p}
    try:
        # the kernel only needs to be three orders tighter than the check
        rtol = min(1e-7, 1e-3 * tol)
        g = lambda x: pair_array(nu, a * np.sqrt(x), rtol=rtol)
        beta = 2 * abs(a.real)
        p_sq = p * p
        if boundary:
            c = abs(p) ** 2 / TAU
            s = -1 if cmath.phase(p) > 0 else 1
            sched = sched or auto_schedule(c, stiffness=abs(a) ** 2 / (4 * math.pi ** 2))
            lhs = regularized_fourier_radial(g, c, s, sched, beta=beta, tol=1e-10)
        else:
            lhs = damped_radial(g, p_sq, beta=beta, tol=1e-13)
        zeta = abs(a) ** 2 / (2 * p_sq)
        rhs = p_sq ** -1 * cmath.exp(-(a * a + a.conjugate() ** 2) / (4 * p_sq)) * (
            bessel_i(-nu, zeta).value - bessel_i(nu, zeta).value)
        return VerificationReport.build("weber2", params, lhs.value, rhs, tol,
                                        [_note("lhs", lhs), "boundary" if boundary else "interior"])
    except BesselError as exc:
        return VerificationReport.failure("weber2", params, tol, exc)


def check_first_lemma(nu, a, c, sign=1):
    _require(abs(complex(nu).real) < 1, "need |Re nu| < 1")
    _require(complex(a) != 0, "need a != 0")
    _require(float(c) > 0, "need c > 0")
    _sign(sign)


def first_lemma_rhs(nu, a, c, sign) -> complex:
    nu, a, c, s = complex(nu), complex(a), float(c), int(sign)
    arg = 4 * math.pi * abs(a) ** 2 / c
    return -s / (2j * math.pi * c) * e(-s * (a * a + a.conjugate() ** 2) / c) * (
        cmath.exp(-s * 0.5j * math.pi * nu) * bessel_j(-nu, arg).value
        - cmath.exp(s * 0.5j * math.pi * nu) * bessel_j(nu, arg).value)


def verify_first_lemma(nu, a, c: float, sign: int = 1, tol: float = TOL_REGULARIZED,
                       sched: RegularizationSchedule | None = None) -> VerificationReport:
    """Regularized Fourier transform of the pair kernel at 4 pi a sqrt x."""
    check_first_lemma(nu, a, c, sign)
    nu, a, c, s = complex(nu), _fold_a(complex(a)), float(c), _sign(sign)
    params = {"nu": nu, "a": a, "c": c, "sign": s}
    try:
        g = lambda x: pair_array(nu, 4 * math.pi * a * np.sqrt(x))
        sched = sched or auto_schedule(c, stiffness=4 * abs(a) ** 2)
        lhs = regularized_fourier_radial(g, c, s, sched, beta=8 * math.pi * abs(a.real), tol=1e-10)
        rhs = first_lemma_rhs(nu, a, c, s)
        return VerificationReport.build("lemma1", params, lhs.value, rhs, tol, [_note("lhs", lhs)])
    except BesselError as exc:
        return VerificationReport.failure("lemma1", params, tol, exc)


# ---------------------------------------------------------------------------
# the two formulas on (0, 1) and (1, inf)
# ---------------------------------------------------------------------------

def check_emot(nu, a, b):
    _require(complex(nu).real > -1, "need Re nu > -1")
    _require(float(a) > 0, "need a > 0")
    _require(complex(b).real >= 0, "need Re b >= 0")


def emot_lhs(nu, a: float, b: complex, tol: float = 1e-12):
    """Returns (first, second) with LHS = first - second."""
    nu, b = complex(nu), complex(b)
    # x = sin t on (0, 1): int_0^{pi/2} J_nu(a sin t) sin(b cos t) dt
    f = lambda t: j_array(nu, a * np.sin(t)) * np.sin(b * np.cos(t))
    first = graded_quad(f, 0.0, 0.5 * math.pi, tol=tol) if b != 0 else QuadResult(0j, 0.0)
    g = BesselCombination((nu,), (1.0,), float(a))
    second = cosh_substituted_tail(g, 0.0, float(a), tol=tol, b=b)
    return first, second


def verify_emot(nu, a: float, b, tol: float = TOL_ABSOLUTE) -> VerificationReport:
    check_emot(nu, a, b)
    nu, a, b = complex(nu), float(a), complex(b)
    params = {"nu": nu, "a": a, "b": b}
    try:
        first, second = emot_lhs(nu, a, b)
        root = cmath.sqrt(a * a + b * b)
        rhs = 0.5 * math.pi * bessel_j(nu / 2, (root - b) / 2).value * bessel_y(nu / 2, (root + b) / 2).value
        return VerificationReport.build("emot", params, first.value - second.value, rhs, tol,
                                        [_note("first", first), _note("second", second)])
    except BesselError as exc:
        return VerificationReport.failure("emot", params, tol, exc)


def check_second_lemma(nu, a, c):
    nu = complex(nu)
    _require(abs(nu.real) < 1, "need |Re nu| < 1")
    _require(dist_to_int(nu / 2) >= 1e-3, "nu/2 too close to an integer")
    _require(float(a) > 0, "need a > 0")
    _require(-float(a) <= float(c) <= float(a), "need -a <= c <= a")


def second_lemma_lhs(nu, a: float, c: float, tol: float = 1e-12) -> QuadResult:
    g = BesselCombination((-complex(nu), complex(nu)), (1.0, 1.0), float(a))
    return cosh_substituted_tail(g, float(c), float(a), tol=tol)


def second_lemma_rhs(nu, a: float, c: float) -> complex:
    nu = complex(nu)
    w = 0.5 * complex(math.sqrt(max(a * a - c * c, 0.0)), c)
    cot = 1 / cmath.tan(0.5 * math.pi * nu)
    return 0.5 * math.pi * cot * bessel_pair(nu / 2, w).value


def verify_second_lemma(nu, a: float, c: float, tol: float = TOL_ABSOLUTE) -> VerificationReport:
    check_second_lemma(nu, a, c)
    nu, a, c = complex(nu), float(a), float(c)
    params = {"nu": nu, "a": a, "c": c}
    try:
        lhs = second_lemma_lhs(nu, a, c)
        rhs = second_lemma_rhs(nu, a, c)
        return VerificationReport.build("lemma2", params, lhs.value, rhs, tol, [_note("lhs", lhs)])
    except BesselError as exc:
        return VerificationReport.failure("lemma2", params, tol, exc)


# ---------------------------------------------------------------------------
# the main identity and its reformulation
# ---------------------------------------------------------------------------

def theorem_rhs(mu, y: float, theta: float) -> complex:
    """(4y)^-1 e(cos theta / y) BJ_{mu/2}(1 / (16 y^2 e^{2 i theta}))."""
    z = cmath.exp(-2j * theta) / (16 * y * y)
    return e(math.cos(theta) / y) / (4 * y) * spherical_j(complex(mu) / 2, z).value


def _reduce_theta(theta: float, sign: int):
    """Bring theta into (-pi/2, pi/2]; cos(phi + theta) changes sign with theta -> theta - pi."""
    t = math.remainder(theta, TAU)
    if t > math.pi / 2 or t <= -math.pi / 2:
        return math.remainder(t - math.pi, TAU), -sign
    return t, sign


def prop_rhs(mu, y: float, theta: float, sign: int) -> complex:
    """cos(pi mu)/(2y) e(-+cos theta / y) (J_-mu(u) J_-mu(v) - J_mu(u) J_mu(v)),
    u = pi / (y e^{i theta}), v = pi / (y e^{-i theta}), theta reduced first."""
    mu = complex(mu)
    t, s = _reduce_theta(theta, sign)
    u = math.pi / y * cmath.exp(-1j * t)
    v = math.pi / y * cmath.exp(1j * t)
    prod = (bessel_j(-mu, u).value * bessel_j(-mu, v).value - bessel_j(mu, u).value * bessel_j(mu, v).value)
    return cmath.cos(math.pi * mu) / (2 * y) * e(-s * math.cos(t) / y) * prod


def check_main_theorem(mu, y, theta):
    _require(abs(complex(mu).real) < 0.5, "need |Re mu| < 1/2")
    _require(float(y) > 0, "need y > 0")
    _require(0 <= float(theta) < TAU, "need theta in [0, 2 pi)")


def _singular_angles(theta: float):
    """phi in (-pi, pi] with cos(phi + theta) = 0."""
    out = []
    for k in (-1, 1):
        out.append(math.remainder(k * math.pi / 2 - theta, TAU))
    return sorted(set(round(p, 15) for p in out))


def main_theorem_lhs(mu, y: float, theta: float, tol: float = 1e-3, excise: float = 0.1) -> QuadResult:
    """int_{-pi}^{pi} int_0^inf BJ_mu(x e^{i phi}) e(-2 x y cos(phi + theta)) dx dphi.

    Inner radial integrals are Abel limits (finite range plus analytic tail).
    Where cos(phi + theta) = 0 the inner value blows up like |phi - phi_s|^-1/2.
    It oscillates ever faster there unless phi_s = pi, so a window of half
    width ``excise`` is dropped around oscillating points and phi = pi is
    handled by a square-root substitution.
    """
    mu = complex(mu)
    x_asym = ray_asymptotic_start(mu)

    def inner(phi: float) -> QuadResult:
        cs = math.cos(phi + theta)
        c = 2 * y * abs(cs)
        s = -1 if cs > 0 else 1
        rot = cmath.exp(1j * phi)
        g = lambda x: spherical_j_array(mu, x * rot, rtol=1e-7)
        return fourier_radial_split(g, c, s, ray_pieces(mu, phi), x_asym=x_asym, tol=1e-8)

    sing = _singular_angles(theta)
    weak = [p for p in sing if abs(abs(p) - math.pi) < 1e-12]
    if weak:
        weak = [-math.pi, math.pi]
    osc = [p for p in sing if abs(abs(p) - math.pi) >= 1e-12]
    return iterated_double(inner, (-math.pi, math.pi), tol, breakpoints=osc, excise=excise,
                           weak_points=weak, initial_panels=8)


def verify_main_theorem(mu, y: float, theta: float, tol: float = TOL_DOUBLE,
                        excise: float = 0.1) -> VerificationReport:
    check_main_theorem(mu, y, theta)
    mu, y, theta = complex(mu), float(y), float(theta)
    params = {"mu": mu, "y": y, "theta": theta}
    try:
        lhs = main_theorem_lhs(mu, y, theta, tol=min(1e-3, tol / 10), excise=excise)
        rhs = theorem_rhs(mu, y, theta)
        diags = [_note("lhs", lhs), f"inner evaluations: {lhs.diagnostics['inner_evaluations']}",
                 f"excised: {lhs.diagnostics['excised']:.3e}"]
        if dist_to_int(2 * mu) >= 1e-3:
            scale = 2 * math.pi ** 2 / cmath.sin(2 * math.pi * mu)
            for s in (1, -1):
                alt = scale * prop_rhs(mu, y, theta, s)
                diags.append(f"reformulated rhs sign {s:+d}: {alt.real:.17g}{alt.imag:+.17g}i")
        return VerificationReport.build("main", params, lhs.value, rhs, tol, diags)
    except BesselError as exc:
        return VerificationReport.failure("main", params, tol, exc)


def check_proof_pipeline(mu, y, theta, sign=1):
    check_main_theorem(mu, y, theta)
    _require(dist_to_int(2 * complex(mu)) >= 1e-3, "2 mu too close to an integer")
    _sign(sign)


def angular_form(mu, y: float, theta: float, phi_max: float, tol: float = 1e-12) -> QuadResult:
    """int_0^{phi_max} sec(phi) cos(2 pi sin(theta) tan(phi) / y)
    (J_-2mu + J_2mu)(2 pi / (y cos phi)) dphi."""
    nu = 2 * complex(mu)

    def f(phi):
        sec = 1 / np.cos(phi)
        arg = TAU / y * sec
        return sec * np.cos(TAU * math.sin(theta) * np.tan(phi) / y) * (j_array(-nu, arg) + j_array(nu, arg))

    # the phase 2 pi sec(phi) / y accelerates toward phi_max
    n_init = int(TAU / y / math.cos(phi_max) / math.pi) + 8
    return adaptive_quad(f, 0.0, phi_max, tol=tol, initial_panels=n_init, abs_floor=1e-15)


def t_form_head(mu, y: float, theta: float, X: float, tol: float = 1e-12) -> QuadResult:
    """The same integral after t = 1/cos(phi), on [1, X], as u = acosh t."""
    nu = 2 * complex(mu)
    a = TAU / y
    c = TAU * math.sin(theta) / y
    U = math.acosh(X)

    def f(u):
        t = np.cosh(u)
        return (j_array(-nu, a * t) + j_array(nu, a * t)) * np.cos(c * np.sinh(u))

    n_init = int((a + abs(c)) * X / math.pi) + 8
    return adaptive_quad(f, 0.0, U, tol=tol, initial_panels=n_init, abs_floor=1e-15)


def verify_proof_pipeline(mu, y: float, theta: float, sign: int = 1,
                          tol: float = TOL_ABSOLUTE) -> VerificationReport:
    """Three links of the reduction of the 2D integral to closed form.

    (i)  angular form on [0, phi_max] == t-form on [1, sec phi_max];
    (ii) full t-integral == second-lemma closed form at nu = 2 mu,
         a = 2 pi / y, c = 2 pi sin(theta) / y;
    (iii) prefactor sin(pi mu) / (pi y) e(-+cos theta / y) times the
         t-integral == the reformulated right-hand side.
    """
    check_proof_pipeline(mu, y, theta, sign)
    mu, y, theta, s = complex(mu), float(y), float(theta), _sign(sign)
    params = {"mu": mu, "y": y, "theta": theta, "sign": s}
    try:
        t_red, s_red = _reduce_theta(theta, s)
        a = TAU / y
        c = TAU * math.sin(t_red) / y
        X = 40.0
        ang = angular_form(mu, y, t_red, math.acos(1 / X))
        head = t_form_head(mu, y, t_red, X)
        link1 = abs(ang.value - head.value) / abs(head.value)

        tint = second_lemma_lhs(2 * mu, a, c)
        closed = second_lemma_rhs(2 * mu, a, c)
        link2 = abs(tint.value - closed) / abs(closed)

        assembled = cmath.sin(math.pi * mu) / (math.pi * y) * e(-s_red * math.cos(t_red) / y) * tint.value
        target = prop_rhs(mu, y, theta, s)
        link3 = abs(assembled - target) / abs(target)
        diags = [f"link i rel_err={link1:.3e}", f"link ii rel_err={link2:.3e}",
                 f"link iii rel_err={link3:.3e}", _note("t-integral", tint)]
        return VerificationReport.build("pipeline", params, assembled, target, tol, diags,
                                        rel_err=max(link1, link2, link3))
    except BesselError as exc:
        return VerificationReport.failure("pipeline", params, tol, exc)


def check_reformulation(mu, y, theta):
    check_main_theorem(mu, y, theta)
    _require(dist_to_int(2 * complex(mu)) >= 1e-3, "2 mu too close to an integer")


def verify_reformulation_consistency(mu, y: float, theta: float, tol: float = 1e-10) -> VerificationReport:
    """Closed forms only: theorem RHS == 2 pi^2 / sin(2 pi mu) * reformulated RHS
    (lower sign, matching the e(-2 x y cos(phi + theta)) kernel)."""
    check_reformulation(mu, y, theta)
    mu, y, theta = complex(mu), float(y), float(theta)
    params = {"mu": mu, "y": y, "theta": theta}
    try:
        lhs = theorem_rhs(mu, y, theta)
        rhs = 2 * math.pi ** 2 / cmath.sin(2 * math.pi * mu) * prop_rhs(mu, y, theta, -1)
        return VerificationReport.build("consistency", params, lhs, rhs, tol)
    except BesselError as exc:
        return VerificationReport.failure("consistency", params, tol, exc)


# ---------------------------------------------------------------------------
# registry and sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verifier:
    func: Callable
    check: Callable
    params: tuple
    defaults: dict = field(default_factory=dict)


VERIFIERS: dict[str, Verifier] = {
    "weber": Verifier(verify_weber_real, check_weber_real, ("nu", "y", "sign"), {"sign": 1}),
    "hardy": Verifier(verify_hardy_real, check_hardy_real, ("nu", "y", "sign"), {"sign": 1}),
    "weber2": Verifier(verify_weber_second, check_weber_second, ("nu", "a", "p")),
    "lemma1": Verifier(verify_first_lemma, check_first_lemma, ("nu", "a", "c", "sign"), {"sign": 1}),
    "emot": Verifier(verify_emot, check_emot, ("nu", "a", "b")),
    "lemma2": Verifier(verify_second_lemma, check_second_lemma, ("nu", "a", "c")),
    "main": Verifier(verify_main_theorem, check_main_theorem, ("mu", "y", "theta"),
                     {"y": 1.0, "theta": 0.0}),
    "pipeline": Verifier(verify_proof_pipeline, check_proof_pipeline, ("mu", "y", "theta", "sign"),
                         {"y": 1.0, "theta": 0.0, "sign": 1}),
    "consistency": Verifier(verify_reformulation_consistency, check_reformulation, ("mu", "y", "theta"),
                            {"y": 1.0, "theta": 0.0}),
}


def bind(identity: str, values: dict) -> dict:
    """Full parameter binding for ``identity`` with defaults filled in."""
    v = VERIFIERS[identity]
    unknown = set(values) - set(v.params)
    if unknown:
        raise PreconditionError(f"unknown parameters for {identity}: {sorted(unknown)}")
    out = dict(v.defaults)
    out.update(values)
    missing = [p for p in v.params if p not in out]
    if missing:
        raise PreconditionError(f"missing parameters for {identity}: {missing}")
    return {p: out[p] for p in v.params}


def run(identity: str, values: dict, tol: float | None = None) -> VerificationReport:
    v = VERIFIERS[identity]
    kw = bind(identity, values)
    if tol is not None:
        kw["tol"] = tol
    return v.func(**kw)


@dataclass
class ParamGrid:
    """Cartesian grid; iteration is row-major in the order the keys were given."""

    values: dict
    tol: float | None = None

    def points(self) -> list[dict]:
        keys = list(self.values)
        if not keys:
            return []
        return [dict(zip(keys, combo)) for combo in itertools.product(*(self.values[k] for k in keys))]

    def validate(self, identity: str) -> list[dict]:
        pts = self.points()
        for pt in pts:
            VERIFIERS[identity].check(**bind(identity, pt))
        return pts


@dataclass
class SweepResult:
    reports: list
    summary: dict


def summarize(reports) -> dict:
    # points with a vanishing right side are judged by absolute error instead
    rels = [r.rel_err for r in reports if not math.isnan(r.rel_err) and abs(r.rhs) >= ZERO_RHS]
    return {"count": len(reports), "passed": sum(r.passed for r in reports),
            "max_rel_err": max(rels) if rels else 0.0}


def sweep(grid: ParamGrid, identity: str) -> SweepResult:
    """Run ``identity`` at every grid point, in grid order.

    The whole grid is validated before anything runs; numerical failures
    at individual points are recorded in their reports.
    """
    pts = grid.validate(identity)
    reports = []
    for pt in pts:
        try:
            reports.append(run(identity, pt, grid.tol))
        except BesselError as exc:
            tol = grid.tol if grid.tol is not None else math.nan
            reports.append(VerificationReport.failure(identity, bind(identity, pt), tol, exc))
    return SweepResult(reports, summarize(reports))
