"""The acceptance suite as plain functions.

Each ``criterion_N`` runs one check over its fixed, seeded parameter set
and returns a :class:`CriterionResult`.  Results hold no timings, so two
runs produce identical records.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import identities as ids
from .bessel import BranchedArgument, bessel_j_asymptotic, bessel_j_series
from .quad import IBPTailSpec, ibp_tail, regularized_fourier_radial
from .spherical import closed_form_reference, spherical_j

SEED = 20150201


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    cases: int
    worst: float
    threshold: float
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] criterion {self.number:2d} {self.title}: "
                f"{self.cases} cases, worst {self.worst:.3e} (threshold {self.threshold:.0e})")


def _collect(number: int, title: str, threshold: float, rows) -> CriterionResult:
    """rows: iterable of (label, metric, ok)."""
    worst = 0.0
    failures = []
    n = 0
    for label, metric, ok in rows:
        n += 1
        if not math.isnan(metric):
            worst = max(worst, metric)
        if not ok:
            failures.append(f"{label}: {metric:.3e}")
    return CriterionResult(number, title, not failures and n > 0, n, worst, threshold, failures)


def _from_reports(number, title, threshold, reports):
    """Relative error per report; absolute error where the right side vanishes."""
    rows = []
    for r in reports:
        zero = abs(r.rhs) < ids.ZERO_RHS
        metric = r.abs_err if zero else r.rel_err
        rows.append((f"{r.identity_name} {r.params}", metric, r.passed and metric <= threshold))
    return _collect(number, title, threshold, rows)


def criterion_1() -> CriterionResult:
    """Series and Hankel-asymptotic evaluations of J agree in the overlap zone."""
    rng = np.random.default_rng(SEED + 1)
    rows = []
    for _ in range(100):
        nu = complex(cmath.rect(2 * rng.random(), 2 * math.pi * rng.random()))
        r = 20 + 10 * rng.random()
        arg = math.pi * (2 * rng.random() - 1)
        z = BranchedArgument.polar(r, arg)
        s = bessel_j_series(nu, z).value
        a = bessel_j_asymptotic(nu, z).value
        rel = abs(s - a) / abs(s)
        rows.append((f"nu={nu:.4f} z={z.z:.4f}", rel, rel < 1e-8))
    return _collect(1, "series vs asymptotic J", 1e-8, rows)


def criterion_2() -> CriterionResult:
    """BJ_{1/4} against its elementary closed form."""
    rng = np.random.default_rng(SEED + 2)
    rows = []
    while len(rows) < 100:
        z = cmath.rect(10 ** rng.uniform(-2, 1.7), math.pi * (2 * rng.random() - 1))
        ref = closed_form_reference(0.25, z)
        if abs(ref) <= 0.01:
            continue
        rel = abs(spherical_j(0.25, z).value - ref) / abs(ref)
        rows.append((f"z={z:.4f}", rel, rel < 1e-9))
    return _collect(2, "closed form of BJ_1/4", 1e-9, rows)


def criterion_3() -> CriterionResult:
    """Index sign, branch, conjugation and realness symmetries of BJ_mu."""
    rng = np.random.default_rng(SEED + 3)
    rows = []
    for k in range(50):
        kind = k % 3
        if kind == 0:
            mu = complex(rng.uniform(-0.9, 0.9))
        elif kind == 1:
            mu = complex(0, rng.uniform(-1.5, 1.5))
        else:
            mu = complex(rng.uniform(-0.9, 0.9), rng.uniform(-1.0, 1.0))
        r = 10 ** rng.uniform(-1.5, 1.0)
        arg = math.pi * (2 * rng.random() - 1)
        z = BranchedArgument.polar(r, arg)
        v = spherical_j(mu, z).value
        scale = max(abs(v), 1e-3)
        checks = [
            abs(spherical_j(-mu, z).value - v),
            abs(spherical_j(mu, BranchedArgument.polar(r, arg + 2 * math.pi)).value - v),
            abs(spherical_j(mu, z.conj()).value - v),
            abs(spherical_j(mu.conjugate(), z).value.conjugate() - v),
        ]
        if kind < 2:
            checks.append(abs(v.imag))
        m = max(checks) / scale
        rows.append((f"mu={mu:.4f} z={z.z:.4f}", m, m < 1e-9))
    return _collect(3, "symmetries of BJ_mu", 1e-9, rows)


def criterion_4() -> CriterionResult:
    reps = [ids.verify_second_lemma(nu, a, f * a, tol=1e-6)
            for nu in (0.2, 0.6j, 0.3 + 0.2j) for a in (1.0, 5.0) for f in (0.0, 0.5, 1.0)]
    return _from_reports(4, "second lemma (cosh substitution)", 1e-6, reps)


def criterion_5() -> CriterionResult:
    reps = [ids.verify_emot(nu, a, b, tol=1e-6)
            for nu in (0.5, 1.3) for a in (2.0, 5.0) for b in (0.5, 1.0, 0.5j, 1.5j)]
    return _from_reports(5, "integral over (0,1) and (1,inf)", 1e-6, reps)


def criterion_6() -> CriterionResult:
    reps = []
    avals = (1.0, cmath.exp(1j * math.pi / 8))
    for nu in (0.3, 0.5j):
        for a in avals:
            for c in (1.0, 2.0):
                for s in (1, -1):
                    reps.append(ids.verify_first_lemma(nu, a, c, s, tol=1e-4))
                    p = math.sqrt(2 * math.pi * c) * cmath.exp(-s * 0.25j * math.pi)
                    reps.append(ids.verify_weber_second(nu, a, p, tol=1e-4))
    res = _from_reports(6, "first lemma and boundary exponential integral", 1e-4, reps)
    inner = [ids.verify_weber_second(nu, a, p, tol=1e-8)
             for nu in (0.3, 0.5j) for a in avals for p in (1.0, cmath.exp(0.125j * math.pi))]
    res2 = _from_reports(6, "", 1e-8, inner)
    res.cases += res2.cases
    res.failures += res2.failures
    res.passed = res.passed and res2.passed
    res.worst = max(res.worst, res2.worst)
    return res


def criterion_7() -> CriterionResult:
    reps = []
    for y in (0.5, 1.0, 2.0):
        for s in (1, -1):
            for nu in (0.4, 1.0, 0.6j):
                reps.append(ids.verify_weber_real(nu, y, s, tol=1e-4))
            for nu in (0.4, 0.6j):
                reps.append(ids.verify_hardy_real(nu, y, s, tol=1e-4))
    return _from_reports(7, "Weber and Hardy over the reals", 1e-4, reps)


def criterion_8() -> CriterionResult:
    reps = [ids.verify_proof_pipeline(mu, y, th, 1, tol=1e-6)
            for mu in (0.2, 0.15j) for y in (0.5, 1.0) for th in (0.0, math.pi / 6, math.pi / 2)]
    return _from_reports(8, "proof pipeline links", 1e-6, reps)


CONSISTENCY_GRID = {
    "mu": (0.3, 0.1j, 0.2 + 0.1j, -0.15, 0.05 + 0.3j),
    "y": (0.5, 2.0),
    "theta": (0.7, 2.5, 4.0),
}


def criterion_9() -> CriterionResult:
    grid = ids.ParamGrid(dict(CONSISTENCY_GRID), tol=1e-10)
    return _from_reports(9, "reformulation consistency", 1e-10, ids.sweep(grid, "consistency").reports)


MAIN_POINTS = ((0.1, 1.0, math.pi / 6), (0.25j, 0.5, 0.0), (0.2, 1.0, math.pi / 2))


def criterion_10() -> CriterionResult:
    reps = [ids.verify_main_theorem(mu, y, th, tol=1e-2) for mu, y, th in MAIN_POINTS]
    return _from_reports(10, "main identity, iterated 2D integral", 1e-2, reps)


CROSS_CASES = tuple((beta, c, 0.5 if i % 2 == 0 else 1.0, 1 if i % 3 else -1)
                    for i, (beta, c) in enumerate((b, c) for b in (0.0, 2.0, 4 * math.pi) for c in (0.5, 1.0, 2.0)))


def criterion_11() -> CriterionResult:
    rows = []
    for beta, c, sigma, s in CROSS_CASES:
        ibp = ibp_tail(IBPTailSpec(sigma, beta, depth=3), -s * 2j * math.pi * c, x0=1.0)
        g = (lambda x, sigma=sigma, beta=beta: x ** -sigma * np.exp(1j * beta * np.sqrt(x)))
        reg = regularized_fourier_radial(g, c, s, ids.auto_schedule(c, stiffness=1.0),
                                         beta=beta, lower=1.0, tol=1e-10)
        diff = abs(ibp.value - reg.value)
        budget = ibp.err_estimate + reg.err_estimate
        rows.append((f"beta={beta:.4f} c={c} sigma={sigma} sign={s}", diff / max(budget, 1e-300),
                     diff <= budget))
    return _collect(11, "partial integration vs damping", 1.0, rows)


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}
FAST = (1, 2, 3, 9, 11)


def run_criteria(numbers) -> list:
    return [CRITERIA[n]() for n in numbers]
