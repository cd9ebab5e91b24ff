"""Quadrature engines.

* :func:`adaptive_quad` - globally adaptive Gauss-Kronrod (7/15) on a
  finite interval, vectorized over panels.
* :func:`graded_quad` - geometric grading toward an integrable endpoint
  singularity.
* :func:`regularized_fourier_radial` - Abel-regularized
  ``lim_{eps->0+} int_0^inf g(x) e^{-eps x} e(+-c x) dx``.  Every member of
  the eps schedule reuses the same nodes; the limit is taken by Richardson
  extrapolation in eps.
* :func:`ibp_tail` - the integration-by-parts decomposition of
  ``int_{x0}^inf x^-s exp(i beta sqrt x - p^2 x) dx`` into boundary terms and
  absolutely convergent remainders.
* :func:`cosh_substituted_tail` - ``int_1^inf g(x) W(sqrt(x^2-1)) / sqrt(x^2-1) dx``
  via ``x = cosh u`` plus an asymptotic tail.
* :func:`iterated_double` - outer angular quadrature of inner radial values.

Here ``e(x) = exp(2 pi i x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bessel import asymptotic_sum, j_array
from .errors import (
    DomainError,
    ExtrapolationDivergence,
    InnerFailure,
    SubdivisionLimit,
    TailBoundExceeded,
)

ABS_FLOOR = 1e-14

# Gauss-Kronrod 7-15 abscissae on [-1, 1] (positive half, descending) and weights
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])

GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_g = np.zeros(15)
_g[[1, 3, 5]] = _WG[:3]
_g[7] = _WG[3]
_g[[9, 11, 13]] = _WG[2::-1]
G_WEIGHTS = _g
del _g


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    evaluations: int = 0
    diagnostics: dict = field(default_factory=dict, compare=False)


def _panel_nodes(a: np.ndarray, b: np.ndarray):
    """Nodes (P, 15) and half-widths (P,) for panels [a_i, b_i]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid[:, None] + half[:, None] * GK_NODES[None, :], half


def _panel_rules(f: Callable, a: np.ndarray, b: np.ndarray):
    x, half = _panel_nodes(a, b)
    fx = np.asarray(f(x.ravel()), dtype=complex).reshape(x.shape)
    k = half * (fx @ GK_WEIGHTS)
    g = half * (fx @ G_WEIGHTS)
    return k, np.abs(k - g), x.size


def adaptive_quad(f: Callable, a: float, b: float, tol: float = 1e-10,
                  abs_floor: float = ABS_FLOOR, max_depth: int = 50,
                  initial_panels: int = 1, max_evaluations: int = 5_000_000) -> QuadResult:
    """Integrate a vectorized ``f`` over [a, b] to relative accuracy ``tol``.

    Panels whose Kronrod-Gauss difference dominates the error budget are
    bisected in batches.  Raises SubdivisionLimit when a panel would need
    to be split beyond ``max_depth`` levels.
    """
    if not (np.isfinite(a) and np.isfinite(b)) or not a < b:
        raise DomainError("adaptive_quad needs finite a < b")
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    depth = np.zeros(lo.size, dtype=int)
    val, err, n_eval = _panel_rules(f, lo, hi)
    while True:
        total = val.sum()
        total_err = err.sum()
        target = max(tol * abs(total), abs_floor)
        if total_err <= target:
            return QuadResult(complex(total), float(total_err), n_eval)
        if n_eval > max_evaluations:
            raise SubdivisionLimit(f"evaluation budget exhausted (err {total_err:.3g})")
        # split panels carrying the largest errors until the rest fits in budget
        order = np.argsort(err)[::-1]
        cum = total_err - np.cumsum(err[order])
        n_split = int(np.searchsorted(-cum, -0.5 * target)) + 1
        pick = order[:max(1, min(n_split, order.size))]
        if np.any(depth[pick] >= max_depth):
            raise SubdivisionLimit(f"subdivision depth {max_depth} reached (err {total_err:.3g})")
        keep = np.ones(lo.size, dtype=bool)
        keep[pick] = False
        m = 0.5 * (lo[pick] + hi[pick])
        nlo = np.concatenate([lo[pick], m])
        nhi = np.concatenate([m, hi[pick]])
        nd = np.concatenate([depth[pick], depth[pick]]) + 1
        v2, e2, ne = _panel_rules(f, nlo, nhi)
        n_eval += ne
        lo = np.concatenate([lo[keep], nlo])
        hi = np.concatenate([hi[keep], nhi])
        depth = np.concatenate([depth[keep], nd])
        val = np.concatenate([val[keep], v2])
        err = np.concatenate([err[keep], e2])


def graded_quad(f: Callable, a: float, b: float, tol: float = 1e-10,
                singular_end: str = "a", ratio: float = 0.5, max_levels: int = 1000) -> QuadResult:
    """Integrate with geometric panels accumulating at ``singular_end``.

    Suited to integrable singularities like ``|x - a|^-sigma`` (sigma < 1) or
    bounded log-oscillations.  Levels are added until the geometric
    remainder estimate drops below the tolerance.
    """
    length = b - a
    total = 0j
    err = 0.0
    n_eval = 0
    contribs = []
    for level in range(max_levels):
        s0 = length * ratio ** (level + 1)
        s1 = length * ratio ** level
        if singular_end == "a":
            lo, hi = a + s0, a + s1
        else:
            lo, hi = b - s1, b - s0
        if level == 0:
            res = adaptive_quad(f, lo, hi, tol=0.1 * tol)
        else:
            k, e, ne = _panel_rules(f, np.array([lo]), np.array([hi]))
            res = QuadResult(complex(k[0]), float(e[0]), ne)
            if res.err_estimate > 0.1 * tol * max(abs(total), ABS_FLOOR / tol):
                res = adaptive_quad(f, lo, hi, tol=0.1 * tol)
        total += res.value
        err += res.err_estimate
        n_eval += res.evaluations
        contribs.append(abs(res.value))
        if level >= 8:
            r = contribs[-1] / contribs[-2] if contribs[-2] > 0 else 0.0
            r = min(max(r, contribs[-2] / contribs[-3] if contribs[-3] > 0 else 0.0), 0.999)
            remainder = contribs[-1] * r / (1 - r)
            if remainder <= 0.1 * tol * max(abs(total), ABS_FLOOR / max(tol, 1e-300)) or (s0 == 0):
                return QuadResult(total, err + remainder, n_eval)
    raise SubdivisionLimit("graded quadrature did not resolve the endpoint singularity")


# ---------------------------------------------------------------------------
# regularized oscillatory integrals on [x0, inf)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegularizationSchedule:
    """Damping schedule eps_k = eps_start * eps_ratio**k, k = 0..eps_steps,
    truncation T(eps) = max(t_min, t_factor / eps)."""

    eps_start: float = 0.5
    eps_ratio: float = 0.5
    eps_steps: int = 12
    richardson_depth: int = 4
    t_min: float = 50.0
    t_factor: float = 20.0

    def __post_init__(self):
        if not (0 < self.eps_ratio < 1) or self.eps_start <= 0:
            raise ValueError("need eps_start > 0 and 0 < eps_ratio < 1")
        if self.eps_start * self.eps_ratio ** self.eps_steps <= 1e-6:
            raise ValueError("smallest damping must stay above 1e-6")
        if self.richardson_depth < 0 or self.eps_steps < 1:
            raise ValueError("invalid schedule depth")

    def epsilons(self) -> np.ndarray:
        return self.eps_start * self.eps_ratio ** np.arange(self.eps_steps + 1)

    def truncation(self, eps: float) -> float:
        return max(self.t_min, self.t_factor / eps)

    def scaled(self, c: float) -> "RegularizationSchedule":
        """Same schedule with eps measured in units of the frequency c (c <= 1 only)."""
        f = min(1.0, abs(c))
        return RegularizationSchedule(self.eps_start * f, self.eps_ratio, self.eps_steps,
                                      self.richardson_depth, self.t_min, self.t_factor)


DEFAULT_SCHEDULE = RegularizationSchedule()


def phase_breaks(lo: float, hi: float, k: float, beta: float, max_len: float = 2.0) -> np.ndarray:
    """Points in [lo, hi] where k x + beta sqrt(x) advances by pi.

    Panel lengths are additionally capped at ``max_len``.
    """
    k, beta = abs(k), abs(beta)
    if k == 0 and beta == 0:
        n = max(1, int(math.ceil((hi - lo) / max_len)))
        return np.linspace(lo, hi, n + 1)
    p0 = k * lo + beta * math.sqrt(lo)
    p1 = k * hi + beta * math.sqrt(hi)
    n = int(math.ceil((p1 - p0) / math.pi))
    ph = p0 + math.pi * np.arange(1, n)
    if k > 0:
        s = 2 * ph / (beta + np.sqrt(beta * beta + 4 * k * ph))
    else:
        s = ph / beta
    pts = np.concatenate([[lo], s * s, [hi]])
    pts = np.unique(np.clip(pts, lo, hi))
    gaps = np.diff(pts)
    if np.any(gaps > max_len):
        out = [pts[:1]]
        for x0, x1, gap in zip(pts[:-1], pts[1:], gaps):
            m = max(1, int(math.ceil(gap / max_len)))
            out.append(np.linspace(x0, x1, m + 1)[1:])
        pts = np.concatenate(out)
    return pts


def _richardson(values: Sequence[complex], ratio: float, depth: int):
    """Richardson table for A(eps) = A0 + a1 eps + a2 eps^2 + ... on a
    geometric eps sequence.  Returns (estimate, err, diagonal)."""
    n = len(values)
    table = [list(values)]
    for j in range(1, min(depth, n - 1) + 1):
        prev = table[-1]
        fac = ratio ** j
        table.append([(prev[i + 1] - fac * prev[i]) / (1 - fac) for i in range(len(prev) - 1)])
    best = table[-1]
    diag = [table[min(k, len(table) - 1)][k - min(k, len(table) - 1)] for k in range(n)]
    est = best[-1]
    if len(best) >= 2:
        err = abs(best[-1] - best[-2])
    else:
        err = abs(table[-1][-1] - table[-2][-1])
    return est, err, diag


def _radial_sums(g: Callable, p_sq: np.ndarray, x0: float, T: float, k: float, beta: float,
                 tol: float, block: int = 4096, graded: bool = True):
    """int_{x0}^{T} g(x) exp(-p_sq[j] x) dx for every j, on shared nodes.

    ``k`` and ``beta`` describe the oscillation of the integrand
    (phase ~ k x + beta sqrt x) and set the panel breaks.  Returns
    (sums, quad_err, end_envelope, evaluations, T_reached).
    """
    p_sq = np.asarray(p_sq, dtype=complex)
    breaks = phase_breaks(x0, T, k, beta)
    lo_all, hi_all = breaks[:-1], breaks[1:]
    sums = np.zeros(p_sq.size, dtype=complex)
    errs = np.zeros(p_sq.size)
    n_eval = 0
    envelope = 0.0
    peak = 0.0
    t_reached = T

    def panels(lo, hi):
        x, half = _panel_nodes(lo, hi)
        gx = np.asarray(g(x.ravel()), dtype=complex).reshape(x.shape)
        return x, half, gx

    def accumulate(x, half, gx):
        nonlocal sums, errs
        # members already damped below e^-60 on this block contribute nothing
        live = np.flatnonzero(p_sq.real * x.min() < 60.0)
        kk = np.zeros((p_sq.size, x.shape[0]), dtype=complex)
        gg = np.zeros_like(kk)
        if live.size:
            e = np.exp(-p_sq[live, None, None] * x[None, :, :]) * gx[None, :, :]
            kk[live] = half[None, :] * (e @ GK_WEIGHTS)
            gg[live] = half[None, :] * (e @ G_WEIGHTS)
        sums = sums + kk.sum(axis=1)
        errs = errs + np.abs(kk - gg).sum(axis=1)
        return kk, np.abs(kk - gg)

    first = 0
    if graded and x0 == 0.0:
        # [0, x1] is replaced by geometric panels toward 0
        x1 = hi_all[0]
        first = 1
        lev = 0
        contrib = []
        while True:
            lo = x1 * 0.5 ** np.arange(lev + 1, lev + 41)
            hi = 2 * lo
            x, half, gx = panels(lo, hi)
            n_eval += x.size
            kk, _ = accumulate(x, half, gx)
            contrib.extend(np.abs(kk[0]).tolist())
            lev += 40
            c = contrib
            r = min(0.999, max(c[-1] / c[-2] if c[-2] else 0.0, c[-2] / c[-3] if c[-3] else 0.0))
            rem = c[-1] * r / (1 - r)
            if rem <= 1e-3 * tol * max(abs(sums[0]), 1e-300) or lev >= 1000 or c[-1] == 0:
                errs = errs + rem
                break
    start = first
    while start < lo_all.size:
        stop = min(start + block, lo_all.size)
        x, half, gx = panels(lo_all[start:stop], hi_all[start:stop])
        n_eval += x.size
        kk, ee = accumulate(x, half, gx)
        # refine panels whose Kronrod/Gauss gap is large against the running total
        scale_ref = max(np.abs(sums).max(), 1e-300)
        bad = np.flatnonzero(ee.max(axis=0) > 1e-3 * tol * scale_ref)
        env = np.abs(gx).max()
        lo_c, hi_c = lo_all[start:stop], hi_all[start:stop]
        rounds = 0
        while bad.size and rounds < 12:
            rounds += 1
            sums = sums - kk[:, bad].sum(axis=1)
            errs = errs - ee[:, bad].sum(axis=1)
            lo_b, hi_b = lo_c[bad], hi_c[bad]
            m = 0.5 * (lo_b + hi_b)
            lo_c, hi_c = np.concatenate([lo_b, m]), np.concatenate([m, hi_b])
            x, half, gx = panels(lo_c, hi_c)
            n_eval += x.size
            kk, ee = accumulate(x, half, gx)
            bad = np.flatnonzero(ee.max(axis=0) > 1e-3 * tol * scale_ref)
        peak = max(peak, env)
        envelope = env
        start = stop
        # integrand has decayed to nothing: stop early
        if env * (hi_all[stop - 1] - x0 + 1.0) < 1e-18 * max(np.abs(sums).max(), 1e-300):
            t_reached = hi_all[stop - 1]
            break
    return sums, errs, envelope, n_eval, t_reached


def regularized_fourier_radial(g: Callable, c: float, sign: int = 1,
                               sched: RegularizationSchedule = DEFAULT_SCHEDULE, *,
                               beta: float = 0.0, lower: float = 0.0,
                               tol: float = 1e-10) -> QuadResult:
    """lim_{eps->0+} int_lower^inf g(x) e^{-eps x} e(sign c x) dx.

    ``g`` is vectorized, locally integrable at 0 (|g| <~ x^-sigma, sigma < 1)
    and O(x^-1/2) at infinity, possibly carrying a phase exp(+-i beta sqrt x);
    ``beta`` is used only to place panel breaks.
    """
    if c <= 0:
        raise DomainError("regularized_fourier_radial needs c > 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    eps = sched.epsilons()
    p_sq = eps - sign * 2j * math.pi * c
    T = sched.truncation(eps[-1])
    sums, qerr, env, n_eval, t_end = _radial_sums(g, p_sq, lower, T, 2 * math.pi * c, beta, tol)
    if t_end >= T and env > 0:
        if beta == 0:
            # first boundary term of the remaining tail
            gT = complex(np.asarray(g(np.array([T])), dtype=complex)[0])
            corr = gT * np.exp(-p_sq * T) / p_sq
            sums = sums + corr
            tail = np.abs(corr) / (np.abs(p_sq) * T)
        else:
            eff = np.maximum(np.abs(p_sq) - beta / (2 * math.sqrt(T)), eps)
            tail = 2 * env * np.exp(-eps * T) / eff
    else:
        tail = np.zeros(eps.size)
    est, ext_err, diag = _richardson(list(sums), sched.eps_ratio, sched.richardson_depth)
    d = [abs(diag[i + 1] - diag[i]) for i in range(len(diag) - 1)]
    scale = max(abs(est), ABS_FLOOR)
    if len(d) >= 3 and d[-1] > d[0] and d[-1] > 1e-6 * scale:
        raise ExtrapolationDivergence(f"eps-extrapolation diverges (last step {d[-1]:.3g})")
    amp = sum(abs(1 - sched.eps_ratio ** j) ** -1 for j in range(1, sched.richardson_depth + 1)) + 1
    err = ext_err + amp * (float(qerr.max()) + float(np.max(tail)))
    return QuadResult(complex(est), err, n_eval,
                      {"eps": eps.tolist(), "damped": sums.tolist(), "T": T})


def damped_radial(g: Callable, p_sq: complex, *, beta: float = 0.0, lower: float = 0.0,
                  tol: float = 1e-12, T: float | None = None) -> QuadResult:
    """int_lower^inf g(x) exp(-p_sq x) dx for Re p_sq > 0 (absolutely convergent)."""
    p_sq = complex(p_sq)
    if p_sq.real <= 0:
        raise DomainError("damped_radial needs Re p^2 > 0")
    if T is None:
        T = max(50.0, 60.0 / p_sq.real)
    sums, qerr, env, n_eval, t_end = _radial_sums(g, np.array([p_sq]), lower, T, abs(p_sq.imag), beta, tol)
    tail = 0.0 if t_end < T else env * math.exp(-p_sq.real * T) / p_sq.real
    return QuadResult(complex(sums[0]), float(qerr[0]) + tail, n_eval)


# ---------------------------------------------------------------------------
# integration by parts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IBPTailSpec:
    """Integrand x^-sigma exp(i beta sqrt(x) - p^2 x) on [x0, inf)."""

    sigma: float
    beta: complex = 0.0
    gamma_coeff: complex = 0.0
    depth: int = 3


def _ibp_expand(sigma: float, beta: complex, p_sq: complex, x0: float, depth: int):
    """Boundary part and remainder coefficients {s: coef} after ``depth`` rounds of

    F(s) = x0^-s E(x0)/p^2 - (s/p^2) F(s+1) + (i beta / 2p^2) F(s+1/2),
    F(s) = int_{x0}^inf x^-s E(x) dx, E(x) = exp(i beta sqrt x - p^2 x).
    """
    e0 = np.exp(1j * beta * math.sqrt(x0) - p_sq * x0)
    boundary = 0j
    terms = {float(sigma): 1.0 + 0j}
    for _ in range(depth):
        nxt: dict = {}
        for s, cf in terms.items():
            boundary += cf * x0 ** (-s) * e0 / p_sq
            for s2, c2 in ((s + 1.0, -s / p_sq), (s + 0.5, 1j * beta / (2 * p_sq))):
                if c2 != 0:
                    nxt[s2] = nxt.get(s2, 0j) + cf * c2
        terms = nxt
    return boundary, terms


def ibp_tail(spec: IBPTailSpec, p_sq: complex, x0: float = 1.0, tol: float = 1e-12) -> QuadResult:
    """int_{x0}^inf x^-sigma exp(i beta sqrt x - p^2 x) dx by repeated partial integration.

    Valid for Re p^2 >= 0 including the purely oscillatory case.  The
    remainders, with exponents >= sigma + depth/2, are integrated on
    [x0, X] and closed with one more boundary term beyond X.
    """
    p_sq = complex(p_sq)
    if p_sq == 0:
        raise DomainError("ibp_tail needs p^2 != 0")
    if p_sq.real < 0:
        raise DomainError("ibp_tail needs Re p^2 >= 0")
    if x0 < 1:
        raise DomainError("ibp_tail needs x0 >= 1")
    beta = complex(spec.beta)
    boundary, terms = _ibp_expand(spec.sigma, beta, p_sq, x0, spec.depth)
    smin = min(terms) if terms else 2.0
    # choose X so that the closing boundary term's error ~ X^-(smin+1/2)/|p^2|^2 is tiny
    X = max(x0 * 4, (1e-16 / tol) ** 0 * (1.0 / (tol * abs(p_sq) ** 2)) ** (1.0 / (smin + 0.5)))
    if p_sq.real > 0:
        X = min(X, x0 + 60.0 / p_sq.real)
    X = min(X, 1e7)
    k = abs(p_sq.imag)
    svals = np.array(sorted(terms))
    coefs = np.array([terms[s] for s in svals])

    def rem(x):
        e = np.exp(1j * beta * np.sqrt(x) - p_sq * x)
        return (coefs[:, None] * x[None, :] ** (-svals[:, None])).sum(axis=0) * e

    total = boundary
    sums, qerr, env, n_eval, _ = _radial_sums(rem, np.array([0j]), x0, X, k, abs(beta), tol, graded=False)
    total += sums[0]
    # closing boundary term for each remainder beyond X
    eX = np.exp(1j * beta * math.sqrt(X) - p_sq * X)
    peff = p_sq - 1j * beta / (2 * math.sqrt(X))
    close = complex((coefs * X ** (-svals)).sum() * eX / peff)
    total += close
    err = float(qerr[0]) + abs(close) * (smin + abs(beta)) / (abs(peff) * X) + 1e-15 * abs(total)
    return QuadResult(complex(total), err, n_eval, {"boundary": complex(boundary), "X": X})


# ---------------------------------------------------------------------------
# x = cosh u substitution on (1, inf)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BesselCombination:
    """g(x) = sum_k coef_k J_{order_k}(scale * x), with its Hankel split.

    For large x, g(x) = A_+(x) e^{i scale x} + A_-(x) e^{-i scale x} with
    non-oscillating amplitudes A_+- that continue analytically into Re x > 0.
    """

    orders: tuple
    coefs: tuple
    scale: float

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        for nu, cf in zip(self.orders, self.coefs):
            out += cf * j_array(nu, self.scale * x)
        return out

    def amplitudes(self, x):
        x = np.asarray(x, dtype=complex)
        z = self.scale * x
        pref = np.sqrt(2.0 / (math.pi * z))
        ap = np.zeros(x.shape, dtype=complex)
        am = np.zeros(x.shape, dtype=complex)
        err = np.zeros(x.shape)
        for nu, cf in zip(self.orders, self.coefs):
            ph = 0.5 * math.pi * complex(nu) + 0.25 * math.pi
            s1, e1 = asymptotic_sum(1, nu, z)
            s2, e2 = asymptotic_sum(2, nu, z)
            ap += 0.5 * cf * pref * np.exp(-1j * ph) * s1
            am += 0.5 * cf * pref * np.exp(1j * ph) * s2
            err += 0.5 * abs(cf) * np.abs(pref) * (np.abs(np.exp(-1j * ph)) * e1 + np.abs(np.exp(1j * ph)) * e2)
        return ap, am, err

    def asymptotic_radius(self) -> float:
        nmax = max(abs(complex(n)) for n in self.orders)
        return (32.0 + nmax ** 2) / self.scale


def _weight_split(c: float, b: complex | None):
    """W(s) as a list of (coef, k) with W(s) = sum coef * exp(i k s)."""
    if b is None:
        if c == 0:
            return [(1.0, 0.0)]
        return [(0.5, c), (0.5, -c)]
    return [(1.0, 1j * complex(b))]


def _oscillatory_tail(amp: Callable, kappa: float, k: complex, X: float, tol: float):
    """int_X^inf amp(x) exp(i kappa x + i k s(x)) / s(x) dx, s = sqrt(x^2 - 1)."""
    freq = kappa + k
    if abs(freq) > 1e-12:
        sgn = 1.0 if (freq.real if isinstance(freq, complex) else freq) >= 0 else -1.0
        rate = abs(freq)
        t_max = 48.0 / rate

        def f(t):
            x = X + 1j * sgn * t
            s = np.sqrt(x * x - 1)
            return 1j * sgn * amp(x) * np.exp(1j * kappa * x + 1j * k * s) / s

        pieces = [0.0, 1.0 / rate, 4.0 / rate, 12.0 / rate, t_max]
        total = 0j
        err = 0.0
        n = 0
        for lo, hi in zip(pieces[:-1], pieces[1:]):
            r = adaptive_quad(f, lo, hi, tol=tol, abs_floor=1e-17)
            total += r.value
            err += r.err_estimate
            n += r.evaluations
        return total, err, n

    # no residual oscillation: map x = X / tau^2 onto (0, 1]
    def f(tau):
        x = X / (tau * tau)
        s = np.sqrt(x * x - 1)
        # kappa x + k s = kappa (x - s) = kappa / (x + s), free of cancellation
        return amp(x) * np.exp(1j * kappa / (x + s)) / s * 2 * X / tau ** 3

    r = adaptive_quad(f, 0.0, 1.0, tol=tol, abs_floor=1e-17)
    return r.value, r.err_estimate, r.evaluations


def cosh_substituted_tail(g: Callable, c: float = 0.0, a: float = 1.0, U: float | None = None,
                          tol: float = 1e-10, *, b: complex | None = None) -> QuadResult:
    """int_1^inf g(x) W(sqrt(x^2 - 1)) / sqrt(x^2 - 1) dx with W(s) = cos(c s),
    or W(s) = exp(-b s) when ``b`` is given (Re b >= 0).

    The substitution x = cosh u removes the inverse square root at x = 1 and
    [0, U] is integrated adaptively.  Beyond X = cosh U:

    * ``g`` a :class:`BesselCombination`: the tail is evaluated from the
      Hankel amplitudes, each oscillating piece along a ray into the
      half-plane where it decays, and any non-oscillating piece after
      x = X / tau^2;
    * W decaying (Re b > 0): U is taken large enough that the tail is
      negligible;
    * any other ``g``: the tail is bounded from the observed power-law decay
      of |g|, and TailBoundExceeded is raised if that bound exceeds ``tol``.
    """
    if b is not None and complex(b).real < 0:
        raise DomainError("need Re b >= 0")
    structured = isinstance(g, BesselCombination)
    decaying = b is not None and complex(b).real > 0
    if U is None:
        if decaying:
            U = math.asinh(45.0 / complex(b).real)
            if structured:
                U = max(U, math.acosh(max(2.0, g.asymptotic_radius())))
        elif structured:
            U = math.acosh(max(2.0, g.asymptotic_radius()))
        else:
            U = 40.0
    X = math.cosh(U)

    def integrand(u):
        x = np.cosh(u)
        s = np.sinh(u)
        gx = np.asarray(g(x), dtype=complex)
        if b is None:
            return gx * np.cos(c * s)
        return gx * np.exp(-complex(b) * s)

    # panel count ~ number of half-oscillations on [0, U]
    freq = ((abs(a) if structured else 0.0) + abs(c if b is None else complex(b).imag)) * X
    n_init = max(8, min(20000, int(freq / math.pi) + 8))
    head = adaptive_quad(integrand, 0.0, U, tol=0.1 * tol, initial_panels=n_init, abs_floor=1e-16)
    total, err, n_eval = head.value, head.err_estimate, head.evaluations
    diag = {"U": U, "head": head.value}
    if decaying:
        bound = (abs(np.asarray(g(np.array([X])))[0]) + 1.0) * math.exp(-complex(b).real * math.sinh(U))
        err += bound
    elif structured:
        for cw, k in _weight_split(c, b):
            for which, kappa in ((0, g.scale), (1, -g.scale)):
                amp = (lambda x, w=which, cw=cw: cw * g.amplitudes(x)[w])
                v, e, n = _oscillatory_tail(amp, kappa, k, X, 0.1 * tol)
                total += v
                err += e
                n_eval += n
        _, _, aerr = g.amplitudes(np.array([X]))
        err += float(aerr[0]) * 4 / math.sqrt(X)
        diag["tail"] = total - head.value
    else:
        xs = X * np.array([1.0, 1.5, 2.0, 3.0])
        gv = np.abs(np.asarray(g(xs), dtype=complex))
        m1 = gv[:2].max()
        m2 = gv[2:].max()
        if m1 == 0:
            bound = 0.0
        else:
            p = math.log(max(m1, 1e-300) / max(m2, 1e-300)) / math.log(2.0)
            bound = math.inf if p <= 0 else m1 / p * 1.5
        if bound > tol * max(abs(total), 1.0):
            raise TailBoundExceeded(f"tail beyond U={U} bounded only by {bound:.3g}")
        err += bound
    return QuadResult(complex(total), float(err), n_eval, diag)


# ---------------------------------------------------------------------------
# iterated double integral
# ---------------------------------------------------------------------------

def iterated_double(inner: Callable[[float], QuadResult], outer_range=(0.0, 2 * math.pi),
                    outer_tol: float = 1e-4, *, breakpoints: Sequence[float] = (),
                    excise: float = 0.0, weak_points: Sequence[float] = (),
                    initial_panels: int = 4) -> QuadResult:
    """int over phi of inner(phi), inner integral first.

    The outer range is split at ``breakpoints`` and ``weak_points``.  Around
    each breakpoint (an oscillating singularity of the inner value) a window
    of half-width ``excise`` is left out and its size is charged to the
    error estimate.  Next to a weak point (an |phi - p|^-1/2 type
    singularity) the substitution phi = p +- s^2 is used instead.
    """
    a, b = outer_range
    cuts = sorted(p for p in breakpoints if a < p < b)
    weak = sorted(p for p in weak_points if a <= p <= b)
    edges = sorted(set([a, b] + cuts + [p for p in weak if a < p < b]))
    inner_err = [0.0]
    n_inner = [0]
    cache: dict = {}

    def f(phis):
        out = np.empty(len(phis), dtype=complex)
        for i, phi in enumerate(phis):
            key = float(phi)
            if key not in cache:
                try:
                    r = inner(key)
                except Exception as exc:  # noqa: BLE001 - rewrapped with the node
                    raise InnerFailure(key, exc) from exc
                cache[key] = r
                inner_err[0] = max(inner_err[0], r.err_estimate)
                n_inner[0] += 1
            out[i] = cache[key].value
        return out

    def is_weak(p):
        return any(abs(p - q) < 1e-14 for q in weak)

    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        lo2 = lo + (excise if lo in cuts and not is_weak(lo) else 0.0)
        hi2 = hi - (excise if hi in cuts and not is_weak(hi) else 0.0)
        if hi2 <= lo2:
            continue
        if is_weak(lo) and is_weak(hi):
            m = 0.5 * (lo2 + hi2)
            pieces += [(lo2, m, "lo"), (m, hi2, "hi")]
        elif is_weak(lo):
            pieces.append((lo2, hi2, "lo"))
        elif is_weak(hi):
            pieces.append((lo2, hi2, "hi"))
        else:
            pieces.append((lo2, hi2, None))

    total = 0j
    err = 0.0
    n_eval = 0
    for lo, hi, kind in pieces:
        if kind is None:
            r = adaptive_quad(f, lo, hi, tol=outer_tol, initial_panels=initial_panels, abs_floor=1e-12)
        elif kind == "lo":
            r = adaptive_quad(lambda s, lo=lo: 2 * s * f(lo + s * s), 0.0, math.sqrt(hi - lo),
                              tol=outer_tol, initial_panels=initial_panels, abs_floor=1e-12)
        else:
            r = adaptive_quad(lambda s, hi=hi: 2 * s * f(hi - s * s), 0.0, math.sqrt(hi - lo),
                              tol=outer_tol, initial_panels=initial_panels, abs_floor=1e-12)
        total += r.value
        err += r.err_estimate
        n_eval += r.evaluations
    excised = 0.0
    correction = 0j
    if excise > 0:
        # each dropped window [p, q] holds int f with f ~ A e^{i Psi}, |Psi'| -> inf at p;
        # one partial integration leaves f(q) / L(q) with L = f'/f, next term ~ 2/(excise L)
        for p in cuts:
            if is_weak(p):
                continue
            for side in (-1.0, 1.0):
                q = p + side * excise
                if not a < q < b:
                    continue
                fq = complex(f(np.array([q]))[0])
                h = 1e-3 * excise
                fp, fm = f(np.array([q + h, q - h]))
                L = (fp - fm) / (2 * h * fq) if fq != 0 else 0j
                if L == 0:
                    excised += abs(fq) * excise
                    continue
                term = side * fq / L
                correction += term
                excised += abs(term) * (2 / (excise * abs(L)) + 1e-6)
    total += correction
    err += inner_err[0] * (b - a) + excised
    return QuadResult(complex(total), float(err), n_eval,
                      {"inner_evaluations": n_inner[0], "max_inner_err": inner_err[0], "excised": excised,
                       "window_correction": correction})


def _ray_integral(f: Callable, X: float, sigma: float, rate: float, tol: float):
    """int_0^inf f(X + i sigma t) i sigma dt for f decaying like exp(-rate t)."""
    t_max = 48.0 / rate
    pieces = [0.0, 1.0 / rate, 4.0 / rate, 12.0 / rate, t_max]
    total = 0j
    err = 0.0
    n = 0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        r = adaptive_quad(lambda t: 1j * sigma * f(X + 1j * sigma * t), lo, hi, tol=tol, abs_floor=1e-17)
        total += r.value
        err += r.err_estimate
        n += r.evaluations
    return total, err, n


def fourier_radial_split(g: Callable, c: float, sign: int, pieces: Sequence, *,
                         x_asym: float = 1.0, tol: float = 1e-10) -> QuadResult:
    """Abel limit of int_0^inf g(x) e(sign c x) dx from a finite range plus an analytic tail.

    ``pieces`` lists ``(amp, q)`` with g(x) = sum amp(x) exp(i q sqrt x) for
    x >= x_asym, each ``amp`` non-oscillating and analytic in Re x > 0.
    The range [0, X] is integrated on the real axis with X beyond every
    stationary point of q sqrt x + 2 pi sign c x; each tail piece is taken
    along x = X + i sign t, where it decays at least like exp(-pi c t).
    The result equals the eps -> 0 limit of the damped integral.
    """
    if c <= 0:
        raise DomainError("fourier_radial_split needs c > 0")
    qmax = max((abs(q) for _, q in pieces), default=0.0)
    x_star = (qmax / (4 * math.pi * c)) ** 2
    X = max(4.0 * x_star, x_asym, 4.0)
    p_sq = np.array([-sign * 2j * math.pi * c])
    sums, qerr, _, n_eval, _ = _radial_sums(g, p_sq, 0.0, X, 2 * math.pi * c, qmax, tol)
    total = complex(sums[0])
    err = float(qerr[0])
    for amp, q in pieces:
        f = (lambda x, amp=amp, q=q: amp(x) * np.exp(1j * q * np.sqrt(x) + sign * 2j * math.pi * c * x))
        v, e, n = _ray_integral(f, X, float(sign), math.pi * c, 0.1 * tol)
        total += v
        err += e
        n_eval += n
    return QuadResult(total, err, n_eval, {"X": X})
