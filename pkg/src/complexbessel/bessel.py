"""Bessel functions J, Y, I, H1, H2 of complex order and complex argument.

Every argument carries its branch (``arg``) explicitly, so powers such as
``(z/2)**nu`` and ``z**(-1/2)`` are taken on the stated sheet rather than
the principal one.  Small arguments use the ascending series; large ones
use the Hankel expansions with optimal truncation.  When the double
precision series loses too many digits to cancellation, the same series
is re-summed with extended working precision.

Besides the scalar API returning :class:`EvalResult`, two vectorized
kernels feed the quadrature code: :func:`j_array` and :func:`pair_array`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Union

import mpmath
import numpy as np

from .errors import AccuracyError, DomainError, NonConvergence, SectorError
from .gamma import cospi, reciprocal_gamma, sinpi

EPS = np.finfo(float).eps
INT_DELTA = 1e-3  # distance to an integer order below which offsets are used
OFFSET_H = 1e-3


@dataclass(frozen=True)
class BranchedArgument:
    """A complex number together with the branch of its argument."""

    z: complex
    arg: float

    @classmethod
    def of(cls, z: Union[complex, float, "BranchedArgument"], arg: float | None = None):
        if isinstance(z, BranchedArgument):
            return z
        z = complex(z)
        return cls(z, cmath.phase(z) if arg is None else float(arg))

    @classmethod
    def polar(cls, r: float, arg: float) -> "BranchedArgument":
        return cls(cmath.rect(r, arg), float(arg))

    @property
    def modulus(self) -> float:
        return abs(self.z)

    def conj(self) -> "BranchedArgument":
        return BranchedArgument(self.z.conjugate(), -self.arg)

    def rotate(self, quarter_turns: int) -> "BranchedArgument":
        """Multiply by ``exp(i*pi*k/2)`` and move the branch accordingly."""
        ang = 0.5 * math.pi * quarter_turns
        return BranchedArgument(self.z * (1j) ** (quarter_turns % 4), self.arg + ang)

    def scale(self, s: float) -> "BranchedArgument":
        """Multiply by a positive real factor."""
        return BranchedArgument(self.z * s, self.arg)


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_estimate: float
    method: str

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class EvalOptions:
    tol: float = 1e-12
    max_terms: int = 200
    sector_margin_delta: float = 0.05
    series_radius: float = 12.0
    asymptotic_radius: float = 25.0

    def __post_init__(self):
        if not (0 < self.sector_margin_delta < math.pi / 2):
            raise ValueError("sector_margin_delta must lie in (0, pi/2)")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    def series_cutoff(self, nu: complex) -> float:
        return self.series_radius + abs(nu) ** 2

    def asymptotic_cutoff(self, nu: complex) -> float:
        return self.asymptotic_radius + abs(nu) ** 2


DEFAULT_OPTS = EvalOptions()

Arg = Union[complex, float, BranchedArgument]


def dist_to_int(x: complex) -> float:
    return abs(complex(x) - round(complex(x).real))


# ---------------------------------------------------------------------------
# ascending series
# ---------------------------------------------------------------------------

def _first_live_index(nu: complex) -> int:
    """First n for which 1/Gamma(nu+n+1) is not identically zero."""
    n = round(nu.real)
    if nu == n and n < 0:
        return -n
    return 0


def _series_double(nu: complex, za: BranchedArgument, max_terms: int):
    """Return (sum, sum of |terms|, n_terms, last |term|)."""
    r = za.modulus
    log_half = complex(math.log(r / 2.0), za.arg)
    q = -(za.z / 2.0) ** 2
    n0 = _first_live_index(nu)
    term = cmath.exp((nu + 2 * n0) * log_half) * reciprocal_gamma(nu + n0 + 1) / math.factorial(n0)
    if n0 % 2:
        term = -term
    total = term
    abs_sum = abs(term)
    small = 0
    half_r = 0.5 * r
    n = n0
    while True:
        n += 1
        if n - n0 > max_terms:
            raise NonConvergence(f"series for J_{nu} did not converge in {max_terms} terms")
        term = term * q / (n * (nu + n))
        total += term
        at = abs(term)
        abs_sum += at
        if n > half_r and at <= EPS * 0.25 * abs(total):
            small += 1
            if small >= 3:
                return total, abs_sum, n, at
        else:
            small = 0
        if total == 0 and at == 0:
            return total, abs_sum, n, at


def _series_mp(nu: complex, za: BranchedArgument, dps: int, max_terms: int = 4000):
    """Ascending series summed at ``dps`` decimal digits; returns (mpc, abs_sum)."""
    with mpmath.workdps(dps):
        nu_m = mpmath.mpc(nu)
        log_half = mpmath.mpc(mpmath.log(mpmath.mpf(za.modulus) / 2), za.arg)
        zh = mpmath.exp(log_half)
        q = -zh * zh
        n0 = _first_live_index(nu)
        term = mpmath.exp((nu_m + 2 * n0) * log_half) * mpmath.rgamma(nu_m + n0 + 1) / mpmath.factorial(n0)
        if n0 % 2:
            term = -term
        total = term
        abs_sum = abs(term)
        thresh = mpmath.mpf(10) ** (-dps)
        half_r = 0.5 * za.modulus
        n = n0
        small = 0
        while True:
            n += 1
            if n - n0 > max_terms:
                raise NonConvergence("extended precision series did not converge")
            term = term * q / (n * (nu_m + n))
            total += term
            at = abs(term)
            abs_sum += at
            if n > half_r and at <= thresh * abs(total):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        return +total, +abs_sum


def _digits_needed(abs_sum: float, magnitude: float, want: float = 17.0) -> int:
    magnitude = max(magnitude, 1e-300)
    return int(want + max(0.0, math.log10(max(abs_sum, 1e-300) / magnitude))) + 6


def j_series_precise(nu: complex, za: BranchedArgument) -> complex:
    """J_nu from the ascending series, accurate to double precision
    regardless of cancellation (extended precision when needed)."""
    total, abs_sum, _, _ = _series_double(nu, za, 4000)
    if abs_sum <= 1e3 * abs(total):
        return total
    dps = _digits_needed(abs_sum, abs(total) if abs(total) > 1e-3 * EPS * abs_sum else EPS * abs_sum)
    val, _ = _series_mp(nu, za, dps)
    while abs_sum * 10.0 ** (-dps + 3) > 1e-17 * float(abs(val)):
        dps = _digits_needed(abs_sum, float(abs(val))) + 4
        val, _ = _series_mp(nu, za, dps)
    return complex(val)


def bessel_j_series(nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """J_nu(z) from the ascending series on the branch carried by ``z``."""
    nu = complex(nu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        return _j_at_zero(nu)
    total, abs_sum, n, last = _series_double(nu, za, opts.max_terms)
    err = 2 * EPS * abs_sum + last
    if err <= opts.tol * abs(total):
        return EvalResult(total, err, "series")
    # cancellation: re-sum with enough digits to honour the tolerance
    want = max(17.0, -math.log10(opts.tol) + 3)
    mag = abs(total) if abs(total) > 1e3 * EPS * abs_sum else EPS * abs_sum
    dps = _digits_needed(abs_sum, mag, want)
    while True:
        val, _ = _series_mp(nu, za, dps)
        err = abs_sum * 10.0 ** (-dps + 3) + abs(complex(val)) * EPS
        if err <= opts.tol * float(abs(val)) or dps > 2000:
            return EvalResult(complex(val), err, "series")
        dps = _digits_needed(abs_sum, float(abs(val)), want) + 4


def _j_at_zero(nu: complex) -> EvalResult:
    if nu == 0:
        return EvalResult(1 + 0j, 0.0, "series")
    if nu.real > 0:
        return EvalResult(0j, 0.0, "series")
    if nu.real < 0 and nu == round(nu.real):
        # J_{-m}(0) = (-1)^m J_m(0) = 0
        return EvalResult(0j, 0.0, "series")
    raise DomainError(f"J_{nu}(0) is undefined for Re nu <= 0, nu != 0")


# ---------------------------------------------------------------------------
# Hankel asymptotic expansions
# ---------------------------------------------------------------------------

def asymptotic_sum(kind: int, nu: complex, z, tol: float = 1e-17, kmax: int = 80):
    """Sum_k a_k(nu) (+-i)^k / z^k with optimal truncation (vectorized).

    Returns (S, err) where err bounds the omitted tail in the same units.
    """
    z = np.asarray(z, dtype=complex)
    mu4 = 4 * complex(nu) ** 2
    rot = 1j if kind == 1 else -1j
    zinv = rot / z
    S = np.ones_like(z)
    term = np.ones_like(z)
    prev = np.ones(z.shape)
    err = np.zeros(z.shape)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, kmax + 1):
        term = term * ((mu4 - (2 * k - 1) ** 2) / (8.0 * k)) * zinv
        ab = np.abs(term)
        grow = active & (ab > prev) & (k > 2)
        err = np.where(grow, prev, err)
        active &= ~grow
        S = np.where(active, S + term, S)
        done = active & (ab <= tol * np.abs(S))
        err = np.where(done, ab, err)
        active &= ~done
        prev = np.where(active, ab, prev)
        if not active.any():
            break
    err = np.where(active, prev, err)
    return S, err


def _check_sector(kind: int, arg: float, delta: float):
    if kind == 1:
        lo, hi = -math.pi + delta, 2 * math.pi - delta
    else:
        lo, hi = -2 * math.pi + delta, math.pi - delta
    if not (lo <= arg <= hi):
        raise SectorError(f"arg z = {arg:.6g} outside the validity sector of H{kind}")


def _hankel_asym_raw(kind: int, nu: complex, za: BranchedArgument, tol: float):
    z = za.z
    S, err = asymptotic_sum(kind, nu, z, tol=min(tol, 1e-17) if tol < 1e-15 else 0.1 * tol)
    S, err = complex(S), float(err)
    pref = math.sqrt(2 / math.pi) * cmath.exp(-0.5 * complex(math.log(za.modulus), za.arg))
    s = 1 if kind == 1 else -1
    phase = cmath.exp(s * 1j * (z - 0.5 * math.pi * nu - 0.25 * math.pi))
    scale = pref * phase
    return scale * S, abs(scale) * (err + 4 * EPS * abs(S))


def hankel_asymptotic(kind: int, nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """H^(kind)_nu(z) from the Hankel expansion, within its sector of validity."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    nu = complex(nu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        raise DomainError("Hankel functions are singular at z = 0")
    _check_sector(kind, za.arg, opts.sector_margin_delta)
    val, err = _hankel_asym_raw(kind, nu, za, opts.tol)
    if err > opts.tol * abs(val):
        raise AccuracyError(
            f"asymptotic H{kind}_{nu}({za.z}) error {err:.3g} exceeds tolerance"
        )
    return EvalResult(val, err, "asymptotic")


# ---------------------------------------------------------------------------
# order-offset limit at integer orders
# ---------------------------------------------------------------------------

def _neville(xs, ys, x):
    p = list(ys)
    n = len(xs)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = ((x - xs[i + m]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + m])
    return p[0]


def order_limit(f: Callable[[complex], complex], nu: complex, h: float = OFFSET_H,
                scale: float = 1.0):
    """Value at ``nu`` of an analytic function of the order that is only
    computable away from integers (in units of ``1/scale``).

    Samples ``f`` at n0 - h, n0 - h/2, n0 + h/2, n0 + h, where n0 is the
    nearest integer (keeping Im nu), and interpolates.  This is the
    one-step Richardson extrapolation of the symmetric differences when
    ``nu`` is itself an integer.  Returns (value, err_estimate).
    """
    nu = complex(nu)
    centre = complex(round(nu.real * scale) / scale, nu.imag)
    offs = (-h, -h / 2, h / 2, h)
    xs = [centre + d / scale for d in offs]
    ys = [f(x) for x in xs]
    val = _neville(xs, ys, nu)
    lower = _neville(xs[1:], ys[1:], nu)
    return val, abs(val - lower)


# ---------------------------------------------------------------------------
# J, Y, I, H
# ---------------------------------------------------------------------------

def _reduce_half_plane(nu: complex, za: BranchedArgument):
    """Rotate ``za`` by multiples of pi into |arg| <= pi/2.

    Uses J_nu(z e^{i pi m}) = e^{i pi m nu} J_nu(z); returns (za', factor)
    with J_nu(za) = factor * J_nu(za').
    """
    m = 0
    arg = za.arg
    while arg > 0.5 * math.pi:
        arg -= math.pi
        m += 1
    while arg < -0.5 * math.pi:
        arg += math.pi
        m -= 1
    if m == 0:
        return za, 1.0 + 0j
    zr = za.z * (-1) ** m
    return BranchedArgument(zr, arg), cmath.exp(1j * math.pi * m * nu)


def _j_asymptotic(nu: complex, za: BranchedArgument, tol: float):
    zr, fac = _reduce_half_plane(nu, za)
    h1, e1 = _hankel_asym_raw(1, nu, zr, tol)
    h2, e2 = _hankel_asym_raw(2, nu, zr, tol)
    return fac * 0.5 * (h1 + h2), abs(fac) * 0.5 * (e1 + e2)


def bessel_j_asymptotic(nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """The large-|z| path of J_nu: (H1 + H2)/2 after rotating z into |arg| <= pi/2.

    Summing the two Hankel expansions directly near |arg z| = pi loses the
    exponentially small partner across its Stokes line.
    """
    nu = complex(nu)
    za = BranchedArgument.of(z)
    val, err = _j_asymptotic(nu, za, opts.tol)
    if err > opts.tol * abs(val):
        raise AccuracyError(f"asymptotic J_{nu}({za.z}) error {err:.3g} exceeds tolerance")
    return EvalResult(val, err, "asymptotic")


def bessel_j(nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """J_nu(z), choosing series or asymptotic evaluation by |z|."""
    nu = complex(nu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        return _j_at_zero(nu)
    r = za.modulus
    if r <= opts.series_cutoff(nu):
        return bessel_j_series(nu, za, opts)
    val, err = _j_asymptotic(nu, za, opts.tol)
    if err <= opts.tol * abs(val):
        return EvalResult(val, err, "asymptotic")
    if r >= opts.asymptotic_cutoff(nu):
        raise AccuracyError(f"asymptotic J_{nu}({za.z}) error {err:.3g} exceeds tolerance")
    return bessel_j_series(nu, za, opts)


def _y_direct(nu: complex, za: BranchedArgument, opts: EvalOptions):
    a = bessel_j(nu, za, opts)
    b = bessel_j(-nu, za, opts)
    s = sinpi(nu)
    c = cospi(nu)
    val = (a.value * c - b.value) / s
    err = (a.err_estimate * abs(c) + b.err_estimate) / abs(s)
    return val, err, a.method


def bessel_y(nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """Y_nu(z) = (J_nu cos(pi nu) - J_-nu) / sin(pi nu), limit form at integers."""
    nu = complex(nu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        raise DomainError("Y_nu is singular at z = 0")
    if za.modulus >= opts.series_cutoff(nu) and abs(za.arg) <= 0.5 * math.pi:
        h1, e1 = _hankel_asym_raw(1, nu, za, opts.tol)
        h2, e2 = _hankel_asym_raw(2, nu, za, opts.tol)
        val = (h1 - h2) / 2j
        err = 0.5 * (e1 + e2)
        if err <= opts.tol * abs(val) or za.modulus >= opts.asymptotic_cutoff(nu):
            return EvalResult(val, err, "asymptotic")
    if dist_to_int(nu) >= INT_DELTA:
        val, err, _ = _y_direct(nu, za, opts)
        return EvalResult(val, err, "connection")
    errs = []

    def f(n):
        v, e, _ = _y_direct(n, za, opts)
        errs.append(e)
        return v

    val, ext = order_limit(f, nu)
    return EvalResult(val, ext + 2 * max(errs), "limit")


def bessel_i(nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """I_nu(z) through I_nu(e^{+-i pi/2} w) = e^{+-i pi nu/2} J_nu(w)."""
    nu = complex(nu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        return _j_at_zero(nu)
    if za.arg > 0:
        w = za.rotate(-1)
        fac = cmath.exp(0.5j * math.pi * nu)
    else:
        w = za.rotate(1)
        fac = cmath.exp(-0.5j * math.pi * nu)
    res = bessel_j(nu, w, opts)
    return EvalResult(fac * res.value, abs(fac) * res.err_estimate, res.method)


def _hankel_connection_mp(kind: int, nu: complex, za: BranchedArgument) -> complex:
    """H^(kind)_nu from J_{+-nu} summed in extended precision."""
    s = sinpi(nu)
    # cancellation ~ e^{2|Im z|} / |sin(pi nu)|
    extra = (2 * abs(za.z.imag) + abs(za.modulus) * 0.0) / math.log(10) + max(0.0, -math.log10(abs(s)))
    _, abs_p, _, _ = _series_double(nu, za, 4000)
    _, abs_m, _, _ = _series_double(-nu, za, 4000)
    base = math.log10(max(abs_p, abs_m, 1e-300))
    dps = int(24 + extra + max(0.0, base + 2 * abs(za.z.imag) / math.log(10)))
    with mpmath.workdps(dps):
        jp, _ = _series_mp(nu, za, dps)
        jm, _ = _series_mp(-nu, za, dps)
        nu_m = mpmath.mpc(nu)
        if kind == 1:
            val = (jm - mpmath.exp(-1j * mpmath.pi * nu_m) * jp) / (1j * mpmath.sin(mpmath.pi * nu_m))
        else:
            val = (mpmath.exp(1j * mpmath.pi * nu_m) * jp - jm) / (1j * mpmath.sin(mpmath.pi * nu_m))
        return complex(val)


def _hankel_large(kind: int, nu: complex, za: BranchedArgument, tol: float):
    """Asymptotic H for large |z|, folding |arg z| > pi/2 back with
    H1(z e^{i pi}) = -e^{-i pi nu} H2(z), H1(z e^{-i pi}) = 2 cos(pi nu) H1(z) + e^{-i pi nu} H2(z)
    and their conjugate counterparts for H2.  Near arg = +-pi the plain
    expansion loses accuracy to the switched-on subdominant solution."""
    if abs(za.arg) <= 0.5 * math.pi:
        return _hankel_asym_raw(kind, nu, za, tol)
    up = za.arg > 0
    zr = BranchedArgument(-za.z, za.arg - math.pi if up else za.arg + math.pi)
    h1, e1 = _hankel_asym_raw(1, nu, zr, tol)
    h2, e2 = _hankel_asym_raw(2, nu, zr, tol)
    em, ep = cmath.exp(-1j * math.pi * nu), cmath.exp(1j * math.pi * nu)
    c2 = 2 * cospi(nu)
    if kind == 1 and up:
        return -em * h2, abs(em) * e2
    if kind == 2 and not up:
        return -ep * h1, abs(ep) * e1
    if kind == 1:
        return c2 * h1 + em * h2, abs(c2) * e1 + abs(em) * e2
    return c2 * h2 + ep * h1, abs(c2) * e2 + abs(ep) * e1


def hankel(kind: int, nu: complex, z: Arg, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """H^(1)_nu or H^(2)_nu: asymptotic for large |z|, connection formula otherwise."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    nu = complex(nu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        raise DomainError("Hankel functions are singular at z = 0")
    r = za.modulus
    if r > opts.series_cutoff(nu) and -math.pi < za.arg <= math.pi:
        val, err = _hankel_large(kind, nu, za, opts.tol)
        if err <= opts.tol * abs(val) or r >= opts.asymptotic_cutoff(nu):
            return EvalResult(val, err, "asymptotic")
    elif r >= opts.asymptotic_cutoff(nu):
        return hankel_asymptotic(kind, nu, za, opts)
    if dist_to_int(nu) >= INT_DELTA:
        val = _hankel_connection_mp(kind, nu, za)
        return EvalResult(val, 8 * EPS * abs(val), "connection")
    val, ext = order_limit(lambda n: _hankel_connection_mp(kind, n, za), nu)
    return EvalResult(val, ext + 8 * EPS * abs(val), "limit")


# ---------------------------------------------------------------------------
# vectorized kernels for quadrature (principal branch)
# ---------------------------------------------------------------------------

def _series_array(nu: complex, z: np.ndarray, arg: np.ndarray):
    """Vectorized ascending series; returns (sum, abs_sum)."""
    r = np.abs(z)
    log_half = np.log(r / 2.0) + 1j * arg
    q = -(z / 2.0) ** 2
    n0 = _first_live_index(nu)
    term = np.exp((nu + 2 * n0) * log_half) * (reciprocal_gamma(nu + n0 + 1) / math.factorial(n0))
    if n0 % 2:
        term = -term
    total = term.copy()
    abs_sum = np.abs(term)
    nmax = int(0.5 * r.max()) + 30 if r.size else 0
    n = n0
    while True:
        n += 1
        term = term * q / (n * (nu + n))
        total += term
        at = np.abs(term)
        abs_sum += at
        if n > nmax and np.all(at <= 0.25 * EPS * np.abs(total)):
            break
        if n - n0 > 4000:
            raise NonConvergence("vectorized series did not converge")
    return total, abs_sum


def j_array(nu: complex, z, rtol: float = 1e-13) -> np.ndarray:
    """J_nu(z) on the principal branch for an array of z (no z = 0)."""
    nu = complex(nu)
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    out = np.empty_like(flat)
    r = np.abs(flat)
    lo = DEFAULT_OPTS.series_cutoff(nu)
    big = r > lo
    if big.any():
        zb = flat[big]
        arg = np.angle(zb)
        m = np.where(arg > 0.5 * np.pi, 1, np.where(arg < -0.5 * np.pi, -1, 0))
        zr = zb * np.where(m != 0, -1.0, 1.0)
        argr = arg - m * np.pi
        fac = np.exp(1j * np.pi * m * nu)
        pref = math.sqrt(2 / math.pi) * np.exp(-0.5 * (np.log(np.abs(zr)) + 1j * argr))
        ph = zr - 0.5 * math.pi * nu - 0.25 * math.pi
        S1, e1 = asymptotic_sum(1, nu, zr)
        S2, e2 = asymptotic_sum(2, nu, zr)
        v = 0.5 * pref * (np.exp(1j * ph) * S1 + np.exp(-1j * ph) * S2)
        e = 0.5 * np.abs(pref) * (np.abs(np.exp(1j * ph)) * e1 + np.abs(np.exp(-1j * ph)) * e2)
        v = fac * v
        # judged against the oscillation envelope, so zeros of J stay on this path
        env = 0.5 * np.abs(pref) * (np.abs(np.exp(1j * ph)) + np.abs(np.exp(-1j * ph)))
        good = e <= rtol * np.maximum(np.abs(v), np.abs(fac) * env)
        idx = np.flatnonzero(big)
        out[idx[good]] = v[good]
        big[idx[~good]] = False
    small = ~big
    if small.any():
        zs = flat[small]
        tot, abs_sum = _series_array(nu, zs, np.angle(zs))
        bad = 2 * EPS * abs_sum > rtol * np.abs(tot)
        idx = np.flatnonzero(small)
        out[idx] = tot
        for i in idx[bad]:
            out[i] = j_series_precise(nu, BranchedArgument.of(flat[i]))
    return out.reshape(z.shape)


def _pair_series_mp(nu: complex, w: complex, reduced: bool) -> complex:
    wa = BranchedArgument.of(w)
    wb = wa.conj()
    parts = [_series_double(s * nu, b, 4000) for s in (1, -1) for b in (wa, wb)]
    mag = max(p[1] for p in parts) ** 2
    dps = int(30 + max(0.0, math.log10(max(mag, 1e-300)) + 2 * abs(w.imag) / math.log(10)))
    with mpmath.workdps(dps):
        jpa, _ = _series_mp(nu, wa, dps)
        jpb, _ = _series_mp(nu, wb, dps)
        jma, _ = _series_mp(-nu, wa, dps)
        jmb, _ = _series_mp(-nu, wb, dps)
        d = jma * jmb - jpa * jpb
        if reduced:
            d = d / mpmath.sin(mpmath.pi * mpmath.mpc(nu))
        return complex(d)


def _pair_series_array(nu: complex, w: np.ndarray, reduced: bool, rtol: float) -> np.ndarray:
    arg = np.angle(w)
    wc = np.conj(w)
    jpa, apa = _series_array(nu, w, arg)
    jpb, apb = _series_array(nu, wc, -arg)
    jma, ama = _series_array(-nu, w, arg)
    jmb, amb = _series_array(-nu, wc, -arg)
    d = jma * jmb - jpa * jpb
    err = 4 * EPS * (ama * amb + apa * apb)
    s = sinpi(nu) if reduced else 1.0
    d = d / s
    err = err / abs(s)
    bad = err > rtol * np.abs(d)
    for i in np.flatnonzero(bad):
        d[i] = _pair_series_mp(nu, complex(w[i]), reduced)
    return d


def pair_array(nu: complex, w, reduced: bool = False, rtol: float = 1e-12) -> np.ndarray:
    """D(w) = J_-nu(w) J_-nu(conj w) - J_nu(w) J_nu(conj w), vectorized.

    The second factor of each product is evaluated at the conjugate branch,
    which makes D(-w) = D(w); inputs are folded into Re w >= 0.  With
    ``reduced=True`` the result is divided by sin(pi nu); that quotient is
    regular in nu, and for large |w| it is evaluated without division.
    """
    nu = complex(nu)
    w = np.asarray(w, dtype=complex)
    flat = w.ravel().copy()
    flip = (flat.real < 0) | ((flat.real == 0) & (flat.imag < 0))
    flat[flip] = -flat[flip]
    out = np.empty_like(flat)
    r = np.abs(flat)
    # the asymptotic form is tried early and kept wherever it meets rtol
    lo = min(DEFAULT_OPTS.series_cutoff(nu), 8.0 + abs(nu) ** 2)
    big = r > lo
    if big.any():
        wb = flat[big]
        wc = np.conj(wb)
        S1a, e1a = asymptotic_sum(1, nu, wb)
        S1b, e1b = asymptotic_sum(1, nu, wc)
        S2a, e2a = asymptotic_sum(2, nu, wb)
        S2b, e2b = asymptotic_sum(2, nu, wc)
        ph = np.exp(2j * wb.real)
        core = ph * S1a * S1b + np.conj(ph) * S2a * S2b
        err = (np.abs(S1a) * e1b + np.abs(S1b) * e1a + np.abs(S2a) * e2b + np.abs(S2b) * e2a
               + e1a * e1b + e2a * e2b)
        fac = 1.0 / (np.pi * r[big])
        if not reduced:
            fac = fac * sinpi(nu)
        v = fac * core
        e = np.abs(fac) * (err + 4 * EPS * np.abs(core).max(initial=0.0))
        good = e <= rtol * np.maximum(np.abs(v), np.abs(fac))
        idx = np.flatnonzero(big)
        out[idx[good]] = v[good]
        big[idx[~good]] = False
    small = ~big
    if small.any():
        idx = np.flatnonzero(small)
        ws = flat[small]
        if reduced and dist_to_int(nu) < INT_DELTA:
            vals, _ = order_limit(lambda n: _pair_series_array(n, ws, True, rtol), nu)
            out[idx] = vals
        else:
            out[idx] = _pair_series_array(nu, ws, reduced, rtol)
    return out.reshape(w.shape)


def _pair_series_scalar(nu: complex, wa: BranchedArgument, reduced: bool, tol: float):
    wb = wa.conj()
    jma, ama, _, _ = _series_double(-nu, wa, 4000)
    jmb, amb, _, _ = _series_double(-nu, wb, 4000)
    jpa, apa, _, _ = _series_double(nu, wa, 4000)
    jpb, apb, _, _ = _series_double(nu, wb, 4000)
    d = jma * jmb - jpa * jpb
    err = 4 * EPS * (ama * amb + apa * apb)
    s = sinpi(nu) if reduced else 1.0
    if err > tol * abs(d):
        mag = max(ama * amb, apa * apb)
        dps = int(30 + max(0.0, math.log10(max(mag, 1e-300)) - math.log10(max(abs(d), 1e-300 + EPS * mag))))
        with mpmath.workdps(dps):
            a, _ = _series_mp(-nu, wa, dps)
            b, _ = _series_mp(-nu, wb, dps)
            c, _ = _series_mp(nu, wa, dps)
            e, _ = _series_mp(nu, wb, dps)
            d = complex(a * b - c * e)
        err = 8 * EPS * abs(d)
    return d / s, err / abs(s)


def bessel_pair(nu: complex, w: Arg, reduced: bool = False,
                opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """J_-nu(w) J_-nu(w') - J_nu(w) J_nu(w'), with w' the conjugate of w on
    the conjugate branch (arg w' = -arg w).

    ``reduced=True`` divides by sin(pi nu); the quotient is regular in nu and
    is obtained by order offsets when nu is within 1e-3 of an integer.
    """
    nu = complex(nu)
    wa = BranchedArgument.of(w)
    if wa.z == 0:
        raise DomainError("pair product is singular at w = 0")
    if wa.modulus > opts.series_cutoff(nu):
        v = complex(pair_array(nu, np.array([wa.z]), reduced=reduced, rtol=opts.tol)[0])
        return EvalResult(v, opts.tol * abs(v), "asymptotic")
    if reduced and dist_to_int(nu) < INT_DELTA:
        errs = []

        def f(n):
            v, e = _pair_series_scalar(n, wa, True, opts.tol)
            errs.append(e)
            return v

        v, ext = order_limit(f, nu)
        return EvalResult(v, ext + max(errs), "limit")
    v, e = _pair_series_scalar(nu, wa, reduced, opts.tol)
    return EvalResult(v, e, "series")
