"""The spherical Bessel function over the complex numbers,

    BJ_mu(z) = 2 pi^2 / sin(2 pi mu) * (J_{-2mu}(4 pi sqrt z) J_{-2mu}(4 pi sqrt zbar)
                                        - J_{2mu}(4 pi sqrt z) J_{2mu}(4 pi sqrt zbar)),

with sqrt z = |z|^{1/2} e^{i arg z / 2} and sqrt zbar its conjugate.  At
half-integer mu the quotient is read as its limit.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bessel import (
    DEFAULT_OPTS,
    EvalOptions,
    EvalResult,
    BranchedArgument,
    asymptotic_sum,
    bessel_pair,
    dist_to_int,
    hankel,
    pair_array,
)
from .errors import DomainError, UnsupportedIndex

HALF_INT_DELTA = 1e-3


@dataclass(frozen=True)
class SphericalIndex:
    mu: complex

    @property
    def near_half_integer(self) -> bool:
        return dist_to_int(2 * complex(self.mu)) < HALF_INT_DELTA

    @classmethod
    def of(cls, mu) -> "SphericalIndex":
        return mu if isinstance(mu, SphericalIndex) else cls(complex(mu))


def _bessel_argument(za: BranchedArgument) -> BranchedArgument:
    """4 pi sqrt(z) on the branch arg z / 2."""
    return BranchedArgument.polar(4 * math.pi * math.sqrt(za.modulus), 0.5 * za.arg)


def spherical_j(mu, z, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """BJ_mu(z) for complex mu and z != 0."""
    m = SphericalIndex.of(mu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        raise DomainError("BJ_mu is singular at z = 0")
    res = bessel_pair(2 * m.mu, _bessel_argument(za), reduced=True, opts=opts)
    c = 2 * math.pi ** 2
    method = "limit" if m.near_half_integer and res.method != "asymptotic" else res.method
    return EvalResult(c * res.value, c * res.err_estimate, method)


def spherical_j_array(mu, z, rtol: float = 1e-12) -> np.ndarray:
    """Vectorized BJ_mu on the principal branch of z, to relative accuracy ~rtol."""
    z = np.asarray(z, dtype=complex)
    w = 4 * math.pi * np.sqrt(z)
    return 2 * math.pi ** 2 * pair_array(2 * complex(mu), w, reduced=True, rtol=rtol)


def ray_pieces(mu, phi: float):
    """Split of x -> BJ_mu(x e^{i phi}) for large x, phi in (-pi, pi].

    Returns ``[(amp, q), (amp, -q)]`` with
    BJ_mu(x e^{i phi}) = sum amp(x) exp(i q sqrt x), where q = 8 pi cos(phi/2)
    and each amplitude is a product of two Hankel sums divided by sqrt x.
    The amplitudes continue analytically to Re x > 0 and are accurate once
    4 pi sqrt|x| is past the asymptotic radius (see :func:`ray_asymptotic_start`).
    """
    nu = 2 * complex(mu)
    a = 4 * math.pi * cmath.exp(0.5j * phi)
    ac = a.conjugate()
    pref = 2 * math.pi / abs(a)

    def amp(kind):
        def f(x):
            r = np.sqrt(np.asarray(x, dtype=complex))
            s_a, _ = asymptotic_sum(kind, nu, a * r)
            s_b, _ = asymptotic_sum(kind, nu, ac * r)
            return pref / r * s_a * s_b
        return f

    q = 2 * a.real
    return [(amp(1), q), (amp(2), -q)]


def ray_asymptotic_start(mu) -> float:
    """Smallest x at which the split of :func:`ray_pieces` is at full accuracy."""
    nu = 2 * complex(mu)
    return ((DEFAULT_OPTS.asymptotic_cutoff(nu) + 8.0) / (4 * math.pi)) ** 2


def spherical_j_hankel_product(mu, z, opts: EvalOptions = DEFAULT_OPTS) -> EvalResult:
    """BJ_mu(z) = i pi^2 (e^{2 pi i mu} H1(w) H1(w') - e^{-2 pi i mu} H2(w) H2(w'))
    with w = 4 pi sqrt z, w' = 4 pi sqrt zbar; no sin(2 pi mu) denominator."""
    m = SphericalIndex.of(mu)
    za = BranchedArgument.of(z)
    if za.z == 0:
        raise DomainError("BJ_mu is singular at z = 0")
    nu = 2 * m.mu
    w = _bessel_argument(za)
    wc = w.conj()
    h1a, h1b = hankel(1, nu, w, opts), hankel(1, nu, wc, opts)
    h2a, h2b = hankel(2, nu, w, opts), hankel(2, nu, wc, opts)
    ep = cmath.exp(2j * math.pi * m.mu)
    em = cmath.exp(-2j * math.pi * m.mu)
    val = 1j * math.pi ** 2 * (ep * h1a.value * h1b.value - em * h2a.value * h2b.value)
    err = math.pi ** 2 * (
        abs(ep) * (h1a.err_estimate * abs(h1b.value) + h1b.err_estimate * abs(h1a.value))
        + abs(em) * (h2a.err_estimate * abs(h2b.value) + h2b.err_estimate * abs(h2a.value))
    )
    return EvalResult(val, err, "connection")


def closed_form_reference(mu, z) -> complex:
    """Elementary expressions of BJ_mu for mu in {1/4, 3/4}.

    With w = 4 pi sqrt z (so |w| = 4 pi |z|^{1/2}, Re w = 4 pi Re sqrt z):
      BJ_{1/4}(z) = cos(2 Re w) / sqrt|z|
      BJ_{3/4}(z) = ((1 - |w|^-2) cos(2 Re w) - 2 Re w |w|^-2 sin(2 Re w)) / sqrt|z|
    """
    m = SphericalIndex.of(mu).mu
    za = BranchedArgument.of(z)
    if za.z == 0:
        raise DomainError("BJ_mu is singular at z = 0")
    w = _bessel_argument(za)
    rw = w.z.real
    aw2 = w.modulus ** 2
    root = math.sqrt(za.modulus)
    if m == 0.25:
        return complex(math.cos(2 * rw) / root)
    if m == 0.75:
        return complex(((1 - 1 / aw2) * math.cos(2 * rw) - 2 * rw / aw2 * math.sin(2 * rw)) / root)
    raise UnsupportedIndex(f"no closed form for mu = {m}")
