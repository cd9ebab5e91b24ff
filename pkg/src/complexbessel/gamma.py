"""Complex Gamma function via the Lanczos approximation (g=7, n=9).

The left half-plane is reached through the reflection formula, with
``sin(pi z)`` evaluated after reducing the real part so that integer
arguments give exact zeros.
"""
from __future__ import annotations

import cmath
import math

from .errors import PoleError

_G = 7.0
_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
POLE_TOL = 1e-12


def sinpi(z: complex) -> complex:
    """sin(pi*z) with argument reduction on the real part."""
    z = complex(z)
    x, y = z.real, z.imag
    n = round(x)
    f = x - n
    s, c = math.sin(math.pi * f), math.cos(math.pi * f)
    if n % 2:
        s, c = -s, -c
    return complex(s * math.cosh(math.pi * y), c * math.sinh(math.pi * y))


def cospi(z: complex) -> complex:
    """cos(pi*z) with argument reduction on the real part."""
    z = complex(z)
    x, y = z.real, z.imag
    n = round(x)
    f = x - n
    s, c = math.sin(math.pi * f), math.cos(math.pi * f)
    if n % 2:
        s, c = -s, -c
    return complex(c * math.cosh(math.pi * y), -s * math.sinh(math.pi * y))


def _is_nonpositive_integer(z: complex, tol: float = 0.0) -> bool:
    n = round(z.real)
    return n <= 0 and abs(z - n) <= tol


def _log_gamma_right(z: complex) -> complex:
    # valid for Re z >= 1/2
    z = z - 1.0
    x = _COEF[0]
    for k in range(1, len(_COEF)):
        x += _COEF[k] / (z + k)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma(z: complex) -> complex:
    """Gamma(z) for complex z; raises PoleError near non-positive integers."""
    z = complex(z)
    if _is_nonpositive_integer(z, POLE_TOL):
        raise PoleError(f"Gamma has a pole at z={z}")
    if z.real < 0.5:
        return math.pi / (sinpi(z) * cmath.exp(_log_gamma_right(1.0 - z)))
    return cmath.exp(_log_gamma_right(z))


def reciprocal_gamma(z: complex) -> complex:
    """1/Gamma(z), entire; exactly zero at 0, -1, -2, ..."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return sinpi(z) * cmath.exp(_log_gamma_right(1.0 - z)) / math.pi
    return cmath.exp(-_log_gamma_right(z))
