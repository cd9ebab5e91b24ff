"""Complex-order Bessel functions, the spherical Bessel function over C,
and numerical verification of Weber/Hardy-type integral identities."""
from .bessel import (
    BranchedArgument,
    EvalOptions,
    EvalResult,
    bessel_i,
    bessel_j,
    bessel_pair,
    bessel_y,
    hankel,
)
from .gamma import gamma, reciprocal_gamma
from .spherical import SphericalIndex, spherical_j

__all__ = [
    "BranchedArgument",
    "EvalOptions",
    "EvalResult",
    "SphericalIndex",
    "bessel_i",
    "bessel_j",
    "bessel_pair",
    "bessel_y",
    "gamma",
    "hankel",
    "reciprocal_gamma",
    "spherical_j",
]
