"""Exception hierarchy shared by the evaluation and verification layers."""


class BesselError(Exception):
    """Base class for every numerical failure raised by this package."""


class PoleError(BesselError):
    pass


class DomainError(BesselError):
    pass


class NonConvergence(BesselError):
    pass


class SectorError(BesselError):
    pass


class AccuracyError(BesselError):
    pass


class UnsupportedIndex(BesselError):
    pass


class SubdivisionLimit(BesselError):
    pass


class TailBoundExceeded(BesselError):
    pass


class ExtrapolationDivergence(BesselError):
    pass


class InnerFailure(BesselError):
    """An inner radial integral failed; ``phi`` records the outer node."""

    def __init__(self, phi, cause):
        super().__init__(f"inner integral failed at phi={phi!r}: {cause}")
        self.phi = phi
        self.cause = cause


class PreconditionError(BesselError):
    """Parameters fall outside the validity range of an identity."""


class SectorPreconditionError(SectorError, PreconditionError):
    """A verifier parameter lies outside the sector where its identity holds."""
