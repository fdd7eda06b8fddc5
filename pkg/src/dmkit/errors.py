"""Exception types shared across the package."""

from __future__ import annotations


class DmkitError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(DmkitError):
    """Malformed serialized input (JSON or compact text)."""


class UnknownElementError(DmkitError):
    """An element name that is not part of the ground set."""


class UnknownNameError(DmkitError):
    """A catalog name that does not match any named construction."""


class ImproperSystemError(DmkitError):
    """Operation requires a proper set system (nonempty feasible family)."""


class InvalidMinorError(DmkitError):
    """Minor arguments overlap or admit no witnessing feasible set."""


class CapacityError(DmkitError):
    """Input exceeds a configured size cap."""


class NotAMatroidError(DmkitError):
    """Feasible family is not the basis family of a matroid."""


class GroundSetMismatchError(DmkitError):
    """Two structures that must share a ground set do not."""


class NotAQuotientError(DmkitError):
    """Matroid pair fails the quotient test."""


class NotADeltaMatroidError(DmkitError):
    """Operation requires the symmetric exchange axiom to hold."""


class InvalidIndexSetError(DmkitError):
    """Higgs index set is out of range, empty, or its complement has a
    consecutive pair."""

    def __init__(self, message: str, offending_pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.offending_pair = offending_pair


class AmbientHypothesisError(DmkitError):
    """Input violates the ambient hypothesis of a classifier, as opposed
    to failing its excluded-minor scan."""


class InvalidRegionError(DmkitError):
    """Lattice-path region violates its defining constraints."""
