"""Exception hierarchy shared by every module of the package."""


class ZkContactError(Exception):
    """Base class for all package errors."""


class ModulusError(ZkContactError, ValueError):
    """Bad modulus: not prime, equal to 2, above the cap, or mismatched."""


class ComplexError(ZkContactError):
    """A chain complex failed validation or an engine consistency check."""


class StabilizationError(ComplexError):
    """Equivariant homology changed between two resolution depths."""


class ProfileError(ZkContactError, ValueError):
    """A Hamiltonian profile or its parameters are geometrically invalid."""


class DegeneracyError(ZkContactError):
    """An orbit family sits exactly on a boundary case (non-regular input)."""


class CriticalValueError(DegeneracyError):
    """The window endpoint coincides with the action of an orbit."""


class LayoutError(ZkContactError):
    """Orbits in the window do not form an origin-plus-blocks layout."""


class NonFreeActionError(LayoutError):
    """A block multiplicity is divisible by k, so the cyclic action is not free."""


class TheoremMismatch(ZkContactError):
    """Pipeline homology disagrees with the closed-form prediction."""


class CertificateError(TheoremMismatch):
    """A non-squeezing certificate could not be validated."""


class LadderCounterexample(ZkContactError):
    """A commuting ladder with unit a_0 and a non-unit vertical map."""

    def __init__(self, message: str, dump: str):
        super().__init__(f"{message}\n{dump}")
        self.dump = dump
