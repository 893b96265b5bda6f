"""Exception hierarchy shared by every veerkit module."""


class VeerkitError(Exception):
    """Base class for all errors raised by veerkit."""


class SchemaError(VeerkitError):
    """Malformed explicit triangulation document."""


class GluingError(VeerkitError):
    """Face gluings are not a fixed-point-free involution."""


class NoCoorientation(VeerkitError):
    """Top/bottom face labels cannot be propagated consistently."""


class TautnessError(VeerkitError):
    """Angle sums or pi-adjacency around an edge are wrong."""


class VeeringError(VeerkitError):
    """Some edge sees both left and right tetrahedra."""


class SignatureError(VeerkitError):
    """An isomorphism signature or angle string cannot be decoded."""


class StructureError(VeerkitError):
    """Boundary combinatorics are inconsistent (indicates a bug upstream)."""


class ConventionError(VeerkitError):
    """Two independently computed conventions disagree."""


class NotACycle(VeerkitError):
    """A face-crossing vector does not close up."""


class NotCarried(VeerkitError):
    """A weight vector is negative or violates a branch equation."""


class NotFlippable(VeerkitError):
    """A bottom face of the requested tetrahedron has weight zero."""


class Flippable(VeerkitError):
    """The surface still has a large branch, so no loop can be extracted."""


class DimensionGuard(VeerkitError):
    """Ambient dimension exceeds the configured dualisation cap."""


class DimensionMismatch(VeerkitError):
    """Two cones or a cone and a vector live in different dimensions."""


class NotAdjacentAtVertex(VeerkitError):
    """The two regions do not meet at a common interior vertex."""


class SameOrientation(VeerkitError):
    """The two regions have boundary intervals of the same orientation."""


class NotSymmetric(VeerkitError):
    """Tree or family is not invariant under the declared rotation."""


class OddFamily(VeerkitError):
    """The signed point count of a family is nonzero."""


class SizeGuard(VeerkitError):
    """Instance is too large for exhaustive search."""
