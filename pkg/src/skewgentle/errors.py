"""Exception types shared across the package."""


class SkewGentleError(Exception):
    """Base class for all errors raised by this package."""


class SurfaceError(SkewGentleError):
    """Malformed surface data: schema, ids, or invariant violations."""


class NotDissection(SurfaceError):
    """The arc system does not cut the surface into one-segment polygons."""


class CurveError(SkewGentleError):
    """Malformed or unusable curve word."""


class AlgebraError(SkewGentleError):
    """Quiver/relation data violates a precondition."""


class ComplexError(SkewGentleError):
    """Invalid complex operation (d^2 != 0, bad windows, non-chain maps)."""
