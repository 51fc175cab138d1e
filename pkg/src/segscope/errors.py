"""Exception types shared across the package."""


class SegscopeError(Exception):
    """Base class for all errors raised by this package."""


class UnknownCategoryError(SegscopeError):
    """A category name or id is not present in the category table."""


class InvalidLabelError(SegscopeError):
    """A label raster contains a value that is not a valid category id."""


class ManifestError(SegscopeError):
    """A dataset manifest failed to parse or validate."""


class WeightFormatError(SegscopeError):
    """A weight-field file is malformed (bad magic, truncated, or NaN payload)."""


class DimensionMismatchError(SegscopeError):
    """Two rasters that must share dimensions do not."""


class EmptyUnionError(SegscopeError):
    """IoU was requested for a category absent from both masks."""


class DegenerateInputError(SegscopeError):
    """A statistic was requested on input with too few points or zero variance."""


class OutOfBoundsError(SegscopeError):
    """A pixel coordinate lies outside the raster."""


class ZeroWeightSumError(SegscopeError):
    """All scoring weights relevant to a formula are zero."""


class CompositeParamError(SegscopeError):
    """Superimposition parameters violate their constraints (e.g. alpha1 <= alpha2)."""
