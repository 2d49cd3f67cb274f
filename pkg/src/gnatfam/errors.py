"""Exception types shared across the package."""


class GnatfamError(Exception):
    """Base class for all domain errors raised by this package."""


class InputError(GnatfamError):
    """Malformed user input: files, indices, labels, flags."""


class NonFaithful(GnatfamError):
    """The presented generators collapse: the representation of the
    presented abstract group is not faithful."""


class GroupTooLarge(GnatfamError):
    """Group closure exceeded the configured element cap."""


class DimensionUnsupported(GnatfamError):
    """Automatic resolution requested outside dimension 2."""


class NotGWeil(GnatfamError):
    """A divisor violates the required fractional parts."""


class NotIntegral(GnatfamError):
    """An integral divisor was required but fractional coefficients were given."""


class CatalogTooLarge(GnatfamError):
    """Materialization refused: the family catalog exceeds the cap."""
