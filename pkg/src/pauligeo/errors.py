"""Exception types raised across the package."""


class PauliGeoError(Exception):
    """Base class for every error raised by pauligeo."""


class ParseError(PauliGeoError, ValueError):
    pass


class FormatError(PauliGeoError, ValueError):
    pass


class DimensionError(PauliGeoError, ValueError):
    pass


class SizeError(PauliGeoError, ValueError):
    pass


class DomainError(PauliGeoError, ValueError):
    pass


class StructureError(PauliGeoError, ValueError):
    pass


class InputError(PauliGeoError, ValueError):
    pass


class PatternError(PauliGeoError, ValueError):
    pass


class ChartError(PauliGeoError, ArithmeticError):
    """The factorization coordinates left their chart (coordinate singularity)."""


class NotAStateError(PauliGeoError, ValueError):
    """A matrix failed density-matrix validation; ``spectrum`` holds its eigenvalues."""

    def __init__(self, message, spectrum=None):
        super().__init__(message)
        self.spectrum = spectrum
