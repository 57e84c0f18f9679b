"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a function."""


class InvalidInputError(ValueError):
    """Inputs violate a structural invariant (shape, normalization, duplicates)."""


class UnsupportedError(ValueError):
    """A combination of options is recognised but not implemented."""


class NonUniqueEquilibriumError(DomainError):
    """The equilibrium measure is not unique in the requested regime.

    Attributes
    ----------
    description : str
        Description of the family of equilibrium measures.
    """

    def __init__(self, message, description):
        super().__init__(message)
        self.description = description
