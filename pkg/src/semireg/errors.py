"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Model parameters violate a structural constraint (divisibility, range)."""


class RewireError(RuntimeError):
    """The double-edge swap loop hit its iteration cap."""


class NoRootError(ValueError):
    """No admissible real root was found in the requested range."""


class InadmissibleSystemError(ValueError):
    """A generating-function system cannot be solved by a forward sweep."""
