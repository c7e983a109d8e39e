"""Exception hierarchy for the supergrassmannian engine.

Domain operations raise these. Verification sweeps catch them per case and
record them in the report instead of aborting the run.
"""


class SupergrassError(Exception):
    """Base class for every engine error."""


class ConfigurationError(SupergrassError, ValueError):
    """Inconsistent engine configuration (degree length, truncation, flags)."""


class TableMismatch(SupergrassError, ValueError):
    """Operands live over different generator tables or truncation orders."""


class DegreeMismatch(SupergrassError, ValueError):
    """A substitution image or T-point entry has the wrong degree."""


class ZeroBody(SupergrassError, ZeroDivisionError):
    """An element with vanishing body was inverted."""


class SingularBody(SupergrassError, ZeroDivisionError):
    """The body matrix of a supermatrix is singular over the coefficient field."""


class InvalidTruncation(SupergrassError, ValueError):
    """Truncation to an order above the series' own order."""


class InvalidShape(SupergrassError, ValueError):
    """k⃗/m⃗ vectors or a k⃗-index that do not describe a valid grassmannian."""


class ShapeMismatch(SupergrassError, ValueError):
    """Matrix block dimensions that do not line up."""
