"""Exception types shared across the package."""


class ModEquivError(Exception):
    """Base class for all package errors."""


class InvalidModulus(ModEquivError):
    """Field modulus is not a prime in the supported range."""


class ModulusMismatch(ModEquivError):
    """Operands live over different prime fields."""


class DimensionMismatch(ModEquivError):
    """Shapes are not conformable for the requested operation."""


class NotSquare(ModEquivError):
    """Operation requires a square matrix."""


class NotInvertible(ModEquivError):
    """Inverse requested for a singular matrix."""


class TableInconsistent(ModEquivError):
    """Multiplication table fails the unit or associativity checks."""


class UnsupportedAlgebraKind(ModEquivError):
    """Operation is not defined for this algebra kind."""


class AlgebraMismatch(ModEquivError):
    """Modules or maps belong to different algebras."""


class RelationViolated(ModEquivError):
    """Action matrices do not satisfy a defining relation."""

    def __init__(self, message, relation=None):
        super().__init__(message)
        self.relation = relation


class ParameterOutOfDomain(ModEquivError):
    """Family parameter outside its admissible domain."""


class BudgetExceeded(ModEquivError):
    """Enumeration space larger than the configured budget."""


class UndecidedError(ModEquivError):
    """A verdict needed by the caller came back undecided."""


class UnknownFixture(ModEquivError):
    """No fixture registered under the requested name."""


class SchemaError(ModEquivError):
    """Input file does not match the documented schema."""
