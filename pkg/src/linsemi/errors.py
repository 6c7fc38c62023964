"""Exception types shared across the package."""


class AlgebraError(Exception):
    """Base class for all contract violations raised by linsemi."""


class ModulusMismatch(AlgebraError):
    """Operands live over different prime fields."""


class ShapeError(AlgebraError):
    """Matrix or vector dimensions do not line up."""


class TooLarge(AlgebraError):
    """An exhaustive enumeration would exceed the configured bound."""


class NotIncluded(AlgebraError):
    """Requested an inclusion morphism for subspaces with A not inside B."""


class NotADirectSum(AlgebraError):
    """The given pair of subspaces does not decompose the ambient space."""


class NotClosed(AlgebraError):
    """A multiplication table was requested for a non-closed element set."""


class NotSingular(AlgebraError):
    """An invertible transformation appeared where a singular one is required."""


class NotInvertible(AlgebraError):
    """A singular transformation appeared where an invertible one is required."""


class NotIdempotent(AlgebraError):
    """An operation requiring an idempotent received something else."""


class NotACone(AlgebraError):
    """A component family violates the normal cone laws."""


class NotInSandwich(AlgebraError):
    """A carrier fails the membership test u = f u e."""


class NotInduced(AlgebraError):
    """A functor is not induced by any invertible transformation."""
