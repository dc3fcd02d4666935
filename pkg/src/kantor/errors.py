"""Exception hierarchy.

Every error carries the offending objects in ``witness`` so that reports can
print them verbatim. Flats and subsets are stored as integer bitmasks.
"""


class MatroidError(Exception):
    """Base class for all library errors."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(MatroidError, ValueError):
    """Input does not describe a matroid."""


class EmptyFamily(ValidationError):
    pass


class NotEquicardinal(ValidationError):
    pass


class ExchangeAxiomViolated(ValidationError):
    pass


class CircuitAxiomViolated(ValidationError):
    pass


class F1Violated(ValidationError):
    pass


class F2PrimeViolated(ValidationError):
    pass


class RankLabelMismatch(ValidationError):
    """Declared flat ranks disagree with the heights in the flat lattice."""


class SizeCapExceeded(ValidationError):
    pass


class NotAFlat(MatroidError, ValueError):
    pass


class PreconditionViolated(MatroidError, ValueError):
    pass


class RankTooSmall(PreconditionViolated):
    pass


class WrongRank(PreconditionViolated):
    pass


class WrongCorank(PreconditionViolated):
    pass


class HypothesisViolated(PreconditionViolated):
    pass


class NotAModularCut(MatroidError, ValueError):
    pass


class NotHypermodular(PreconditionViolated):
    pass


class VamosFound(MatroidError, RuntimeError):
    """A Vamos line arrangement turned up where none can exist."""


class NonTermination(MatroidError, RuntimeError):
    """The modular defect failed to drop after an extension step."""


class BudgetExceeded(MatroidError, RuntimeError):
    pass


class UnknownCatalogEntry(MatroidError, KeyError):
    pass


class UnsupportedParam(MatroidError, ValueError):
    pass


class FormatError(MatroidError, ValueError):
    """Malformed matroid file; ``line`` is 1-based."""

    def __init__(self, message, line, witness=None):
        super().__init__(f"line {line}: {message}", witness=witness)
        self.line = line
