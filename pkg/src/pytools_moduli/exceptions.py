

class ModuliError(Exception):
    """Base class for all domain errors raised by this package."""
    pass


class LabelError(ModuliError, ValueError):
    """Raised when a label set, partition or label map is malformed."""
    pass


class UnstableTreeError(ModuliError, ValueError):
    """Raised when a tree has a vertex of valence below 3 or is not a tree."""
    pass


class InvolutionError(ModuliError, ValueError):
    """Raised when the involution of a real tree is inconsistent."""
    pass


class ArityError(ModuliError, ValueError):
    """Raised when the arities of composed objects do not match."""
    pass


class SlotError(ModuliError, IndexError):
    """Raised when a composition slot is out of range."""
    pass


class FlavorMismatchError(ModuliError, TypeError):
    """Raised when two strata sums of incompatible flavors are combined."""
    pass


class ColorMismatchError(FlavorMismatchError):
    """Raised when the input color of a slot differs from the output color."""
    pass


class UniverseMismatchError(ModuliError, ValueError):
    """Raised when ring elements from different presentations are combined."""
    pass


class DegreeBoundError(ModuliError, ValueError):
    """Raised when a computation exceeds the configured degree bound."""
    pass


class CompletionTimeoutError(ModuliError):
    """Raised when the completion lock of a quotient ring is not acquired in time."""
    pass


class ConfigurationError(ModuliError, ValueError):
    """Raised when an environment setting cannot be interpreted."""
    pass


class OutOfScopeError(ModuliError):
    """Raised for computations this toolkit deliberately does not perform."""
    pass


class ExpressionSyntaxError(ModuliError, ValueError):
    """Exception raised when a ring expression or tree document cannot be parsed."""

    def __init__(self, mesg, line=1, column=1):
        self.mesg = mesg
        self.line = line
        self.column = column

    def __repr__(self):
        return "{}(line {}, column {})".format(self.mesg, self.line, self.column)

    def __str__(self):
        return "line {}, column {}: {}".format(self.line, self.column, self.mesg)


class UnknownGeneratorError(ExpressionSyntaxError):
    """Raised when a generator token is not part of the presentation."""
    pass
