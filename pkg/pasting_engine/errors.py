"""Exception hierarchy for the pasting engine.

Validation problems are reported as data (see ``types.ValidationReport``);
the exceptions here are reserved for misuse of an operation.
"""
from typing import Optional, Tuple


class PastingEngineError(ValueError):
    """Base class for all engine errors."""


class GraphError(PastingEngineError):
    """A graph operation received an unusable graph."""


class UnvalidatedGraphError(GraphError):
    """The operation requires a graph that passes validate_anchored."""


class InterfaceMismatchError(GraphError):
    """Codomain of the lower graph differs from the domain of the upper one."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class CollapseError(GraphError):
    """The associativity graph to collapse is not a factor of the graph."""


class BracketingError(PastingEngineError):
    """Invalid bracketing, address or move."""


class BracketMismatchError(BracketingError):
    """Bracketed interfaces have the same edges but different trees."""

    def __init__(self, message: str, address: Optional[str] = None):
        super().__init__(message)
        self.address = address


class PresentationError(PastingEngineError):
    """A face order does not present the graph."""


class EnumerationLimitError(PastingEngineError):
    """Exhaustive enumeration refused because the input is too large."""


class ExtensionError(PastingEngineError):
    """A composition scheme extension could not be built or does not match."""


class ModelError(PastingEngineError):
    """Incomposable or malformed cells in a bicategory model."""


class ExtendabilityError(ModelError):
    """Paired edges of an associativity graph carry different 1-cells."""

    def __init__(self, message: str, pair: Tuple[str, str]):
        super().__init__(message)
        self.pair = pair


class StrategyInapplicableError(PastingEngineError):
    """The requested certificate strategy does not apply to this diagram."""


class PasteSyntaxError(PastingEngineError):
    """Lexical or syntactic error in a .paste document."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.detail = message


class PasteSemanticError(PasteSyntaxError):
    """Undeclared names or inconsistent declarations in a parsed document."""


class AssignmentError(PastingEngineError):
    """A model assignment does not fit the diagram it is applied to."""
