"""Exception types shared across the package."""

from __future__ import annotations


class GBoxError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GBoxError):
    """Syntax error in an ontology, language, template, or GBox file."""

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        hint = ""
        if self.expected:
            hint = " (expected " + " or ".join(self.expected) + ")"
        super().__init__(f"{where}{message}{hint}")


class VariableTypeError(GBoxError):
    """A variable is used in positions that demand different types."""


class NotGroundError(GBoxError):
    """A variable occurs where only ground syntax is allowed."""


class SubstitutionError(GBoxError):
    """Base class for substitution application failures."""


class UnboundVariableError(SubstitutionError):
    """A template variable has no binding in the substitution."""


class SubstitutionTypeError(SubstitutionError):
    """A binding's value does not match the variable's inferred type."""


class InconsistentOntologyError(GBoxError):
    """An operation that requires a consistent ontology received an
    inconsistent one and was not told to proceed anyway."""


class ResourceLimitError(GBoxError):
    """The tableau ran against its node limit; neither outcome is known."""

    def __init__(self, message: str, nodes_expanded: int = 0):
        self.nodes_expanded = nodes_expanded
        super().__init__(message)


class BudgetExceededError(GBoxError):
    """An enumeration or activation search exceeded its configured budget.

    Raised instead of returning a possibly wrong negative answer.
    """


class UnsafeGeneratorError(GBoxError):
    """A generator violates the safety restriction: every head variable and
    every negative-body variable must occur in the positive body."""


class NegationNotAcknowledgedError(GBoxError):
    """Fixpoint expansion of a GBox with negation was requested without the
    flag acknowledging that the inflationary fixpoint may overshoot."""


class NegationNotSupportedError(GBoxError):
    """The operation is only defined for negation-free GBoxes."""


class UnstratifiableGBoxError(GBoxError):
    """Stratified evaluation was requested for a GBox that admits no
    stratification; carries a witness cycle through a negative edge."""

    def __init__(self, message: str, cycle=()):
        self.cycle = tuple(cycle)
        super().__init__(message)
