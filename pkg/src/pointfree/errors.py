"""Exception hierarchy.

Errors fall in three families that the CLI maps onto exit codes:
resource exhaustion (fuel, depth, enumeration bounds), malformed input,
and plain precondition violations.
"""

from __future__ import annotations


class PointfreeError(Exception):
    """Base class for every error raised by this package."""


# -- precondition violations -------------------------------------------------

class NonEmptyRequired(PointfreeError, ValueError):
    pass


class AtomNotInBase(PointfreeError, KeyError):
    pass


class NotSingleValued(PointfreeError):
    def __init__(self, seq, values):
        super().__init__(f"fiber at {seq!r} has {len(values)} values: {sorted(values)}")
        self.seq = seq
        self.values = frozenset(values)


class NotCoverable(PointfreeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IncompatiblePositivity(PointfreeError):
    def __init__(self, law, witness):
        super().__init__(f"supplied positivity violates {law}: {witness!r}")
        self.law = law
        self.witness = witness


# -- malformed input ---------------------------------------------------------

class MalformedInput(PointfreeError):
    """Input that does not denote a well-formed object."""


class ParseError(MalformedInput):
    def __init__(self, message, line=None, source=None):
        loc = ""
        if source is not None:
            loc += f"{source}:"
        if line is not None:
            loc += f"{line}:"
        super().__init__(f"{loc} {message}" if loc else message)
        self.line = line
        self.source = source


class MalformedTree(MalformedInput):
    pass


class ConcreteSpaceInvalid(MalformedInput):
    def __init__(self, condition, witness):
        super().__init__(f"concrete space violates {condition}: {witness!r}")
        self.condition = condition
        self.witness = witness


class InvalidSpread(MalformedInput):
    pass


class InvalidInterval(MalformedInput, ValueError):
    pass


# -- resource exhaustion -----------------------------------------------------

class ResourceExhausted(PointfreeError):
    """A bounded search ran out of budget before reaching a verdict."""


class FuelExhausted(ResourceExhausted):
    pass


class DepthExhausted(ResourceExhausted):
    pass


class BaseTooLarge(ResourceExhausted):
    pass


class EnumerationTooLarge(ResourceExhausted):
    pass
