"""
Error hierarchy for the piecewise-automata library.

Input problems subclass ValueError as well as AutomatonError; the CLI maps them
to exit code 2. Budget problems map to exit code 3.
"""


class AutomatonError(Exception):
    """Base class for every error raised by this library."""


class InvalidAutomatonError(AutomatonError, ValueError):
    """An automaton value violates its structural invariants."""


class SymbolNotInAlphabetError(AutomatonError, ValueError):
    """A word uses a symbol the automaton does not declare."""


class NotDeterministicError(AutomatonError, ValueError):
    """An operation needs a complete deterministic automaton."""


class AlphabetMismatchError(AutomatonError, ValueError):
    """Two automata were combined over different alphabets."""


class NotPartiallyOrderedError(AutomatonError, ValueError):
    """The automaton has a cycle that is not a self-loop."""


class NotUnaryError(AutomatonError, ValueError):
    """A unary-only operation got an automaton with more than one symbol."""


class NotRpoNfaError(AutomatonError, ValueError):
    """The automaton is not a self-loop deterministic poNFA."""


class EmptyLanguageError(AutomatonError, ValueError):
    """The construction needs an automaton with a nonempty language."""


class InvalidFormulaError(AutomatonError, ValueError):
    """A DNF or CNF formula violates its invariants."""


class InvalidDagError(AutomatonError, ValueError):
    """A graph passed as a DAG has a cycle, an edge out of t, or bad indices."""


class InvalidTuringMachineError(AutomatonError, ValueError):
    """A Turing machine description is malformed."""


class TmAssumptionError(AutomatonError, ValueError):
    """A Turing machine breaks the normal-form assumptions of the reduction."""


class WrongInputShapeError(AutomatonError, ValueError):
    """The automaton does not have the shape the operation was written for."""


class BudgetExceededError(AutomatonError):
    """An exploration grew beyond its configured budget."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeded the budget of {budget}")
        self.what = what
        self.budget = budget


class CapExceededError(BudgetExceededError):
    """A generated gadget would be larger than the configured cap."""


class InvariantViolationError(AutomatonError):
    """Two independent characterizations disagreed; this is a library bug."""
