"""
Universality, inclusion and equivalence with shortest counterexamples.

Macro-states are explored breadth-first with symbols in alphabet order, so
witnesses are shortest and, among those, first in length-lexicographic order.
The unary helpers use boolean matrices for large powers.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .automaton import MacroState, Nfa, Symbol, Word, require_same_alphabet
from .constants import DEFAULT_MAX_MACROSTATES, DEFAULT_UNARY_ITERATIONS
from .exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    InvariantViolationError,
    NotUnaryError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decision:
    """
    Outcome of a decision procedure.

    A counterexample word is present exactly when the property fails.
    """
    holds: bool
    witness: Optional[Word] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise InvariantViolationError("a Decision carries a witness exactly when it fails")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "witness": None if self.witness is None else list(self.witness),
        }


def trace_back(parent: Dict[Hashable, Optional[Tuple[Hashable, Symbol]]], node: Hashable) -> Word:
    word: List[Symbol] = []
    while parent[node] is not None:
        node, symbol = parent[node]
        word.append(symbol)
    return tuple(reversed(word))


def _shortest(words: Iterable[Word], alphabet: Sequence[Symbol]) -> Word:
    order = {s: i for i, s in enumerate(alphabet)}
    return min(words, key=lambda w: (len(w), [order[s] for s in w]))


def universal(a: Nfa, max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> Decision:
    """
    Decide L(a) = Σ*.

    Returns:
        Decision whose witness is a shortest rejected word

    Raises:
        BudgetExceededError: If more than max_macrostates macro-states are explored
    """
    start = a.initial
    parent: Dict[MacroState, Optional[Tuple[MacroState, Symbol]]] = {start: None}
    queue = deque([start])
    while queue:
        macro = queue.popleft()
        if not macro & a.accepting:
            witness = trace_back(parent, macro)
            if a.accepts(witness):
                raise InvariantViolationError(f"universality witness {witness} is accepted")
            logger.debug(f"Not universal after {len(parent)} macro-states")
            return Decision(False, witness)
        for symbol in a.alphabet:
            image = a.step(macro, symbol)
            if image not in parent:
                if len(parent) >= max_macrostates:
                    raise BudgetExceededError("universality check", max_macrostates)
                parent[image] = (macro, symbol)
                queue.append(image)
    logger.debug(f"Universal; explored {len(parent)} macro-states")
    return Decision(True)


def includes(a: Nfa, b: Nfa, max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> Decision:
    """
    Decide L(a) ⊆ L(b).

    Explores pairs of a state of a and a macro-state of b, i.e. the product of
    a with the on-the-fly determinized complement of b.

    Raises:
        AlphabetMismatchError: If the alphabets differ (pad them first)
        BudgetExceededError: If more than max_macrostates pairs are explored
    """
    require_same_alphabet(a, b)
    parent: Dict[Tuple[str, MacroState], Optional[Tuple[Tuple[str, MacroState], Symbol]]] = {}
    queue = deque()
    for p in a.ordered(a.initial):
        parent[(p, b.initial)] = None
        queue.append((p, b.initial))
    while queue:
        p, macro = queue.popleft()
        if p in a.accepting and not macro & b.accepting:
            witness = trace_back(parent, (p, macro))
            if not a.accepts(witness) or b.accepts(witness):
                raise InvariantViolationError(f"inclusion witness {witness} does not separate")
            return Decision(False, witness)
        for symbol in a.alphabet:
            image = b.step(macro, symbol)
            for p2 in a.ordered(a.successors(p, symbol)):
                if (p2, image) not in parent:
                    if len(parent) >= max_macrostates:
                        raise BudgetExceededError("inclusion check", max_macrostates)
                    parent[(p2, image)] = ((p, macro), symbol)
                    queue.append((p2, image))
    return Decision(True)


def equivalent(a: Nfa, b: Nfa, max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> Decision:
    """
    Decide L(a) = L(b) as two inclusions.

    The witness is the shorter of the two inclusion witnesses.
    """
    forward = includes(a, b, max_macrostates)
    backward = includes(b, a, max_macrostates)
    witnesses = [d.witness for d in (forward, backward) if d.witness is not None]
    if not witnesses:
        return Decision(True)
    return Decision(False, _shortest(witnesses, a.alphabet))


def intersection_witness(automata: Sequence[Nfa],
                         max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> Optional[Word]:
    """
    Shortest word accepted by every automaton, or None if the intersection is empty.

    Raises:
        AlphabetMismatchError: If the automata disagree on the alphabet
    """
    if not automata:
        raise ValueError("intersection_witness needs at least one automaton")
    for other in automata[1:]:
        require_same_alphabet(automata[0], other)
    alphabet = automata[0].alphabet
    start = tuple(a.initial for a in automata)
    parent: Dict[Tuple[MacroState, ...], Optional[Tuple[Tuple[MacroState, ...], Symbol]]] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if all(macro & a.accepting for macro, a in zip(node, automata)):
            return trace_back(parent, node)
        for symbol in alphabet:
            image = tuple(a.step(macro, symbol) for macro, a in zip(node, automata))
            if not all(image):
                continue
            if image not in parent:
                if len(parent) >= max_macrostates:
                    raise BudgetExceededError("intersection search", max_macrostates)
                parent[image] = (node, symbol)
                queue.append(image)
    return None


def require_unary(a: Nfa) -> Symbol:
    """Return the single symbol of a unary automaton."""
    if not a.is_unary:
        raise NotUnaryError(f"Expected a unary alphabet, got {list(a.alphabet)}")
    return a.alphabet[0]


class BoolMatrix:
    """Square 0/1 matrix indexed by the states of a unary automaton."""

    def __init__(self, data: np.ndarray):
        self.data = np.asarray(data, dtype=bool)

    @classmethod
    def from_nfa(cls, a: Nfa) -> "BoolMatrix":
        """Entry (p, q) is set iff q ∈ δ(p, a) for the single symbol."""
        require_unary(a)
        data = np.zeros((len(a), len(a)), dtype=bool)
        for p, _, q in a.transitions:
            data[a.index(p), a.index(q)] = True
        return cls(data)

    def __matmul__(self, other: "BoolMatrix") -> "BoolMatrix":
        return BoolMatrix(_bool_product(self.data, other.data))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BoolMatrix) and np.array_equal(self.data, other.data)

    def power(self, k: int) -> "BoolMatrix":
        """M^k by square-and-multiply."""
        result = np.eye(len(self.data), dtype=bool)
        base = self.data
        while k:
            if k & 1:
                result = _bool_product(result, base)
            base = _bool_product(base, base)
            k >>= 1
        return BoolMatrix(result)


def _bool_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return (left.astype(np.int64) @ right.astype(np.int64)) > 0


def unary_power_image(a: Nfa, k: int) -> MacroState:
    """
    Image of the initial states under a^k, for arbitrarily large k.

    Raises:
        NotUnaryError: If a has more than one symbol
    """
    if k < 0:
        raise ValueError(f"Exponent must be nonnegative, got {k}")
    matrix = BoolMatrix.from_nfa(a)
    vector = np.array([[q in a.initial for q in a.states]], dtype=bool)
    base = matrix.data
    while k:
        if k & 1:
            vector = _bool_product(vector, base)
        base = _bool_product(base, base)
        k >>= 1
    return frozenset(q for q, bit in zip(a.states, vector[0]) if bit)


@dataclass(frozen=True)
class EventualBehavior:
    """
    Lead-in and cycle of the macro-state sequence of a unary automaton.

    acceptance[i] tells whether a^i is accepted, for i below preperiod + period;
    beyond that acceptance repeats with the period.
    """
    preperiod: int
    period: int
    acceptance: Tuple[bool, ...]

    def accepts_power(self, k: int) -> bool:
        """Acceptance of a^k for any k."""
        if k < self.preperiod:
            return self.acceptance[k]
        return self.acceptance[self.preperiod + (k - self.preperiod) % self.period]

    @property
    def cycle(self) -> Tuple[bool, ...]:
        return self.acceptance[self.preperiod:]


def unary_macro_sequence(a: Nfa, max_iterations: int = DEFAULT_UNARY_ITERATIONS
                         ) -> Tuple[List[MacroState], int]:
    """
    Macro-states δ(I, a^i) until the first repeat.

    Returns:
        The distinct macro-states in order and the index the sequence returns to
    """
    symbol = require_unary(a)
    seen: Dict[MacroState, int] = {}
    sequence: List[MacroState] = []
    macro = a.initial
    while macro not in seen:
        if len(sequence) >= max_iterations:
            raise BudgetExceededError("unary iteration", max_iterations)
        seen[macro] = len(sequence)
        sequence.append(macro)
        macro = a.step(macro, symbol)
    return sequence, seen[macro]


def unary_eventual_behavior(a: Nfa, max_iterations: int = DEFAULT_UNARY_ITERATIONS) -> EventualBehavior:
    """
    Iterate macro-states from the initial set until the first repeat.

    Raises:
        NotUnaryError: If a has more than one symbol
    """
    sequence, start = unary_macro_sequence(a, max_iterations)
    acceptance = tuple(bool(macro & a.accepting) for macro in sequence)
    return EventualBehavior(preperiod=start, period=len(sequence) - start, acceptance=acceptance)


def unary_includes(a: Nfa, b: Nfa, max_iterations: int = DEFAULT_UNARY_ITERATIONS) -> Decision:
    """
    Unary inclusion by running both macro-state sequences in lockstep.

    The pair sequence repeats within |a|·2^|b| steps, so the scan is exact.
    """
    symbol = require_unary(a)
    if b.alphabet != a.alphabet:
        raise AlphabetMismatchError(f"Unary alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}")
    seen = set()
    pair = (a.initial, b.initial)
    length = 0
    while pair not in seen:
        if len(seen) >= max_iterations:
            raise BudgetExceededError("unary inclusion", max_iterations)
        if pair[0] & a.accepting and not pair[1] & b.accepting:
            return Decision(False, (symbol,) * length)
        seen.add(pair)
        pair = (a.step(pair[0], symbol), b.step(pair[1], symbol))
        length += 1
    return Decision(True)
