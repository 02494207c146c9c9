"""
Simon's congruence and piecewise testability.

Two words are ∼k-equivalent when they have the same subwords of length at
most k. A language is k-piecewise testable (k-PT) when it is a union of ∼k
classes and piecewise testable (PT) when it is k-PT for some k.

Example usage:
    from piecewise_automata import Nfa, is_pt, min_k

    report = is_pt(automaton)
    if report.holds:
        print(min_k(automaton))
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from .automaton import (
    Nfa,
    State,
    Symbol,
    Word,
    depth,
    determinize,
    minimize,
    require_complete_dfa,
)
from .classify import is_confluent, is_partially_ordered, is_ums
from .constants import DEFAULT_MAX_MACROSTATES
from .deciders import require_unary, trace_back, unary_eventual_behavior, unary_power_image
from .exceptions import BudgetExceededError, InvariantViolationError, NotPartiallyOrderedError

logger = logging.getLogger(__name__)


def is_subword(u: Iterable[Symbol], w: Iterable[Symbol]) -> bool:
    """True iff u can be obtained from w by deleting letters."""
    remaining = iter(w)
    return all(symbol in remaining for symbol in u)


@dataclass(frozen=True)
class SubwordSet:
    """The subwords of length at most k of some word, in canonical order."""
    k: int
    words: Tuple[Word, ...]

    @classmethod
    def of(cls, k: int, words: Iterable[Word]) -> "SubwordSet":
        return cls(k, tuple(sorted(set(words), key=lambda u: (len(u), u))))

    def __contains__(self, word: object) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def maximal(self) -> Tuple[Word, ...]:
        """Antichain of members that are not proper subwords of another member."""
        return tuple(
            u for u in self.words
            if not any(len(v) > len(u) and is_subword(u, v) for v in self.words)
        )


def subwords_k(w: Iterable[Symbol], k: int) -> SubwordSet:
    """Every subword of w of length at most k."""
    found = {()}
    for symbol in w:
        found |= {u + (symbol,) for u in found if len(u) < k}
    return SubwordSet.of(k, found)


def sim_k(u: Iterable[Symbol], v: Iterable[Symbol], k: int) -> bool:
    """Simon's congruence u ∼k v."""
    return subwords_k(u, k).words == subwords_k(v, k).words


class KAbstraction:
    """
    Deterministic automaton of the ∼k classes over an alphabet.

    A state is the downward-closed set sub_k(w) of the words w leading to it.
    Reading a maps S to S ∪ {ua : u ∈ S, |u| < k}.
    """

    def __init__(self, alphabet: Iterable[Symbol], k: int):
        self.alphabet = tuple(alphabet)
        self.k = k
        self.initial: FrozenSet[Word] = frozenset({()})
        self._cache: Dict[Tuple[FrozenSet[Word], Symbol], FrozenSet[Word]] = {}

    def step(self, state: FrozenSet[Word], symbol: Symbol) -> FrozenSet[Word]:
        key = (state, symbol)
        if key not in self._cache:
            self._cache[key] = state | frozenset(u + (symbol,) for u in state if len(u) < self.k)
        return self._cache[key]

    def run(self, word: Iterable[Symbol]) -> FrozenSet[Word]:
        state = self.initial
        for symbol in word:
            state = self.step(state, symbol)
        return state

    def subword_set(self, state: FrozenSet[Word]) -> SubwordSet:
        return SubwordSet.of(self.k, state)

    def to_nfa(self, max_states: int = DEFAULT_MAX_MACROSTATES) -> Nfa:
        """Materialize the reachable classes as a complete DFA (no accepting states)."""
        index = {self.initial: 0}
        queue = deque([self.initial])
        transitions = []
        while queue:
            state = queue.popleft()
            for symbol in self.alphabet:
                image = self.step(state, symbol)
                if image not in index:
                    if len(index) >= max_states:
                        raise BudgetExceededError("k-abstraction", max_states)
                    index[image] = len(index)
                    queue.append(image)
                transitions.append((f"K{index[state]}", symbol, f"K{index[image]}"))
        states = [f"K{i}" for i in range(len(index))]
        return Nfa(states, self.alphabet, transitions, ["K0"], [], name=f"sim_{self.k}")


@dataclass(frozen=True)
class KptWitness:
    """
    Refutation of k-piecewise testability: u ∼k v, u accepted, v rejected.
    """
    u: Word
    v: Word
    k: int

    @classmethod
    def build(cls, a: Nfa, first: Word, second: Word, k: int) -> "KptWitness":
        """
        Order the pair so the accepted word comes first and check it.

        Raises:
            InvariantViolationError: If the words are not ∼k-equivalent or
                have the same acceptance
        """
        first_accepted = a.accepts(first)
        if first_accepted == a.accepts(second):
            raise InvariantViolationError(f"witness words {first} and {second} agree on acceptance")
        witness = cls(first, second, k) if first_accepted else cls(second, first, k)
        if not sim_k(witness.u, witness.v, k):
            raise InvariantViolationError(f"witness words {first} and {second} are not ∼{k}-equivalent")
        return witness

    def revalidate(self, a: Nfa) -> bool:
        return sim_k(self.u, self.v, self.k) and a.accepts(self.u) and not a.accepts(self.v)

    def to_dict(self) -> Dict[str, object]:
        return {"k": self.k, "accepted": list(self.u), "rejected": list(self.v)}


@dataclass(frozen=True)
class KptDecision:
    """Outcome of a k-PT check; a witness pair is present exactly when it fails."""
    holds: bool
    witness: Optional[KptWitness] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise InvariantViolationError("a KptDecision carries a witness exactly when it fails")

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class PtReport:
    """Result of the PT check together with the minimal DFA it was decided on."""
    holds: bool
    minimal_dfa: Nfa
    partially_ordered: bool
    confluent: bool
    ums: Optional[bool]

    def __bool__(self) -> bool:
        return self.holds


def is_pt(a: Nfa, max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> PtReport:
    """
    Decide piecewise testability on the minimal DFA.

    The language is PT iff its minimal DFA is partially ordered and has the
    UMS property; confluence is computed as well and must agree.

    Raises:
        BudgetExceededError: If determinization exceeds the budget
    """
    d = minimize(determinize(a, max_macrostates))
    po = is_partially_ordered(d)
    confluent = is_confluent(d)
    ums = is_ums(d) if po else None
    if po and ums != confluent:
        raise InvariantViolationError(f"UMS={ums} and confluence={confluent} disagree on a minimal DFA")
    logger.info(f"PT check on {len(d)}-state minimal DFA: po={po} ums={ums}")
    return PtReport(holds=po and bool(ums), minimal_dfa=d, partially_ordered=po,
                    confluent=confluent, ums=ums)


def kpt_on_dfa(d: Nfa, k: int, reference: Optional[Nfa] = None,
               max_states: int = DEFAULT_MAX_MACROSTATES) -> KptDecision:
    """
    k-PT check on a complete DFA via the product with the ∼k abstraction.

    Fails as soon as one ∼k class is paired with both an accepting and a
    rejecting DFA state; the witness words are the first words reaching the
    two pairs.

    Args:
        d: Complete DFA
        k: Subword length bound
        reference: Automaton the witness is checked against (d when None)
        max_states: Budget on explored pairs
    """
    require_complete_dfa(d, "k-PT check")
    abstraction = KAbstraction(d.alphabet, k)
    (q0,) = d.initial
    start = (abstraction.initial, q0)
    parent: Dict[Tuple[FrozenSet[Word], State], Optional[Tuple[Tuple[FrozenSet[Word], State], Symbol]]] = {
        start: None}
    first_seen: Dict[FrozenSet[Word], Dict[bool, Tuple[FrozenSet[Word], State]]] = {}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        subwords, q = node
        by_acceptance = first_seen.setdefault(subwords, {})
        by_acceptance.setdefault(q in d.accepting, node)
        if len(by_acceptance) == 2:
            u = trace_back(parent, by_acceptance[True])
            v = trace_back(parent, by_acceptance[False])
            return KptDecision(False, KptWitness.build(reference if reference is not None else d, u, v, k))
        for symbol in d.alphabet:
            image = (abstraction.step(subwords, symbol), d.target(q, symbol))
            if image not in parent:
                if len(parent) >= max_states:
                    raise BudgetExceededError("k-PT exploration", max_states)
                parent[image] = (node, symbol)
                queue.append(image)
    logger.debug(f"{k}-PT holds; explored {len(parent)} pairs over {len(first_seen)} classes")
    return KptDecision(True)


def is_kpt(a: Nfa, k: int, max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> KptDecision:
    """
    Decide whether L(a) is a union of ∼k classes.

    Raises:
        BudgetExceededError: If determinization or the exploration exceeds the budget
    """
    d = minimize(determinize(a, max_macrostates))
    return kpt_on_dfa(d, k, reference=a, max_states=max_macrostates)


def min_k(a: Nfa, max_macrostates: int = DEFAULT_MAX_MACROSTATES) -> Optional[int]:
    """
    Smallest k for which L(a) is k-PT, or None if L(a) is not PT.

    The search runs upward from 0 to the depth of the minimal DFA.
    """
    report = is_pt(a, max_macrostates)
    if not report.holds:
        return None
    d = report.minimal_dfa
    for k in range(depth(d) + 1):
        if kpt_on_dfa(d, k, max_states=max_macrostates).holds:
            return k
    raise InvariantViolationError(f"PT language is not {depth(d)}-PT")


def _unary_witness(a: Nfa, symbol: Symbol, k: int, i: int, j: int) -> KptWitness:
    return KptWitness.build(a, (symbol,) * i, (symbol,) * j, k)


def unary_kpt_dfa(d: Nfa, k: int) -> KptDecision:
    """
    k-PT for a unary complete DFA with n states.

    Holds iff a^k, a^(k+1), ..., a^(k+n) are all accepted or all rejected.
    """
    symbol = require_unary(d)
    require_complete_dfa(d, "unary DFA k-PT check")
    (state,) = unary_power_image(d, k)
    reference = state in d.accepting
    for offset in range(1, len(d) + 1):
        state = d.target(state, symbol)
        if (state in d.accepting) != reference:
            return KptDecision(False, _unary_witness(d, symbol, k, k, k + offset))
    return KptDecision(True)


def _stable_from(acceptance: Tuple[bool, ...]) -> int:
    """Least index from which a period-1 acceptance profile is constant."""
    index = len(acceptance) - 1
    while index > 0 and acceptance[index - 1] == acceptance[-1]:
        index -= 1
    return index


def unary_kpt_ponfa(a: Nfa, k: int) -> KptDecision:
    """
    k-PT for a unary partially ordered NFA.

    Acceptance of a^i becomes constant from some d ≤ n on (a^d a* ⊆ L for
    infinite L, a^d a* disjoint from L for finite L). Not k-PT iff some
    k < l ≤ d has a^l accepted differently from a^k.
    """
    symbol = require_unary(a)
    if not is_partially_ordered(a):
        raise NotPartiallyOrderedError("unary poNFA check needs a partially ordered automaton")
    behavior = unary_eventual_behavior(a)
    if behavior.period != 1:
        raise InvariantViolationError(f"unary poNFA has macro-state period {behavior.period}")
    stable = _stable_from(behavior.acceptance)
    reference = behavior.accepts_power(k)
    for ell in range(k + 1, stable + 1):
        if behavior.accepts_power(ell) != reference:
            return KptDecision(False, _unary_witness(a, symbol, k, k, ell))
    return KptDecision(True)


def unary_kpt_nfa(a: Nfa, k: int) -> KptDecision:
    """
    k-PT for any unary NFA.

    Acceptance of a^l for l at least the preperiod repeats with the period, so
    checking one full cycle past max(k, preperiod) decides whether every a^l
    with l ≥ k agrees with a^k. Acceptance of a^k itself comes from a matrix
    power.
    """
    symbol = require_unary(a)
    behavior = unary_eventual_behavior(a)
    reference = bool(unary_power_image(a, k) & a.accepting)
    limit = max(k, behavior.preperiod) + behavior.period
    for ell in range(k + 1, limit + 1):
        if behavior.accepts_power(ell) != reference:
            return KptDecision(False, _unary_witness(a, symbol, k, k, ell))
    return KptDecision(True)


def is_unary_pt(a: Nfa) -> bool:
    """A unary language is PT iff acceptance is constant on the cycle."""
    return len(set(unary_eventual_behavior(a).cycle)) == 1
