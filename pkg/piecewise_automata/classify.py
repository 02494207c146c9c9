"""
Structural predicates of the automata hierarchy.

poNFA, rpoNFA (self-loop deterministic poNFA), confluence, the unique maximal
state (UMS) property and ptNFA, aggregated in a ClassificationReport.
"""

import logging
from collections import deque
from dataclasses import asdict, dataclass
from typing import Any, Dict, FrozenSet, Optional, Set, Tuple

import networkx as nx

from .automaton import Nfa, State, Symbol, depth, reachability_graph
from .exceptions import InvariantViolationError, NotPartiallyOrderedError

logger = logging.getLogger(__name__)


SelfLoopAlphabet = Dict[State, FrozenSet[Symbol]]


def self_loop_alphabet(a: Nfa) -> SelfLoopAlphabet:
    """Σ(q) for every state q."""
    return {q: a.self_loops(q) for q in a.states}


def is_deterministic(a: Nfa) -> bool:
    return a.is_deterministic()


def is_complete(a: Nfa) -> bool:
    return a.is_complete()


def is_partially_ordered(a: Nfa) -> bool:
    """True iff every strongly connected component is a single state."""
    return nx.is_directed_acyclic_graph(reachability_graph(a))


def is_self_loop_deterministic(a: Nfa) -> bool:
    """True iff no state has a self-loop and an exit on the same symbol."""
    for q in a.states:
        for symbol in a.alphabet:
            successors = a.successors(q, symbol)
            if q in successors and len(successors) > 1:
                return False
    return True


def is_rponfa(a: Nfa) -> bool:
    return is_partially_ordered(a) and is_self_loop_deterministic(a)


def _rejoins(a: Nfa, s: State, t: State, letters: Tuple[Symbol, ...],
             known: Dict[Tuple[State, State], bool]) -> bool:
    """Search the pair graph over the given letters for a common state."""
    if (s, t) in known:
        return known[(s, t)]
    seen = {(s, t)}
    queue = deque([(s, t)])
    found = False
    while queue and not found:
        x, y = queue.popleft()
        for symbol in letters:
            for x2 in a.successors(x, symbol):
                for y2 in a.successors(y, symbol):
                    if x2 == y2 or known.get((x2, y2)):
                        found = True
                        break
                    if (x2, y2) not in seen:
                        seen.add((x2, y2))
                        queue.append((x2, y2))
                if found:
                    break
            if found:
                break
    known[(s, t)] = found
    if not found:
        # every pair reached from a failing pair fails as well
        for pair in seen:
            known[pair] = False
    return found


def is_confluent(a: Nfa) -> bool:
    """
    Check confluence.

    For every state q and symbols a, b with s ∈ δ(q,a) and t ∈ δ(q,b) there
    must be a word w over {a, b} with δ(s,w) ∩ δ(t,w) nonempty.
    """
    memo: Dict[FrozenSet[Symbol], Dict[Tuple[State, State], bool]] = {}
    for q in a.states:
        for i, first in enumerate(a.alphabet):
            for second in a.alphabet[i:]:
                letters = (first, second) if first != second else (first,)
                known = memo.setdefault(frozenset(letters), {})
                for s in a.successors(q, first):
                    for t in a.successors(q, second):
                        if s != t and not _rejoins(a, s, t, letters, known):
                            logger.debug(f"Not confluent at {q!r} on {first}/{second}: {s!r} vs {t!r}")
                            return False
    return True


def is_ums(a: Nfa) -> bool:
    """
    Check the unique maximal state property.

    For every state q, q must be the only state without an exit to a different
    state inside the weakly connected component of G(A, Σ(q)) containing q.

    Raises:
        NotPartiallyOrderedError: If a is not partially ordered
    """
    if not is_partially_ordered(a):
        raise NotPartiallyOrderedError("the UMS property is defined for partially ordered automata")
    sinks_by_letters: Dict[FrozenSet[Symbol], Dict[State, Set[State]]] = {}
    for q in a.states:
        letters = a.self_loops(q)
        if not letters:
            continue
        if letters not in sinks_by_letters:
            graph = reachability_graph(a, letters)
            component_sinks: Dict[State, Set[State]] = {}
            for component in nx.weakly_connected_components(graph):
                sinks = {p for p in component if graph.out_degree(p) == 0}
                for p in component:
                    component_sinks[p] = sinks
            sinks_by_letters[letters] = component_sinks
        if sinks_by_letters[letters][q] != {q}:
            logger.debug(f"UMS fails at {q!r} with self-loop letters {sorted(letters)}")
            return False
    return True


def is_ptnfa(a: Nfa) -> bool:
    """Complete, confluent rpoNFA."""
    return a.is_complete() and is_rponfa(a) and is_confluent(a)


@dataclass
class ClassificationReport:
    """
    Structural profile of an automaton.

    ums and depth are only filled in for partially ordered automata.
    """
    deterministic: bool
    complete: bool
    partially_ordered: bool
    self_loop_deterministic: bool
    confluent: Optional[bool] = None
    ums: Optional[bool] = None
    ptnfa: Optional[bool] = None
    depth: Optional[int] = None

    @property
    def rponfa(self) -> bool:
        return self.partially_ordered and self.self_loop_deterministic

    def to_dict(self) -> Dict[str, Any]:
        """Flat JSON-ready dictionary with stable key names."""
        return asdict(self)


def classify(a: Nfa) -> ClassificationReport:
    """
    Compute every structural predicate of a.

    ptNFA membership is computed both as complete ∧ confluent ∧ rpoNFA and,
    for complete partially ordered automata, as complete ∧ UMS; the two must
    agree.

    Raises:
        InvariantViolationError: If the two characterizations disagree
    """
    po = is_partially_ordered(a)
    report = ClassificationReport(
        deterministic=a.is_deterministic(),
        complete=a.is_complete(),
        partially_ordered=po,
        self_loop_deterministic=is_self_loop_deterministic(a),
        confluent=is_confluent(a),
    )
    report.ptnfa = report.complete and report.rponfa and report.confluent
    if po:
        report.ums = is_ums(a)
        report.depth = depth(a)
        if report.complete and report.ums != (report.self_loop_deterministic and report.confluent):
            raise InvariantViolationError(
                f"UMS={report.ums} disagrees with rpoNFA∧confluent for complete poNFA {a.name!r}")
    logger.info(f"Classified {a.name or 'automaton'} with {len(a)} states: ptnfa={report.ptnfa}")
    return report
