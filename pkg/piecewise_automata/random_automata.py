"""
Seeded random automata, formulas and DAGs.

Every generator takes a random.Random instance so corpora are reproducible
from a single seed.
"""

import random
import string
from typing import List, Optional, Sequence, Set, Tuple

from .automaton import Nfa, Symbol
from .constants import DEFAULT_DENSITY, UNARY_SYMBOL
from .constructions import Cnf3Formula, Dag, DnfFormula


def symbols_for(count: int) -> Tuple[Symbol, ...]:
    """a, b, c, ... (a single "0" for unary automata)."""
    if count < 1 or count > len(string.ascii_lowercase):
        raise ValueError(f"Symbol count must be between 1 and {len(string.ascii_lowercase)}, got {count}")
    if count == 1:
        return (UNARY_SYMBOL,)
    return tuple(string.ascii_lowercase[:count])


def _state_names(count: int) -> List[str]:
    if count < 1:
        raise ValueError(f"State count must be positive, got {count}")
    return [f"q{i}" for i in range(count)]


def _accepting(rng: random.Random, states: Sequence[str]) -> List[str]:
    return [q for q in states if rng.random() < 0.5]


def random_nfa(rng: random.Random, states: int, symbols: int,
               density: float = DEFAULT_DENSITY, initial: int = 1) -> Nfa:
    """Each (p, a, q) is a transition with probability density."""
    names = _state_names(states)
    alphabet = symbols_for(symbols)
    transitions = {(p, a, q) for p in names for a in alphabet for q in names if rng.random() < density}
    starts = rng.sample(names, min(initial, states))
    return Nfa(names, alphabet, transitions, starts, _accepting(rng, names), name="random-nfa")


def random_ponfa(rng: random.Random, states: int, symbols: int,
                 density: float = DEFAULT_DENSITY, complete: bool = False,
                 self_loop_deterministic: bool = False, initial: int = 1) -> Nfa:
    """
    Partially ordered NFA: transitions only go from q_i to q_j with j >= i.

    Args:
        complete: Give every (state, symbol) at least one successor
        self_loop_deterministic: Drop the other successors of self-looping symbols
    """
    names = _state_names(states)
    alphabet = symbols_for(symbols)
    transitions: Set[Tuple[str, str, str]] = set()
    for i, p in enumerate(names):
        for a in alphabet:
            targets = [j for j in range(i, states) if rng.random() < density]
            if not targets and complete:
                targets = [rng.randrange(i, states)]
            if self_loop_deterministic and i in targets:
                targets = [i]
            transitions |= {(p, a, names[j]) for j in targets}
    starts = [names[0]] + [q for q in names[1:initial]]
    return Nfa(names, alphabet, transitions, starts, _accepting(rng, names), name="random-ponfa")


def random_rponfa(rng: random.Random, states: int, symbols: int,
                  density: float = DEFAULT_DENSITY, complete: bool = False) -> Nfa:
    return random_ponfa(rng, states, symbols, density, complete=complete, self_loop_deterministic=True)


def random_dfa(rng: random.Random, states: int, symbols: int,
               partially_ordered: bool = False) -> Nfa:
    """Complete DFA with uniformly chosen targets (forward ones only when partially ordered)."""
    names = _state_names(states)
    alphabet = symbols_for(symbols)
    transitions = set()
    for i, p in enumerate(names):
        for a in alphabet:
            j = rng.randrange(i, states) if partially_ordered else rng.randrange(states)
            transitions.add((p, a, names[j]))
    return Nfa(names, alphabet, transitions, [names[0]], _accepting(rng, names), name="random-dfa")


def random_unary_dfa(rng: random.Random, states: int) -> Nfa:
    return random_dfa(rng, states, 1)


def random_unary_ponfa(rng: random.Random, states: int, density: float = DEFAULT_DENSITY) -> Nfa:
    return random_ponfa(rng, states, 1, density)


def random_unary_nfa(rng: random.Random, states: int, density: float = DEFAULT_DENSITY) -> Nfa:
    return random_nfa(rng, states, 1, density)


def _random_literals(rng: random.Random, variables: int, size: int) -> List[int]:
    chosen = rng.sample(range(1, variables + 1), size)
    return [v if rng.random() < 0.5 else -v for v in chosen]


def random_dnf(rng: random.Random, variables: int, conjuncts: int, width: Optional[int] = None) -> DnfFormula:
    """DNF with the given number of conjuncts of up to width literals each."""
    width = variables if width is None else min(width, variables)
    terms = [_random_literals(rng, variables, rng.randint(0, width)) for _ in range(conjuncts)]
    return DnfFormula(variables, terms)


def random_cnf3(rng: random.Random, variables: int, clauses: int) -> Cnf3Formula:
    size = min(3, variables)
    return Cnf3Formula(variables, [_random_literals(rng, variables, rng.randint(1, size)) for _ in range(clauses)])


def random_dag(rng: random.Random, nodes: int, edge_probability: float = DEFAULT_DENSITY) -> Dag:
    """Edges run from lower to higher index; the target has no outgoing edges."""
    s = rng.randrange(nodes)
    t = rng.randrange(nodes)
    edges = [(i, j) for i in range(nodes) for j in range(i + 1, nodes)
             if i != t and rng.random() < edge_probability]
    return Dag(nodes, edges, s, t)
