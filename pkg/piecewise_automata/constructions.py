"""
Gadget compilers.

Builds the automata behind the hardness reductions and witness constructions:
the W-words and their rejecting ptNFAs A_{k,n}, the DAG-reachability,
DNF-validity and 3CNF gadgets, the M_k reduction from universality to k-PT
and the PT-hardness gadget for rpoNFAs. The Turing machine reduction lives in
the turing module.

Formulas use signed variable indices: 3 is x3, -3 is its negation.
"""

import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import networkx as nx

from .automaton import Nfa, State, Symbol, Word, fresh_name, is_empty, remove_states
from .classify import is_rponfa
from .constants import BINARY_ALPHABET, DAG_SYMBOL, LETTER_PREFIX, MAX_STATE, UNARY_SYMBOL
from .exceptions import (
    EmptyLanguageError,
    InvalidDagError,
    InvalidFormulaError,
    NotRpoNfaError,
    WrongInputShapeError,
)

logger = logging.getLogger(__name__)


def _check_literals(kind: str, variables: int, literals: Sequence[int]) -> Tuple[int, ...]:
    literals = tuple(literals)
    for literal in literals:
        if not isinstance(literal, int) or isinstance(literal, bool) or literal == 0:
            raise InvalidFormulaError(f"{kind} literals are nonzero integers, got {literal!r}")
        if abs(literal) > variables:
            raise InvalidFormulaError(f"Literal {literal} refers to a variable outside 1..{variables}")
    if len(set(literals)) != len(literals):
        raise InvalidFormulaError(f"{kind} {list(literals)} repeats a literal")
    return literals


def _check_variable_count(variables: Any) -> None:
    if not isinstance(variables, int) or isinstance(variables, bool) or variables < 1:
        raise InvalidFormulaError(f"Variable count must be a positive integer, got {variables!r}")


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctions of literals over x1..x_vars."""
    vars: int
    conjuncts: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _check_variable_count(self.vars)
        conjuncts = tuple(_check_literals("Conjunct", self.vars, c) for c in self.conjuncts)
        if not conjuncts:
            raise InvalidFormulaError("A DNF formula needs at least one conjunct")
        for conjunct in conjuncts:
            if any(-literal in conjunct for literal in conjunct):
                raise InvalidFormulaError(f"Conjunct {list(conjunct)} contains a variable and its negation")
        object.__setattr__(self, "conjuncts", conjuncts)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DnfFormula":
        try:
            return cls(data["vars"], data["conjuncts"])
        except (KeyError, TypeError) as e:
            raise InvalidFormulaError(f"DNF JSON needs 'vars' and 'conjuncts': {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {"vars": self.vars, "conjuncts": [list(c) for c in self.conjuncts]}

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """Value under an assignment (assignment[j] is the value of x_{j+1})."""
        return any(all(assignment[abs(lit) - 1] == (lit > 0) for lit in c) for c in self.conjuncts)

    def is_valid(self) -> bool:
        """Truth-table validity check."""
        return all(self.evaluate(bits) for bits in _assignments(self.vars))

    def pattern(self, index: int) -> Tuple[Tuple[Symbol, ...], ...]:
        """
        Per-position letter sets of the conjunct's pattern.

        Position j is {0,1} when x_j does not occur, {0} when negated and {1}
        when positive.
        """
        conjunct = self.conjuncts[index]
        letters = []
        for variable in range(1, self.vars + 1):
            if variable in conjunct:
                letters.append(("1",))
            elif -variable in conjunct:
                letters.append(("0",))
            else:
                letters.append(BINARY_ALPHABET)
        return tuple(letters)


@dataclass(frozen=True)
class Cnf3Formula:
    """Conjunction of clauses with one to three literals over distinct variables."""
    vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _check_variable_count(self.vars)
        clauses = tuple(_check_literals("Clause", self.vars, c) for c in self.clauses)
        for clause in clauses:
            if not 1 <= len(clause) <= 3:
                raise InvalidFormulaError(f"Clause {list(clause)} must have one to three literals")
            if len({abs(lit) for lit in clause}) != len(clause):
                raise InvalidFormulaError(f"Clause {list(clause)} repeats a variable")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Cnf3Formula":
        try:
            return cls(data["vars"], data["clauses"])
        except (KeyError, TypeError) as e:
            raise InvalidFormulaError(f"CNF JSON needs 'vars' and 'clauses': {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {"vars": self.vars, "clauses": [list(c) for c in self.clauses]}

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(lit) - 1] == (lit > 0) for lit in c) for c in self.clauses)

    def is_satisfiable(self) -> bool:
        return any(self.evaluate(bits) for bits in _assignments(self.vars))


def _assignments(variables: int):
    for number in range(2 ** variables):
        yield tuple(bool(number >> j & 1) for j in range(variables))


@dataclass(frozen=True)
class Dag:
    """Directed acyclic graph on nodes 0..n-1 with source s and target t."""
    n: int
    edges: Tuple[Tuple[int, int], ...]
    s: int
    t: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidDagError(f"Node count must be positive, got {self.n!r}")
        edges = tuple(tuple(e) for e in self.edges)
        for node in (self.s, self.t):
            if not isinstance(node, int) or not 0 <= node < self.n:
                raise InvalidDagError(f"Node {node!r} outside 0..{self.n - 1}")
        for edge in edges:
            if len(edge) != 2 or any(not isinstance(v, int) or not 0 <= v < self.n for v in edge):
                raise InvalidDagError(f"Bad edge {list(edge)} for {self.n} nodes")
            if edge[0] == self.t:
                raise InvalidDagError(f"Edge {list(edge)} leaves the target node {self.t}")
        if len(set(edges)) != len(edges):
            raise InvalidDagError("Duplicate edge")
        if not nx.is_directed_acyclic_graph(self.graph(edges)):
            raise InvalidDagError("The graph has a cycle")
        object.__setattr__(self, "edges", edges)

    def graph(self, edges=None) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges if edges is None else edges)
        return graph

    def reachable(self) -> bool:
        """True iff t is reachable from s."""
        return nx.has_path(self.graph(), self.s, self.t)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Dag":
        try:
            return cls(data["n"], data["edges"], data["s"], data["t"])
        except (KeyError, TypeError) as e:
            raise InvalidDagError(f"DAG JSON needs 'n', 'edges', 's' and 't': {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "edges": [list(e) for e in self.edges], "s": self.s, "t": self.t}


def letter(i: int) -> Symbol:
    """The i-th letter a_i of the W-word alphabet."""
    return f"{LETTER_PREFIX}{i}"


def w_word(k: int, n: int) -> Word:
    """
    The word W_{k,n} = W_{k,n-1} a_n W_{k-1,n}, empty when kn = 0.

    Its length is C(k+n, n) - 1 and a_n occurs exactly k times.
    """
    if k < 0 or n < 0:
        raise ValueError(f"w_word needs nonnegative parameters, got k={k}, n={n}")
    return _w_word(k, n)


@lru_cache(maxsize=None)
def _w_word(k: int, n: int) -> Word:
    if k == 0 or n == 0:
        return ()
    return _w_word(k, n - 1) + (letter(n),) + _w_word(k - 1, n)


def akn_state(i: int, m: int) -> State:
    return f"({i};{m})"


def a_kn(k: int, n: int) -> Nfa:
    """
    The ptNFA A_{k,n} with n(2k+1)+1 states accepting everything but W_{k,n}.

    Built level by level: level m adds states (0;m)..(2k;m) and the a_m
    transitions of the six groups, reading off which states of the previous
    levels are accepting.
    """
    if k < 1 or n < 1:
        raise ValueError(f"a_kn needs k, n >= 1, got k={k}, n={n}")
    states: List[State] = []
    transitions = set()
    initial: List[State] = []
    accepting = {MAX_STATE}
    for m in range(1, n + 1):
        a_m = letter(m)
        previous = list(states)
        for i in range(2 * k + 1):
            for j in range(1, m):
                transitions.add((akn_state(i, m), letter(j), akn_state(i, m)))
        for i in range(2 * k):
            if i != k:
                transitions.add((akn_state(i, m), a_m, akn_state(i + 1, m)))
        transitions.add((akn_state(k, m), a_m, MAX_STATE))
        transitions.add((akn_state(2 * k, m), a_m, MAX_STATE))
        transitions.add((MAX_STATE, a_m, MAX_STATE))
        for i in range(k):
            for lower in range(1, m):
                transitions.add((akn_state(i, m), a_m, akn_state(i + 1, lower)))
        for q in previous:
            if q in accepting:
                transitions.add((q, a_m, MAX_STATE))
            else:
                transitions.add((q, a_m, akn_state(k + 1, m)))
        states.extend(akn_state(i, m) for i in range(2 * k + 1))
        initial.append(akn_state(0, m))
        accepting.update(akn_state(i, m) for i in range(k))
    states.append(MAX_STATE)
    logger.info(f"Built A_{{{k},{n}}} with {len(states)} states and {len(transitions)} transitions")
    return Nfa(states, [letter(m) for m in range(1, n + 1)], transitions, initial, accepting,
               name=f"A_{{{k},{n}}}")


_AKN_STATE = re.compile(r"^\((\d+);(\d+)\)$")


def akn_parameters(a: Nfa) -> Tuple[int, int]:
    """
    Recover (k, n) from an automaton with the A_{k,n} state layout.

    Raises:
        WrongInputShapeError: If the states or alphabet do not have that layout
    """
    indices = []
    for q in a.states:
        if q == MAX_STATE:
            continue
        match = _AKN_STATE.match(q)
        if not match:
            raise WrongInputShapeError(f"State {q!r} is not of the form (i;m)")
        indices.append((int(match.group(1)), int(match.group(2))))
    if not indices:
        raise WrongInputShapeError("No (i;m) states found")
    top = max(i for i, _ in indices)
    n = max(m for _, m in indices)
    if top % 2 or top == 0:
        raise WrongInputShapeError(f"Largest row index {top} is not 2k for some k >= 1")
    k = top // 2
    expected = {(i, m) for i in range(2 * k + 1) for m in range(1, n + 1)}
    if set(indices) != expected or MAX_STATE not in a.states:
        raise WrongInputShapeError(f"States do not match the A_{{{k},{n}}} layout")
    if list(a.alphabet) != [letter(m) for m in range(1, n + 1)]:
        raise WrongInputShapeError(f"Alphabet {list(a.alphabet)} is not a1..a{n}")
    return k, n


def strip_redundant(a: Nfa) -> Nfa:
    """
    Remove the non-accepting states (k+1;i)..(2k;i) of A_{k,n}.

    The result accepts the same language and is an rpoNFA, but it is no
    longer complete once n >= 2.
    """
    k, n = akn_parameters(a)
    removed = [akn_state(i, m) for m in range(1, n + 1) for i in range(k + 1, 2 * k + 1)]
    stripped = remove_states(a, removed)
    return Nfa(stripped.states, stripped.alphabet, stripped.transitions, stripped.initial,
               stripped.accepting, name=f"strip({a.name})" if a.name else None)


def dag_gadget(g: Dag) -> Nfa:
    """
    Unary ptNFA that is universal iff t is reachable from s.

    Node states are accepting; n-1 non-accepting states f_1..f_{n-1} form a
    chain into t, and every node other than t also moves to f_1, so a^{n-1}
    is rejected unless some path from s reaches t.
    """
    a = DAG_SYMBOL
    nodes = [f"v_{i}" for i in range(g.n)]
    chain = [f"f_{i}" for i in range(1, g.n)]
    target = nodes[g.t]
    transitions = {(nodes[i], a, nodes[j]) for i, j in g.edges}
    transitions.add((target, a, target))
    if chain:
        for here, there in zip(chain, chain[1:] + [target]):
            transitions.add((here, a, there))
        for q in nodes:
            if q != target:
                transitions.add((q, a, chain[0]))
    return Nfa(nodes + chain, [a], transitions, [nodes[g.s]], nodes, name="dag")


def dnf_to_ptnfa(phi: DnfFormula) -> Nfa:
    """
    ptNFA over {0,1} accepting L(β) ∪ {w : |w| ≠ n}; universal iff phi is valid.

    β is the union of the per-conjunct patterns, each read along its own
    deterministic path from state 0. The alpha chain accepts every length but
    n and the r chain collects undefined transitions.
    """
    n = phi.vars
    states: List[State] = ["0"]
    transitions = set()
    accepting = ["0"]
    for i, positions in enumerate(phi.pattern(c) for c in range(len(phi.conjuncts))):
        previous = "0"
        for ell, letters in enumerate(positions, 1):
            here = f"q_{i + 1}_{ell}"
            states.append(here)
            transitions.update((previous, s, here) for s in letters)
            previous = here
        accepting.append(previous)
    alphas = [f"alpha_{ell}" for ell in range(1, n + 2)]
    rs = [f"r_{ell}" for ell in range(1, n + 1)]
    states += alphas + rs
    for here, there in zip(["0"] + alphas[:-1], alphas):
        transitions.update((here, s, there) for s in BINARY_ALPHABET)
    transitions.update((alphas[-1], s, alphas[-1]) for s in BINARY_ALPHABET)
    for here, there in zip(rs, rs[1:] + [alphas[-1]]):
        transitions.update((here, s, there) for s in BINARY_ALPHABET)
    defined = {(p, s) for p, s, _ in transitions}
    transitions.update((q, s, rs[0]) for q in states for s in BINARY_ALPHABET if (q, s) not in defined)
    accepting += [alpha for ell, alpha in enumerate(alphas, 1) if ell != n]
    return Nfa(states, BINARY_ALPHABET, transitions, ["0"], accepting, name="dnf-ptnfa")


def dnf_to_podfa_family(phi: DnfFormula) -> List[Nfa]:
    """
    One complete poDFA per conjunct, recognizing the complement of its pattern.

    {0,1}^n meets the intersection of their languages iff phi is not valid.
    """
    n = phi.vars
    family = []
    for index in range(len(phi.conjuncts)):
        chain = [f"p_{ell}" for ell in range(n + 1)]
        sink = "sink"
        transitions = set()
        for ell, letters in enumerate(phi.pattern(index)):
            for s in BINARY_ALPHABET:
                target = chain[ell + 1] if s in letters else sink
                transitions.add((chain[ell], s, target))
        transitions.update((chain[-1], s, sink) for s in BINARY_ALPHABET)
        transitions.update((sink, s, sink) for s in BINARY_ALPHABET)
        accepting = chain[:-1] + [sink]
        family.append(Nfa(chain + [sink], BINARY_ALPHABET, transitions, [chain[0]], accepting,
                          name=f"podfa_{index + 1}"))
    return family


def dnf_to_rponfa(phi: DnfFormula) -> Nfa:
    """
    rpoNFA over {0,1} accepting L(β){0,1}* ∪ {w : |w| < n}.

    Its language is PT iff phi is valid.
    """
    n = phi.vars
    states: List[State] = []
    transitions = set()
    initial: List[State] = []
    accepting: List[State] = []
    for i in range(len(phi.conjuncts)):
        path = [f"q_{i + 1}_{ell}" for ell in range(n + 1)]
        states += path
        for ell, letters in enumerate(phi.pattern(i)):
            transitions.update((path[ell], s, path[ell + 1]) for s in letters)
        transitions.update((path[-1], s, path[-1]) for s in BINARY_ALPHABET)
        initial.append(path[0])
        accepting.append(path[-1])
    alphas = [f"alpha_{ell}" for ell in range(1, n + 1)]
    states += alphas
    for here, there in zip(alphas, alphas[1:]):
        transitions.update((here, s, there) for s in BINARY_ALPHABET)
    initial.append(alphas[0])
    accepting += alphas
    return Nfa(states, BINARY_ALPHABET, transitions, initial, accepting, name="dnf-rponfa")


def mk_gadget(m: Nfa, k: int) -> Nfa:
    """
    Reduce universality of m to k-piecewise testability.

    Every initial state i gets a chain of |Σ|k fresh states in front of it.
    The result accepts Σ^[k, |Σ|k-1] ∪ Σ^{|Σ|k}·L(m), which is k-PT iff m is
    universal.

    Raises:
        EmptyLanguageError: If L(m) is empty
    """
    if k < 1:
        raise ValueError(f"mk_gadget needs k >= 1, got {k}")
    if not m.alphabet:
        raise ValueError("mk_gadget needs a nonempty alphabet")
    empty, _ = is_empty(m)
    if empty:
        raise EmptyLanguageError("mk_gadget needs an automaton with a nonempty language")
    length = len(m.alphabet) * k
    taken = set(m.states)
    states = list(m.states)
    transitions = set(m.transitions)
    initial = []
    accepting = set(m.accepting)
    for start in m.ordered(m.initial):
        chain = []
        for ell in range(1, length + 1):
            name = fresh_name(f"i[{start}]_{ell}", taken)
            taken.add(name)
            chain.append(name)
        states += chain
        for here, there in zip(chain, chain[1:] + [start]):
            transitions.update((here, s, there) for s in m.alphabet)
        initial.append(chain[0])
        accepting.update(chain[k:])
    name = f"M_{k}({m.name})" if m.name else f"M_{k}"
    return Nfa(states, m.alphabet, transitions, initial, accepting, name=name)


def first_primes(count: int) -> List[int]:
    """The first count primes, by trial division."""
    primes: List[int] = []
    candidate = 2
    while len(primes) < count:
        if all(candidate % p for p in primes if p * p <= candidate):
            primes.append(candidate)
        candidate += 1
    return primes


def crt(congruences: Sequence[Tuple[int, int]]) -> int:
    """Least nonnegative x with x ≡ r (mod m) for each (r, m); moduli pairwise coprime."""
    x, modulus = 0, 1
    for residue, m in congruences:
        x += modulus * ((residue - x) * pow(modulus, -1, m) % m)
        modulus *= m
    return x % modulus


def clause_offset(clause: Sequence[int], primes: Sequence[int]) -> Tuple[int, int]:
    """
    Residue and modulus of the lengths encoding assignments that falsify a clause.

    A positive literal x_r is false when the length is 0 mod p_r, a negative
    one when it is 1 mod p_r.
    """
    congruences = [(0 if literal > 0 else 1, primes[abs(literal) - 1]) for literal in clause]
    modulus = math.prod(m for _, m in congruences)
    return crt(congruences), modulus


def cnf3_to_unary_nfa(phi: Cnf3Formula) -> Nfa:
    """
    Unary NFA that is universal iff phi is unsatisfiable.

    The length z of 0^z encodes the assignment x_r = z mod p_r when every
    residue is 0 or 1. One cycle per prime accepts the lengths that encode no
    assignment, one cycle per clause accepts the lengths whose assignment
    falsifies it. When not universal the language is not PT either.
    """
    primes = first_primes(phi.vars)
    states: List[State] = []
    transitions = set()
    initial: List[State] = []
    accepting: List[State] = []

    def cycle(prefix: str, length: int, accepted: Sequence[int]) -> None:
        ring = [f"{prefix}_{r}" for r in range(length)]
        states.extend(ring)
        for r, here in enumerate(ring):
            transitions.add((here, UNARY_SYMBOL, ring[(r + 1) % length]))
        initial.append(ring[0])
        accepting.extend(ring[r] for r in accepted)

    for p in primes:
        if p > 2:
            cycle(f"e0p{p}", p, range(2, p))
    for index, clause in enumerate(phi.clauses, 1):
        residue, modulus = clause_offset(clause, primes)
        cycle(f"e{index}", modulus, [residue])
    logger.info(f"Unary 3CNF gadget: {len(states)} states for {len(phi.clauses)} clauses")
    return Nfa(states, [UNARY_SYMBOL], transitions, initial, accepting, name="cnf3-unary")


def pt_hardness_gadget(a: Nfa) -> Nfa:
    """
    rpoNFA B whose language is PT iff a is universal.

    Two fresh letters and two fresh states are added; the first fresh state
    is the only accepting one and both fresh states loop on everything.

    Raises:
        NotRpoNfaError: If a is not an rpoNFA
    """
    if not is_rponfa(a):
        raise NotRpoNfaError("pt_hardness_gadget needs a self-loop deterministic poNFA")
    fresh_a = fresh_name("a", a.alphabet)
    fresh_b = fresh_name("b", list(a.alphabet) + [fresh_a])
    one = fresh_name("1", a.states)
    two = fresh_name("2", list(a.states) + [one])
    alphabet = list(a.alphabet) + [fresh_a, fresh_b]
    transitions = set(a.transitions)
    for q in a.states:
        transitions.add((q, fresh_a, one))
        transitions.add((q, fresh_b, one if q in a.accepting else two))
    transitions.update((sink, s, sink) for sink in (one, two) for s in alphabet)
    return Nfa(list(a.states) + [one, two], alphabet, transitions, a.initial, [one],
               name=f"B({a.name})" if a.name else "B")
