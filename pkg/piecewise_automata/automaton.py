"""
Automaton data model.

Holds the Nfa value type, its language semantics (membership and images of
state sets) and the classical constructions the rest of the library builds
on: subset construction, minimization, complement, product, emptiness and
depth. DFAs are Nfa values with one initial state and at most one successor
per state and symbol.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .constants import DEFAULT_MAX_MACROSTATES, EMPTY_WORD_TEXT
from .exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    InvalidAutomatonError,
    NotDeterministicError,
    NotPartiallyOrderedError,
    SymbolNotInAlphabetError,
)

Symbol = str
State = str
Word = Tuple[Symbol, ...]
MacroState = FrozenSet[State]
Transition = Tuple[State, Symbol, State]

logger = logging.getLogger(__name__)

_JSON_KEYS = ("name", "alphabet", "states", "initial", "accepting", "transitions")


def _check_symbol(symbol: Any) -> None:
    if not isinstance(symbol, str) or not symbol:
        raise InvalidAutomatonError(f"Symbols must be nonempty strings, got {symbol!r}")
    if '"' in symbol or any(ch.isspace() for ch in symbol):
        raise InvalidAutomatonError(f"Symbol {symbol!r} contains whitespace or a quote")


def _unique(kind: str, items: Sequence[Any]) -> None:
    seen = set()
    for item in items:
        if item in seen:
            raise InvalidAutomatonError(f"Duplicate {kind}: {item!r}")
        seen.add(item)


@dataclass(frozen=True)
class Nfa:
    """
    A nondeterministic finite automaton without epsilon transitions.

    Missing transitions are allowed; completeness is a predicate, not a
    representation invariant. Values are immutable and compare by structure
    (the name is ignored).
    """
    states: Tuple[State, ...]
    alphabet: Tuple[Symbol, ...]
    transitions: FrozenSet[Transition]
    initial: FrozenSet[State]
    accepting: FrozenSet[State]
    name: Optional[str] = field(default=None, compare=False)
    _delta: Dict[Tuple[State, Symbol], FrozenSet[State]] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False)
    _index: Dict[State, int] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False)
    _symbols: FrozenSet[Symbol] = field(
        default=frozenset(), init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        """Normalize containers and validate the structural invariants."""
        states = tuple(self.states)
        alphabet = tuple(self.alphabet)
        transitions = [tuple(t) for t in self.transitions]
        initial = list(self.initial)
        accepting = list(self.accepting)

        for state in states:
            if not isinstance(state, str) or not state:
                raise InvalidAutomatonError(f"State names must be nonempty strings, got {state!r}")
        _unique("state", states)
        for symbol in alphabet:
            _check_symbol(symbol)
        _unique("symbol", alphabet)
        _unique("transition", transitions)

        known = set(states)
        symbols = set(alphabet)
        delta: Dict[Tuple[State, Symbol], set] = {}
        for transition in transitions:
            if len(transition) != 3:
                raise InvalidAutomatonError(f"Transitions are (source, symbol, target), got {transition!r}")
            source, symbol, target = transition
            if source not in known or target not in known:
                raise InvalidAutomatonError(f"Transition {transition!r} uses an undeclared state")
            if symbol not in symbols:
                raise InvalidAutomatonError(
                    f"Transition {transition!r} uses unknown symbol {symbol!r}. Available: {list(alphabet)}")
            delta.setdefault((source, symbol), set()).add(target)
        for kind, subset in (("initial", initial), ("accepting", accepting)):
            for state in subset:
                if state not in known:
                    raise InvalidAutomatonError(f"Unknown {kind} state: {state!r}")

        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "transitions", frozenset(transitions))
        object.__setattr__(self, "initial", frozenset(initial))
        object.__setattr__(self, "accepting", frozenset(accepting))
        object.__setattr__(self, "_delta", {key: frozenset(value) for key, value in delta.items()})
        object.__setattr__(self, "_index", {state: i for i, state in enumerate(states)})
        object.__setattr__(self, "_symbols", frozenset(alphabet))

    def __len__(self) -> int:
        return len(self.states)

    @property
    def is_unary(self) -> bool:
        return len(self.alphabet) == 1

    def index(self, state: State) -> int:
        """Position of a state in the declared order."""
        return self._index[state]

    def ordered(self, states: Iterable[State]) -> Tuple[State, ...]:
        """Return the given states in declared order (the canonical macro-state form)."""
        return tuple(sorted(states, key=self._index.__getitem__))

    def successors(self, state: State, symbol: Symbol) -> FrozenSet[State]:
        """Return δ(state, symbol); empty when undefined."""
        return self._delta.get((state, symbol), frozenset())

    def self_loops(self, state: State) -> FrozenSet[Symbol]:
        """Return Σ(state), the symbols labelling self-loops at the state."""
        return frozenset(a for a in self.alphabet if state in self.successors(state, a))

    def check_word(self, word: Iterable[Symbol]) -> Word:
        """Return the word as a tuple, raising if it leaves the alphabet."""
        word = tuple(word)
        for symbol in word:
            if symbol not in self._symbols:
                raise SymbolNotInAlphabetError(
                    f"Unknown symbol: {symbol!r}. Available: {list(self.alphabet)}")
        return word

    def step(self, macro: Iterable[State], symbol: Symbol) -> MacroState:
        """Image of a set of states under one symbol."""
        image = set()
        for state in macro:
            image.update(self._delta.get((state, symbol), ()))
        return frozenset(image)

    def post_image(self, macro: Iterable[State], word: Iterable[Symbol]) -> MacroState:
        """Image of a set of states under a word."""
        current = frozenset(macro)
        for symbol in self.check_word(word):
            current = self.step(current, symbol)
        return current

    def accepts(self, word: Iterable[Symbol]) -> bool:
        """Check membership of a word."""
        return bool(self.post_image(self.initial, word) & self.accepting)

    def is_deterministic(self) -> bool:
        """One initial state and at most one successor per state and symbol."""
        return len(self.initial) == 1 and all(len(t) <= 1 for t in self._delta.values())

    def is_complete(self) -> bool:
        """Every state has a successor under every symbol."""
        return all(self._delta.get((q, a)) for q in self.states for a in self.alphabet)

    def target(self, state: State, symbol: Symbol) -> State:
        """The unique successor in a complete DFA."""
        (successor,) = self._delta[(state, symbol)]
        return successor

    def to_dict(self) -> Dict[str, Any]:
        """Convert the automaton to its interchange dictionary."""
        data: Dict[str, Any] = {}
        if self.name is not None:
            data["name"] = self.name
        data["alphabet"] = list(self.alphabet)
        data["states"] = list(self.states)
        data["initial"] = list(self.ordered(self.initial))
        data["accepting"] = list(self.ordered(self.accepting))
        data["transitions"] = [list(t) for t in sorted(self.transitions)]
        return data

    def to_json(self) -> str:
        """Canonical interchange text: one key per line, one transition per line."""
        items = list(self.to_dict().items())
        lines = ["{"]
        for i, (key, value) in enumerate(items):
            comma = "," if i < len(items) - 1 else ""
            if key == "transitions" and value:
                lines.append('  "transitions": [')
                for j, transition in enumerate(value):
                    separator = "," if j < len(value) - 1 else ""
                    lines.append(f"    {json.dumps(transition, ensure_ascii=False)}{separator}")
                lines.append(f"  ]{comma}")
            else:
                lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}{comma}")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Nfa":
        """Build an automaton from its interchange dictionary."""
        if not isinstance(data, dict):
            raise InvalidAutomatonError("Automaton JSON must be an object")
        unknown = set(data) - set(_JSON_KEYS)
        if unknown:
            raise InvalidAutomatonError(f"Unknown keys: {sorted(unknown)}. Available: {list(_JSON_KEYS)}")
        missing = [key for key in _JSON_KEYS[1:] if key not in data]
        if missing:
            raise InvalidAutomatonError(f"Missing keys: {missing}")
        for key in _JSON_KEYS[1:]:
            if not isinstance(data[key], list):
                raise InvalidAutomatonError(f"Key {key!r} must be an array")
        for transition in data["transitions"]:
            if not isinstance(transition, list) or len(transition) != 3:
                raise InvalidAutomatonError(f"Transitions are [src, sym, dst] triples, got {transition!r}")
        _unique("initial state", data["initial"])
        _unique("accepting state", data["accepting"])
        return cls(
            states=data["states"],
            alphabet=data["alphabet"],
            transitions=[tuple(t) for t in data["transitions"]],
            initial=data["initial"],
            accepting=data["accepting"],
            name=data.get("name"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Nfa":
        """Parse interchange text."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidAutomatonError(f"Malformed automaton JSON: {e}") from e
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str) -> "Nfa":
        """Read an automaton from a UTF-8 JSON file."""
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_json(f.read())

    def save(self, path: str) -> None:
        """Write the canonical interchange text to a file."""
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json())


def parse_word(text: str) -> Word:
    """Parse a space-separated word; an empty string or ε is the empty word."""
    text = text.strip()
    if text in ("", EMPTY_WORD_TEXT):
        return ()
    return tuple(text.split())


def format_word(word: Iterable[Symbol]) -> str:
    """Space-separated rendering of a word (the empty word renders as an empty string)."""
    return " ".join(word)


def accepts(a: Nfa, w: Iterable[Symbol]) -> bool:
    """True iff δ(I, w) meets the accepting states."""
    return a.accepts(w)


def post_image(a: Nfa, s: Iterable[State], w: Iterable[Symbol]) -> MacroState:
    """Exact image of the state set s under w."""
    unknown = set(s) - set(a.states)
    if unknown:
        raise InvalidAutomatonError(f"Unknown states in macro-state: {sorted(unknown)}")
    return a.post_image(s, w)


def require_complete_dfa(d: Nfa, operation: str) -> None:
    """Raise NotDeterministicError unless d is a complete DFA."""
    if not d.is_deterministic():
        raise NotDeterministicError(f"{operation} needs a deterministic automaton")
    if not d.is_complete():
        raise NotDeterministicError(f"{operation} needs a complete automaton")


def require_same_alphabet(a: Nfa, b: Nfa) -> None:
    """Raise AlphabetMismatchError unless both alphabets hold the same symbols."""
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatchError(
            f"Alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}; pad them first")


def subset_construction(a: Nfa, max_states: int = DEFAULT_MAX_MACROSTATES
                        ) -> Tuple[Nfa, Dict[State, MacroState]]:
    """
    Determinize by breadth-first exploration of reachable macro-states.

    Args:
        a: Any automaton
        max_states: Budget on the number of macro-states

    Returns:
        The complete DFA (states S0, S1, ... in discovery order) and the
        macro-state each DFA state stands for

    Raises:
        BudgetExceededError: If more than max_states macro-states are reachable
    """
    start = a.initial
    index: Dict[MacroState, int] = {start: 0}
    order: List[MacroState] = [start]
    transitions = []
    queue = deque([start])
    while queue:
        macro = queue.popleft()
        source = f"S{index[macro]}"
        for symbol in a.alphabet:
            image = a.step(macro, symbol)
            if image not in index:
                if len(order) >= max_states:
                    raise BudgetExceededError("subset construction", max_states)
                index[image] = len(order)
                order.append(image)
                queue.append(image)
            transitions.append((source, symbol, f"S{index[image]}"))

    states = [f"S{i}" for i in range(len(order))]
    accepting = [f"S{i}" for i, macro in enumerate(order) if macro & a.accepting]
    name = f"det({a.name})" if a.name else None
    logger.debug(f"Subset construction of {len(a)} states reached {len(order)} macro-states")
    dfa = Nfa(states, a.alphabet, transitions, ["S0"], accepting, name=name)
    return dfa, {f"S{i}": macro for i, macro in enumerate(order)}


def determinize(a: Nfa, max_states: int = DEFAULT_MAX_MACROSTATES) -> Nfa:
    """Language-equal complete DFA over the reachable macro-states."""
    return subset_construction(a, max_states)[0]


def _reachable(a: Nfa) -> List[State]:
    """States reachable from the initial set, in breadth-first order."""
    seen = set()
    order = []
    queue = deque(a.ordered(a.initial))
    seen.update(queue)
    while queue:
        state = queue.popleft()
        order.append(state)
        for symbol in a.alphabet:
            for target in a.ordered(a.successors(state, symbol)):
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    return order


def minimize(d: Nfa) -> Nfa:
    """
    Minimal complete DFA by partition refinement on the reachable part.

    Blocks are split by their successor signatures until stable; states of
    the result are named m0, m1, ... in breadth-first order from the initial
    state, so isomorphic inputs give identical outputs.

    Raises:
        NotDeterministicError: If d is not a complete DFA
    """
    require_complete_dfa(d, "minimize")
    reachable = _reachable(d)
    block = {q: int(q not in d.accepting) for q in reachable}
    count = len(set(block.values()))
    while True:
        ids: Dict[Tuple[int, ...], int] = {}
        refined = {}
        for q in reachable:
            signature = (block[q],) + tuple(block[d.target(q, a)] for a in d.alphabet)
            refined[q] = ids.setdefault(signature, len(ids))
        block = refined
        if len(ids) == count:
            break
        count = len(ids)

    representatives: Dict[int, State] = {}
    for q in reachable:
        representatives.setdefault(block[q], q)
    states = [f"m{b}" for b in range(count)]
    transitions = [
        (f"m{b}", a, f"m{block[d.target(q, a)]}")
        for b, q in representatives.items()
        for a in d.alphabet
    ]
    accepting = [f"m{b}" for b, q in representatives.items() if q in d.accepting]
    name = f"min({d.name})" if d.name else None
    logger.debug(f"Minimized {len(d)} states to {count}")
    return Nfa(states, d.alphabet, transitions, ["m0"], accepting, name=name)


def complement(d: Nfa) -> Nfa:
    """Flip the accepting states of a complete DFA."""
    require_complete_dfa(d, "complement")
    accepting = [q for q in d.states if q not in d.accepting]
    name = f"co({d.name})" if d.name else None
    return Nfa(d.states, d.alphabet, d.transitions, d.initial, accepting, name=name)


def product_intersection(a: Nfa, b: Nfa, max_states: int = DEFAULT_MAX_MACROSTATES) -> Nfa:
    """
    Product automaton for L(a) ∩ L(b) over the reachable pairs.

    Raises:
        AlphabetMismatchError: If the alphabets differ
    """
    require_same_alphabet(a, b)
    starts = [(p, q) for p in a.ordered(a.initial) for q in b.ordered(b.initial)]
    index = {pair: i for i, pair in enumerate(starts)}
    queue = deque(starts)
    transitions = []
    while queue:
        p, q = queue.popleft()
        source = f"P{index[(p, q)]}"
        for symbol in a.alphabet:
            for p2 in a.ordered(a.successors(p, symbol)):
                for q2 in b.ordered(b.successors(q, symbol)):
                    if (p2, q2) not in index:
                        if len(index) >= max_states:
                            raise BudgetExceededError("product construction", max_states)
                        index[(p2, q2)] = len(index)
                        queue.append((p2, q2))
                    transitions.append((source, symbol, f"P{index[(p2, q2)]}"))
    states = [f"P{i}" for i in range(len(index))]
    accepting = [f"P{i}" for (p, q), i in index.items() if p in a.accepting and q in b.accepting]
    initial = [f"P{index[pair]}" for pair in starts]
    return Nfa(states, a.alphabet, transitions, initial, accepting)


def is_empty(a: Nfa) -> Tuple[bool, Optional[Word]]:
    """
    Emptiness by breadth-first search from the initial states.

    Returns:
        (True, None) when no accepting state is reachable, otherwise
        (False, w) with w a shortest accepted word
    """
    parent: Dict[State, Optional[Tuple[State, Symbol]]] = {}
    queue = deque()
    for state in a.ordered(a.initial):
        parent[state] = None
        queue.append(state)
    while queue:
        state = queue.popleft()
        if state in a.accepting:
            word = []
            while parent[state] is not None:
                state, symbol = parent[state]
                word.append(symbol)
            return False, tuple(reversed(word))
        for symbol in a.alphabet:
            for target in a.ordered(a.successors(state, symbol)):
                if target not in parent:
                    parent[target] = (state, symbol)
                    queue.append(target)
    return True, None


def reachability_graph(a: Nfa, symbols: Optional[Iterable[Symbol]] = None) -> nx.DiGraph:
    """
    Directed graph of the transitions, self-loops dropped.

    Args:
        a: The automaton
        symbols: Restrict to transitions labelled by these symbols (all when None)
    """
    allowed = set(a.alphabet if symbols is None else symbols)
    graph = nx.DiGraph()
    graph.add_nodes_from(a.states)
    graph.add_edges_from((p, q) for p, symbol, q in a.transitions if p != q and symbol in allowed)
    return graph


def depth(a: Nfa) -> int:
    """
    Number of transitions on the longest simple path from an initial state.

    Raises:
        NotPartiallyOrderedError: If a has a cycle other than a self-loop
    """
    graph = reachability_graph(a)
    if not nx.is_directed_acyclic_graph(graph):
        raise NotPartiallyOrderedError("depth is only defined here for partially ordered automata")
    longest: Dict[State, int] = {}
    for state in reversed(list(nx.topological_sort(graph))):
        longest[state] = max((longest[t] + 1 for t in graph.successors(state)), default=0)
    return max((longest[q] for q in a.initial), default=0)


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """Return base, or base with primes appended, avoiding the taken names."""
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def complete_with_sink(a: Nfa, sink: str = "sink") -> Nfa:
    """
    Completion of a: undefined transitions go to a fresh sink with all self-loops.

    A complete automaton is returned unchanged.
    """
    if a.is_complete():
        return a
    sink = fresh_name(sink, a.states)
    added = [(q, s, sink) for q in a.states for s in a.alphabet if not a.successors(q, s)]
    added += [(sink, s, sink) for s in a.alphabet]
    return Nfa(a.states + (sink,), a.alphabet, set(a.transitions) | set(added),
               a.initial, a.accepting, name=a.name)


def with_alphabet(a: Nfa, alphabet: Sequence[Symbol]) -> Nfa:
    """Extend the alphabet; new symbols get no transitions."""
    missing = [s for s in a.alphabet if s not in alphabet]
    if missing:
        raise AlphabetMismatchError(f"New alphabet drops symbols {missing}")
    return Nfa(a.states, alphabet, a.transitions, a.initial, a.accepting, name=a.name)


def pad_alphabets(a: Nfa, b: Nfa) -> Tuple[Nfa, Nfa]:
    """Bring two automata to the union alphabet (a's order first)."""
    union = list(a.alphabet) + [s for s in b.alphabet if s not in a.alphabet]
    return with_alphabet(a, union), with_alphabet(b, union)


def disjoint_union(parts: Sequence[Tuple[str, Nfa]], name: Optional[str] = None) -> Nfa:
    """
    Union automaton of several components over one alphabet.

    Args:
        parts: (prefix, automaton) pairs; states are renamed prefix + state
        name: Optional name of the result
    """
    if not parts:
        raise InvalidAutomatonError("disjoint_union needs at least one component")
    alphabet = parts[0][1].alphabet
    states: List[State] = []
    transitions = []
    initial = []
    accepting = []
    for prefix, part in parts:
        require_same_alphabet(parts[0][1], part)
        states.extend(prefix + q for q in part.states)
        transitions.extend((prefix + p, s, prefix + q) for p, s, q in part.transitions)
        initial.extend(prefix + q for q in part.initial)
        accepting.extend(prefix + q for q in part.accepting)
    return Nfa(states, alphabet, transitions, initial, accepting, name=name)


def remove_states(a: Nfa, removed: Iterable[State]) -> Nfa:
    """Drop states together with every transition touching them."""
    removed = set(removed)
    return Nfa(
        [q for q in a.states if q not in removed],
        a.alphabet,
        [(p, s, q) for p, s, q in a.transitions if p not in removed and q not in removed],
        a.initial - removed,
        a.accepting - removed,
        name=a.name,
    )
