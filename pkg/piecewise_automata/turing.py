"""
Reduction from space-bounded Turing machine acceptance to ptNFA universality.

A word over Π = {a1..an} × (Δ ∪ {#, $}) carries two tracks. The first track
must spell W_{n,n}, otherwise a copy of A_{n,n} accepts it. The second track
must encode an accepting run #w1#w2#...#wm# padded with $, otherwise one of
the component automata below accepts it:

    short     words shorter than one configuration
    start_j   a wrong j-th letter of the initial configuration
    step      a cell that does not follow from the previous configuration
    cut       an incomplete last configuration
    reject    a last configuration without the head on the first cell in q_f
    padding   more than p trailing $
    order     a $ followed by anything else

So the union is universal iff the machine does not accept x. Every component
is a ptNFA. Whenever a component needs a transition it does not define, it
moves into state (n+1;i) of its A_{n,n} copy, from where the rest of W_{n,n}
is rejected.
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .automaton import Nfa, State, Symbol, Word, disjoint_union
from .constants import (
    CELL_JOIN,
    DEFAULT_TM_MAX_STATES,
    DEFAULT_TM_MAX_SYMBOLS,
    FILLER,
    MAX_STATE,
    MOVES,
    NO_HEAD,
    PRODUCT_JOIN,
    SEPARATOR,
)
from .constructions import a_kn, akn_state, letter, w_word
from .exceptions import CapExceededError, InvalidTuringMachineError, TmAssumptionError

logger = logging.getLogger(__name__)

Configuration = Tuple[Tuple[str, ...], int, str]

_RESERVED = (SEPARATOR, FILLER, PRODUCT_JOIN, CELL_JOIN)


@dataclass(frozen=True)
class ProductSymbol:
    """A letter of Π: a W-word letter paired with a run-encoding mark."""
    first: Symbol
    second: str

    @property
    def name(self) -> Symbol:
        return f"{self.first}{PRODUCT_JOIN}{self.second}"

    @classmethod
    def parse(cls, name: Symbol) -> "ProductSymbol":
        first, _, second = name.partition(PRODUCT_JOIN)
        return cls(first, second)


def cell_mark(symbol: str, head: Optional[str]) -> str:
    """Encoding of one tape cell; head is the machine state when the head is here."""
    return f"{symbol}{CELL_JOIN}{head if head is not None else NO_HEAD}"


def parse_cell(mark: str) -> Optional[Tuple[str, Optional[str]]]:
    """(symbol, head) for a cell mark, None for # and $."""
    if mark in (SEPARATOR, FILLER):
        return None
    symbol, _, head = mark.partition(CELL_JOIN)
    return symbol, (None if head == NO_HEAD else head)


def _check_token(kind: str, name: Any) -> None:
    if not isinstance(name, str) or not name or name == NO_HEAD:
        raise InvalidTuringMachineError(f"{kind} names must be nonempty strings other than {NO_HEAD!r}")
    if any(ch.isspace() or ch == '"' for ch in name) or any(r in name for r in _RESERVED):
        raise InvalidTuringMachineError(f"{kind} name {name!r} uses a reserved character")


@dataclass(frozen=True)
class TmSpec:
    """
    Deterministic Turing machine with a fixed tape length.

    The head stays put when it would leave the tape. The reduction assumes
    q0 != qf, that qf loops without changing anything, and that the machine
    accepts with the head on the first cell.
    """
    states: Tuple[str, ...]
    tape: Tuple[str, ...]
    input: Tuple[str, ...]
    blank: str
    q0: str
    qf: str
    delta: Tuple[Tuple[str, str, str, str, str], ...]
    space: int
    _table: Dict[Tuple[str, str], Tuple[str, str, str]] = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        for attribute in ("states", "tape", "input", "delta"):
            object.__setattr__(self, attribute, tuple(getattr(self, attribute)))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        for state in self.states:
            _check_token("State", state)
        for symbol in self.tape:
            _check_token("Tape symbol", symbol)
        if len(set(self.states)) != len(self.states) or len(set(self.tape)) != len(self.tape):
            raise InvalidTuringMachineError("Duplicate state or tape symbol")
        if self.blank not in self.tape or self.blank in self.input:
            raise InvalidTuringMachineError("The blank must be a tape symbol outside the input alphabet")
        if not set(self.input) <= set(self.tape):
            raise InvalidTuringMachineError("Input symbols must be tape symbols")
        if self.q0 not in self.states or self.qf not in self.states:
            raise InvalidTuringMachineError("q0 and qf must be declared states")
        if not isinstance(self.space, int) or self.space < 1:
            raise InvalidTuringMachineError(f"Space bound must be a positive integer, got {self.space!r}")

        table = {}
        for row in self.delta:
            if len(row) != 5:
                raise InvalidTuringMachineError(f"Transitions are [q, t, q', t', move], got {list(row)}")
            q, t, q2, t2, move = row
            if q not in self.states or q2 not in self.states or t not in self.tape or t2 not in self.tape:
                raise InvalidTuringMachineError(f"Transition {list(row)} uses an undeclared name")
            if move not in MOVES:
                raise InvalidTuringMachineError(f"Unknown move: {move!r}. Available: {list(MOVES)}")
            if (q, t) in table:
                raise InvalidTuringMachineError(f"Two transitions for ({q}, {t})")
            table[(q, t)] = (q2, t2, move)
        missing = [(q, t) for q in self.states for t in self.tape if (q, t) not in table]
        if missing:
            raise InvalidTuringMachineError(f"Transition table is not total, missing {missing[0]}")
        object.__setattr__(self, "_table", table)

        if self.q0 == self.qf:
            raise TmAssumptionError("The initial and accepting states must differ")
        for t in self.tape:
            if table[(self.qf, t)] != (self.qf, t, "S"):
                raise TmAssumptionError(f"The accepting state must loop without changes on {t!r}")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TmSpec":
        keys = ("states", "tape", "input", "blank", "q0", "qf", "delta", "space")
        missing = [k for k in keys if k not in data]
        if missing:
            raise InvalidTuringMachineError(f"Missing keys: {missing}")
        return cls(**{k: data[k] for k in keys})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "states": list(self.states), "tape": list(self.tape), "input": list(self.input),
            "blank": self.blank, "q0": self.q0, "qf": self.qf,
            "delta": [list(row) for row in self.delta], "space": self.space,
        }

    def transition(self, state: str, symbol: str) -> Tuple[str, str, str]:
        return self._table[(state, symbol)]

    def initial_configuration(self, x: Sequence[str]) -> Configuration:
        x = tuple(x)
        if len(x) > self.space:
            raise InvalidTuringMachineError(f"Input of length {len(x)} does not fit {self.space} cells")
        for symbol in x:
            if symbol not in self.input:
                raise InvalidTuringMachineError(
                    f"Unknown input symbol: {symbol!r}. Available: {list(self.input)}")
        return x + (self.blank,) * (self.space - len(x)), 0, self.q0

    def step(self, config: Configuration) -> Configuration:
        tape, head, state = config
        state2, written, move = self.transition(state, tape[head])
        tape = tape[:head] + (written,) + tape[head + 1:]
        if move == "L":
            head = max(head - 1, 0)
        elif move == "R":
            head = min(head + 1, self.space - 1)
        return tape, head, state2

    def run(self, x: Sequence[str]) -> Tuple[bool, List[Configuration], int]:
        """
        Simulate until q_f or a repeated configuration.

        Returns:
            (accepted, distinct configurations in order, index the run loops
            back to); an accepting run loops on its last configuration

        Raises:
            TmAssumptionError: If q_f is reached with the head off the first cell
        """
        config = self.initial_configuration(x)
        seen: Dict[Configuration, int] = {}
        configs: List[Configuration] = []
        while config not in seen:
            seen[config] = len(configs)
            configs.append(config)
            if config[2] == self.qf:
                if config[1] != 0:
                    raise TmAssumptionError("The machine accepts with the head away from the first cell")
                return True, configs, len(configs) - 1
            config = self.step(config)
        return False, configs, seen[config]

    def accepts(self, x: Sequence[str]) -> bool:
        return self.run(x)[0]

    def cells(self, config: Configuration) -> List[str]:
        tape, head, state = config
        return [cell_mark(t, state if j == head else None) for j, t in enumerate(tape)]

    def marks(self) -> List[str]:
        """Δ ∪ {#, $} in a fixed order."""
        heads: List[Optional[str]] = list(self.states) + [None]
        return [SEPARATOR, FILLER] + [cell_mark(t, h) for t in self.tape for h in heads]

    def successor_mark(self, left: str, center: str, right: str) -> str:
        """
        The mark one configuration later at the position of center.

        # and $ are kept. A cell changes when the head is on it or moves onto
        it from a neighbour; the tape ends are the cells next to #.
        """
        cell = parse_cell(center)
        if cell is None:
            return center
        symbol, head = cell
        if head is not None:
            state2, written, move = self.transition(head, symbol)
            stays = move == "S" or (move == "L" and left == SEPARATOR) or (move == "R" and right == SEPARATOR)
            return cell_mark(written, state2 if stays else None)
        for neighbour, towards in ((left, "R"), (right, "L")):
            other = parse_cell(neighbour)
            if other is not None and other[1] is not None:
                state2, _, move = self.transition(other[1], other[0])
                if move == towards:
                    return cell_mark(symbol, state2)
        return cell_mark(symbol, None)


def reduction_order(m: TmSpec) -> int:
    """Least n with |W_{n,n}| >= 1 + |Δ|^p (p + 1)."""
    cells = len(m.tape) * (len(m.states) + 1)
    needed = 1 + cells ** m.space * (m.space + 1)
    n = 1
    while comb(2 * n, n) - 1 < needed:
        n += 1
    return n


@dataclass
class TmReduction:
    """The reduction automaton together with the parameters it was built from."""
    nfa: Nfa
    n: int
    alphabet: Tuple[Symbol, ...]
    components: Tuple[str, ...]
    w_length: int
    initial_marks: Tuple[str, ...]


class _Component:
    """Accumulates one component automaton; completion edges go into the A_{n,n} copy."""

    def __init__(self, builder: "_ReductionBuilder", with_copy: bool):
        self.builder = builder
        self.states: List[State] = []
        self.transitions = set()
        self.initial: List[State] = []
        self.accepting: List[State] = []
        self.new_states: List[State] = []
        self.defined: Dict[State, set] = {}
        if with_copy:
            akn = builder.akn
            self.states += list(akn.states)
            self.initial += list(akn.ordered(akn.initial))
            self.accepting += list(akn.ordered(akn.accepting))
            self.transitions |= builder.encoded_akn

    def state(self, name: State, accepting: bool = False) -> State:
        self.states.append(name)
        self.new_states.append(name)
        self.defined[name] = set()
        if accepting:
            self.accepting.append(name)
        return name

    def add(self, source: State, symbol: Symbol, target: State) -> None:
        self.transitions.add((source, symbol, target))
        if source in self.defined:
            self.defined[source].add(symbol)

    def hook(self, marks: Sequence[str], target: State) -> None:
        """Edges from accepting A_{n,n} states into target on letters they do not loop on."""
        for q, letters in self.builder.hooks:
            for a_i in letters:
                for mark in marks:
                    self.add(q, self.builder.symbol(a_i, mark), target)

    def complete(self) -> None:
        for q in self.new_states:
            for a_i in self.builder.letters:
                for mark in self.builder.marks:
                    symbol = self.builder.symbol(a_i, mark)
                    if symbol not in self.defined[q]:
                        self.add(q, symbol, self.builder.escape[a_i])

    def to_nfa(self, name: str) -> Nfa:
        self.complete()
        return Nfa(self.states, self.builder.alphabet, self.transitions, self.initial,
                   self.accepting, name=name)


class _ReductionBuilder:
    def __init__(self, m: TmSpec, x: Sequence[str], max_states: int, max_symbols: int):
        self.m = m
        self.p = m.space
        self.n = reduction_order(m)
        self.letters = [letter(i) for i in range(1, self.n + 1)]
        self.marks = m.marks()
        self.cell_marks = self.marks[2:]
        self.alphabet = tuple(self.symbol(a, d) for a in self.letters for d in self.marks)
        if len(self.alphabet) > max_symbols:
            raise CapExceededError("reduction alphabet", max_symbols)
        copy_size = self.n * (2 * self.n + 1) + 1
        estimate = ((self.p + 6) * copy_size + (self.p + 3) + 3
                    + len(self.marks) + len(self.marks) ** 2 + len(self.marks) ** 3 * self.p
                    + sum(j + 1 for j in range(self.p + 2)) + 4 * self.p + 4)
        if estimate > max_states:
            raise CapExceededError("reduction state count", max_states)

        self.initial_marks = [SEPARATOR] + m.cells(m.initial_configuration(x)) + [SEPARATOR]
        self.akn = a_kn(self.n, self.n)
        self.encoded_akn = {
            (p, self.symbol(a_i, mark), q) for p, a_i, q in self.akn.transitions for mark in self.marks
        }
        self.escape = {a_i: akn_state(self.n + 1, i) for i, a_i in enumerate(self.letters, 1)}
        self.hooks = [
            (q, [a_i for a_i in self.letters if a_i not in self.akn.self_loops(q)])
            for q in self.akn.ordered(self.akn.accepting) if q != MAX_STATE
        ]

    @staticmethod
    def symbol(a_i: Symbol, mark: str) -> Symbol:
        return ProductSymbol(a_i, mark).name

    def every(self, marks: Sequence[str]) -> Iterator[Tuple[Symbol, Symbol]]:
        for a_i in self.letters:
            for mark in marks:
                yield a_i, self.symbol(a_i, mark)

    def short(self) -> Nfa:
        """Every word of length at most p + 1."""
        part = _Component(self, with_copy=False)
        chain = [part.state(f"s{i}", accepting=True) for i in range(self.p + 2)]
        sink = part.state("sink")
        for here, there in zip(chain, chain[1:] + [sink]):
            for _, symbol in self.every(self.marks):
                part.add(here, symbol, there)
        for _, symbol in self.every(self.marks):
            part.add(sink, symbol, sink)
        part.initial.append(chain[0])
        return part.to_nfa("short")

    def start(self, j: int) -> Nfa:
        """Words whose j-th mark differs from the initial configuration."""
        part = _Component(self, with_copy=True)
        chain = [part.state(f"c{i}") for i in range(j + 1)]
        part.initial.append(chain[0])
        for here, there in zip(chain, chain[1:]):
            for _, symbol in self.every(self.marks):
                part.add(here, symbol, there)
        for a_i in self.letters:
            for mark in self.marks:
                target = self.escape[a_i] if mark == self.initial_marks[j] else MAX_STATE
                part.add(chain[-1], self.symbol(a_i, mark), target)
        return part.to_nfa(f"start_{j}")

    def step(self) -> Nfa:
        """
        Words with a window whose successor p + 1 positions later is wrong.

        A tree over the three window marks hangs off the accepting A_{n,n}
        states; after p - 1 further letters a mark other than the successor or
        $ leads to max.
        """
        part = _Component(self, with_copy=True)
        level1 = {d: part.state(f"t[{d}]") for d in self.marks}
        for left, node in level1.items():
            part.hook([left], node)
        for left in self.marks:
            for center in self.marks:
                node2 = part.state(f"t[{left},{center}]")
                for _, symbol in self.every([center]):
                    part.add(level1[left], symbol, node2)
                for right in self.marks:
                    chain = [part.state(f"t[{left},{center},{right}]_{i}") for i in range(self.p)]
                    for _, symbol in self.every([right]):
                        part.add(node2, symbol, chain[0])
                    for here, there in zip(chain, chain[1:]):
                        for _, symbol in self.every(self.marks):
                            part.add(here, symbol, there)
                    expected = self.m.successor_mark(left, center, right)
                    for a_i in self.letters:
                        for mark in self.marks:
                            if mark not in (expected, FILLER):
                                part.add(chain[-1], self.symbol(a_i, mark), MAX_STATE)
        return part.to_nfa("step")

    def cut(self) -> Nfa:
        """Words ending in # followed by 1..p non-$ marks and at most p $."""
        part = _Component(self, with_copy=True)
        after = part.state("g")
        part.hook([SEPARATOR], after)
        cells = [part.state(f"d{r}", accepting=True) for r in range(1, self.p + 1)]
        fillers = [part.state(f"z{j}", accepting=True) for j in range(1, self.p + 1)]
        not_filler = [d for d in self.marks if d != FILLER]
        for here, there in zip([after] + cells[:-1], cells):
            for _, symbol in self.every(not_filler):
                part.add(here, symbol, there)
        for here in cells:
            for _, symbol in self.every([FILLER]):
                part.add(here, symbol, fillers[0])
        for here, there in zip(fillers, fillers[1:]):
            for _, symbol in self.every([FILLER]):
                part.add(here, symbol, there)
        return part.to_nfa("cut")

    def reject(self) -> Nfa:
        """Words whose last configuration does not start with the head in q_f."""
        part = _Component(self, with_copy=True)
        not_final = [d for d in self.cell_marks if parse_cell(d)[1] != self.m.qf]
        cells = [part.state(f"h{i}") for i in range(1, self.p + 1)]
        part.hook(not_final, cells[0])
        for here, there in zip(cells, cells[1:]):
            for _, symbol in self.every(self.marks):
                part.add(here, symbol, there)
        ends = [part.state(f"e{j}", accepting=True) for j in range(self.p + 1)]
        for _, symbol in self.every([SEPARATOR]):
            part.add(cells[-1], symbol, ends[0])
        for here, there in zip(ends, ends[1:]):
            for _, symbol in self.every([FILLER]):
                part.add(here, symbol, there)
        return part.to_nfa("reject")

    def padding(self) -> Nfa:
        """Words with p + 1 consecutive $."""
        part = _Component(self, with_copy=True)
        fillers = [part.state(f"u{j}") for j in range(1, self.p + 1)]
        part.hook([FILLER], fillers[0])
        for here, there in zip(fillers, fillers[1:] + [MAX_STATE]):
            for _, symbol in self.every([FILLER]):
                part.add(here, symbol, there)
        return part.to_nfa("padding")

    def order(self) -> Nfa:
        """Words with a $ followed by some other mark."""
        before, inside, after = "o0", "o1", "o2"
        transitions = set()
        for _, symbol in self.every(self.marks):
            is_filler = ProductSymbol.parse(symbol).second == FILLER
            transitions.add((before, symbol, inside if is_filler else before))
            transitions.add((inside, symbol, inside if is_filler else after))
            transitions.add((after, symbol, after))
        return Nfa([before, inside, after], self.alphabet, transitions, [before], [after], name="order")

    def build(self) -> TmReduction:
        parts = [("short", self.short())]
        parts += [(f"start_{j}", self.start(j)) for j in range(self.p + 2)]
        parts += [("step", self.step()), ("cut", self.cut()), ("reject", self.reject()),
                  ("padding", self.padding()), ("order", self.order())]
        nfa = disjoint_union([(f"{label}:", part) for label, part in parts], name="tm-reduction")
        logger.info(f"TM reduction: n={self.n}, |Π|={len(self.alphabet)}, "
                    f"{len(nfa)} states in {len(parts)} components")
        return TmReduction(
            nfa=nfa,
            n=self.n,
            alphabet=self.alphabet,
            components=tuple(label for label, _ in parts),
            w_length=len(w_word(self.n, self.n)),
            initial_marks=tuple(self.initial_marks),
        )


def build_tm_reduction(m: TmSpec, x: Sequence[str],
                       max_states: int = DEFAULT_TM_MAX_STATES,
                       max_symbols: int = DEFAULT_TM_MAX_SYMBOLS) -> TmReduction:
    """
    Build the reduction automaton and its parameters.

    Raises:
        CapExceededError: If Π or the state count would exceed the caps
        TmAssumptionError: If the machine breaks the normal-form assumptions
    """
    return _ReductionBuilder(m, x, max_states, max_symbols).build()


def tm_to_ptnfa(m: TmSpec, x: Sequence[str],
                max_states: int = DEFAULT_TM_MAX_STATES,
                max_symbols: int = DEFAULT_TM_MAX_SYMBOLS) -> Nfa:
    """ptNFA over Π that is universal iff m does not accept x."""
    return build_tm_reduction(m, x, max_states, max_symbols).nfa


def _configurations(m: TmSpec, x: Sequence[str]) -> Tuple[bool, Iterator[Configuration], int]:
    accepted, configs, loop = m.run(x)

    def sequence() -> Iterator[Configuration]:
        yield from configs
        while True:
            yield from configs[loop:]

    return accepted, sequence(), len(configs)


def encode_run(m: TmSpec, x: Sequence[str], n: Optional[int] = None,
               require_accepting: bool = True) -> Optional[Word]:
    """
    The word over Π whose first track is W_{n,n} and whose second track is the run.

    Configurations follow each other separated by #; once the run has been
    written the last configuration is repeated while a whole one still fits,
    and the remaining positions are filled with $.

    Args:
        m: The machine
        x: Its input
        n: W-word parameter (the reduction's own choice when None)
        require_accepting: Return None for a rejecting run instead of encoding it

    Raises:
        CapExceededError: If an accepting run does not fit into W_{n,n}
    """
    accepted, configs, count = _configurations(m, x)
    if require_accepting and not accepted:
        return None
    n = reduction_order(m) if n is None else n
    first_track = w_word(n, n)
    second_track = [SEPARATOR]
    for written, config in enumerate(configs):
        if len(second_track) + m.space + 1 > len(first_track):
            if accepted and written < count:
                raise CapExceededError("run encoding length", len(first_track))
            break
        second_track += m.cells(config) + [SEPARATOR]
    second_track += [FILLER] * (len(first_track) - len(second_track))
    return tuple(ProductSymbol(a, d).name for a, d in zip(first_track, second_track))
