"""
Brute-force ground truth by enumerating words.

Everything here runs plain membership over words up to a length bound, in
length-lexicographic order of the declared alphabet. A returned word is a
refutation; None only means nothing was found within the bound.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Optional, Sequence, Tuple

from .automaton import MacroState, Nfa, Symbol, Word, require_same_alphabet
from .constants import DEFAULT_ORACLE_MAX_LEN
from .piecewise import KptWitness, subwords_k

logger = logging.getLogger(__name__)


def words_up_to(alphabet: Sequence[Symbol], max_length: int) -> Iterator[Word]:
    """All words of length at most max_length, shortest first, then lexicographic."""
    layer = [()]
    for length in range(max_length + 1):
        yield from layer
        if length < max_length:
            layer = [w + (s,) for w in layer for s in alphabet]


def _runs(a: Nfa, max_length: int) -> Iterator[Tuple[Word, MacroState]]:
    """Words with their macro-states, extending each prefix once."""
    layer = [((), a.initial)]
    for length in range(max_length + 1):
        yield from layer
        if length < max_length:
            layer = [(w + (s,), a.step(macro, s)) for w, macro in layer for s in a.alphabet]


@dataclass(frozen=True)
class LanguageSample:
    """The words of length at most max_length that an automaton accepts."""
    max_length: int
    accepted: FrozenSet[Word]

    def __contains__(self, word: object) -> bool:
        return word in self.accepted

    def __len__(self) -> int:
        return len(self.accepted)


def language_sample(a: Nfa, max_length: int = DEFAULT_ORACLE_MAX_LEN) -> LanguageSample:
    accepted = frozenset(w for w, macro in _runs(a, max_length) if macro & a.accepting)
    return LanguageSample(max_length, accepted)


def oracle_universal(a: Nfa, max_length: int = DEFAULT_ORACLE_MAX_LEN) -> Optional[Word]:
    """Shortest rejected word of length at most max_length."""
    for word, macro in _runs(a, max_length):
        if not macro & a.accepting:
            return word
    return None


def oracle_equivalent(a: Nfa, b: Nfa, max_length: int = DEFAULT_ORACLE_MAX_LEN) -> Optional[Word]:
    """
    Shortest word of length at most max_length accepted by exactly one of a and b.

    Raises:
        AlphabetMismatchError: If the alphabets differ
    """
    require_same_alphabet(a, b)
    for word in words_up_to(a.alphabet, max_length):
        if a.accepts(word) != b.accepts(word):
            return word
    return None


def oracle_kpt(a: Nfa, k: int, max_length: int = DEFAULT_ORACLE_MAX_LEN) -> Optional[KptWitness]:
    """
    Search for u ∼k v of length at most max_length with different acceptance.

    Words are grouped by their subword set, so each class is checked once.
    The first conflicting class in enumeration order gives the witness, made
    of the first accepted and the first rejected word in that class.
    """
    classes: Dict[FrozenSet[Word], Dict[bool, Word]] = {}
    for word, macro in _runs(a, max_length):
        signature = frozenset(subwords_k(word, k))
        first = classes.setdefault(signature, {})
        first.setdefault(bool(macro & a.accepting), word)
        if len(first) == 2:
            logger.debug(f"oracle found a {k}-PT conflict among {len(classes)} classes")
            return KptWitness.build(a, first[True], first[False], k)
    return None
