import os
import random
import unittest
from functools import reduce

from piecewise_automata.automaton import Nfa, depth, product_intersection
from piecewise_automata.constructions import Dag, a_kn, dag_gadget, strip_redundant, w_word
from piecewise_automata.deciders import (
    BoolMatrix,
    Decision,
    equivalent,
    includes,
    intersection_witness,
    unary_eventual_behavior,
    unary_includes,
    unary_power_image,
    universal,
)
from piecewise_automata.exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    InvariantViolationError,
    NotUnaryError,
)
from piecewise_automata.oracle import language_sample, oracle_universal
from piecewise_automata.random_automata import random_ponfa, random_unary_nfa

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def ends_in_a():
    return Nfa.load(os.path.join(FIXTURES, "ends_in_a.json"))


def all_words(alphabet):
    return Nfa(["p"], alphabet, [("p", s, "p") for s in alphabet], ["p"], ["p"], name="all")


def cycle(length, accepted, symbol="0"):
    states = [f"c{i}" for i in range(length)]
    transitions = [(states[i], symbol, states[(i + 1) % length]) for i in range(length)]
    return Nfa(states, [symbol], transitions, [states[0]], [states[i] for i in accepted])


class TestDecision(unittest.TestCase):
    def test_witness_iff_fails(self):
        self.assertTrue(Decision(True))
        self.assertFalse(Decision(False, ("a",)))
        with self.assertRaises(InvariantViolationError):
            Decision(True, ("a",))
        with self.assertRaises(InvariantViolationError):
            Decision(False)

    def test_to_dict(self):
        self.assertEqual(Decision(False, ("a", "b")).to_dict(), {"holds": False, "witness": ["a", "b"]})


class TestUniversality(unittest.TestCase):
    def test_all_accepting_dfa(self):
        self.assertTrue(universal(all_words(["a", "b"])).holds)

    def test_akn_rejects_only_w(self):
        decision = universal(a_kn(2, 2))
        self.assertFalse(decision.holds)
        self.assertEqual(decision.witness, ("a1", "a1", "a2", "a1", "a2"))
        self.assertEqual(decision.witness, w_word(2, 2))

    def test_ends_in_a(self):
        self.assertEqual(universal(ends_in_a()).witness, ())

    def test_dag_gadget_witness_length(self):
        decision = universal(dag_gadget(Dag(3, [(0, 1)], 0, 2)))
        self.assertEqual(decision.witness, ("a", "a"))
        self.assertTrue(universal(dag_gadget(Dag(3, [(0, 1), (1, 2)], 0, 2))).holds)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            universal(a_kn(2, 3), max_macrostates=3)

    def test_agrees_with_oracle(self):
        rng = random.Random(1)
        for _ in range(200):
            a = random_ponfa(rng, rng.randint(1, 5), 2, density=0.4)
            decision = universal(a)
            found = oracle_universal(a, 6)
            if found is not None:
                self.assertFalse(decision.holds)
                self.assertEqual(decision.witness, found)
            elif not decision.holds:
                self.assertGreater(len(decision.witness), 6)


class TestInclusionAndEquivalence(unittest.TestCase):
    def test_includes(self):
        self.assertTrue(includes(ends_in_a(), all_words(["a", "b"])).holds)
        decision = includes(all_words(["a", "b"]), ends_in_a())
        self.assertEqual(decision.witness, ())

    def test_alphabets_must_match(self):
        with self.assertRaises(AlphabetMismatchError):
            includes(ends_in_a(), all_words(["a"]))

    def test_equivalent(self):
        self.assertTrue(equivalent(a_kn(1, 2), strip_redundant(a_kn(1, 2))).holds)
        decision = equivalent(a_kn(1, 1), all_words(["a1"]))
        self.assertEqual(decision.witness, ("a1",))

    def test_intersection_witness(self):
        b = ends_in_a()
        ends_b = Nfa(["p", "q"], ["a", "b"],
                     [("p", "a", "p"), ("p", "b", "p"), ("p", "b", "q")], ["p"], ["q"])
        self.assertIsNone(intersection_witness([b, ends_b]))
        self.assertEqual(intersection_witness([b, all_words(["a", "b"])]), ("a",))


class TestIntersectionBound(unittest.TestCase):
    def test_short_member_exists(self):
        rng = random.Random(7)
        for _ in range(100):
            family = [random_ponfa(rng, rng.randint(1, 4), 2, density=0.5) for _ in range(rng.randint(1, 4))]
            word = intersection_witness(family)
            sample = language_sample(reduce(product_intersection, family), 12)
            self.assertEqual(word is None, len(sample) == 0)
            if word is None:
                continue
            self.assertLessEqual(len(word), sum(depth(a) for a in family))
            self.assertEqual(len(word), min(len(x) for x in sample.accepted))
            self.assertTrue(all(a.accepts(word) for a in family))


class TestUnary(unittest.TestCase):
    def test_requires_unary(self):
        with self.assertRaises(NotUnaryError):
            BoolMatrix.from_nfa(ends_in_a())
        with self.assertRaises(NotUnaryError):
            unary_eventual_behavior(ends_in_a())

    def test_small_powers(self):
        a = cycle(3, [0])
        self.assertEqual(unary_power_image(a, 0), a.initial)
        self.assertEqual(unary_power_image(a, 1), frozenset({"c1"}))
        self.assertEqual(unary_power_image(a, 3 * 10 ** 6 + 2), frozenset({"c2"}))

    def test_matrix_power(self):
        m = BoolMatrix.from_nfa(cycle(4, [0]))
        self.assertEqual(m.power(4), BoolMatrix.from_nfa(cycle(4, [0])).power(0))
        self.assertEqual(m.power(5), m)
        self.assertEqual(m @ m, m.power(2))

    def test_large_powers_agree_with_cycle_detection(self):
        rng = random.Random(3)
        for _ in range(200):
            a = random_unary_nfa(rng, rng.randint(1, 5), density=0.4)
            k = rng.randint(0, 2 ** 30)
            behavior = unary_eventual_behavior(a)
            self.assertEqual(bool(unary_power_image(a, k) & a.accepting), behavior.accepts_power(k))

    def test_eventual_behavior(self):
        behavior = unary_eventual_behavior(cycle(2, [0]))
        self.assertEqual((behavior.preperiod, behavior.period), (0, 2))
        self.assertEqual(behavior.cycle, (True, False))
        self.assertTrue(behavior.accepts_power(10 ** 9))

    def test_unary_includes(self):
        self.assertTrue(unary_includes(cycle(4, [0]), cycle(2, [0])).holds)
        decision = unary_includes(cycle(2, [0]), cycle(4, [0]))
        self.assertEqual(decision.witness, ("0", "0"))


if __name__ == '__main__':
    unittest.main()
