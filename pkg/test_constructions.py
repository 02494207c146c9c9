import random
import unittest
from math import comb

from piecewise_automata.automaton import Nfa, determinize, is_empty, minimize
from piecewise_automata.classify import classify, is_ptnfa, is_rponfa
from piecewise_automata.constants import LETTER_PREFIX
from piecewise_automata.constructions import (
    Cnf3Formula,
    Dag,
    DnfFormula,
    a_kn,
    akn_parameters,
    akn_state,
    clause_offset,
    cnf3_to_unary_nfa,
    crt,
    dag_gadget,
    dnf_to_podfa_family,
    dnf_to_ptnfa,
    dnf_to_rponfa,
    first_primes,
    mk_gadget,
    pt_hardness_gadget,
    strip_redundant,
    w_word,
)
from piecewise_automata.deciders import intersection_witness, universal
from piecewise_automata.exceptions import (
    EmptyLanguageError,
    InvalidDagError,
    InvalidFormulaError,
    NotRpoNfaError,
    WrongInputShapeError,
)
from piecewise_automata.oracle import language_sample, oracle_equivalent
from piecewise_automata.piecewise import is_kpt, is_pt, is_unary_pt
from piecewise_automata.random_automata import (
    random_cnf3,
    random_dag,
    random_dnf,
    random_nfa,
    random_ponfa,
    random_rponfa,
)

EXAMPLE_DNF = DnfFormula(3, [(1, 2), (-1, 3)])


class TestWWords(unittest.TestCase):
    def test_small_words(self):
        self.assertEqual(w_word(2, 2), ("a1", "a1", "a2", "a1", "a2"))
        self.assertEqual(w_word(1, 1), ("a1",))
        self.assertEqual(w_word(0, 5), ())

    def test_length_and_letter_count(self):
        for k in range(1, 5):
            for n in range(1, 5):
                word = w_word(k, n)
                self.assertEqual(len(word), comb(k + n, n) - 1)
                self.assertEqual(word.count(f"a{n}"), k)

    def test_akn_size(self):
        for k, n in [(1, 1), (2, 2), (3, 1), (1, 3)]:
            a = a_kn(k, n)
            self.assertEqual(len(a), n * (2 * k + 1) + 1)
            self.assertEqual(akn_parameters(a), (k, n))

    def test_akn_rejects_exactly_w(self):
        for k, n in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2)]:
            a = a_kn(k, n)
            word = w_word(k, n)
            bound = len(word) + 1
            sample = language_sample(a, bound)
            total = sum(n ** length for length in range(bound + 1))
            self.assertNotIn(word, sample)
            self.assertEqual(len(sample), total - 1, (k, n))

    def test_rejection_from_escape_states(self):
        # w is rejected from (k+1;i) whenever a_i·w is a suffix of W_{k,n}
        for k in range(1, 4):
            for n in range(1, 4):
                a = a_kn(k, n)
                word = w_word(k, n)
                for position, symbol in enumerate(word):
                    i = int(symbol[len(LETTER_PREFIX):])
                    reached = a.post_image({akn_state(k + 1, i)}, word[position + 1:])
                    self.assertFalse(reached & a.accepting, (k, n, position))

    def test_akn_long_words(self):
        a = a_kn(3, 4)
        word = w_word(3, 4)
        self.assertFalse(a.accepts(word))
        rng = random.Random(11)
        for _ in range(2000):
            candidate = tuple(rng.choice(a.alphabet) for _ in range(rng.randint(0, len(word) + 2)))
            if candidate != word:
                self.assertTrue(a.accepts(candidate))

    def test_strip_redundant(self):
        stripped = strip_redundant(a_kn(1, 2))
        self.assertEqual(len(stripped), len(a_kn(1, 2)) - 2)
        self.assertIsNone(oracle_equivalent(a_kn(1, 2), stripped, 6))
        self.assertTrue(is_rponfa(stripped))
        with self.assertRaises(WrongInputShapeError):
            strip_redundant(Nfa(["p"], ["a1"], [], ["p"], []))


class TestDagGadget(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InvalidDagError):
            Dag(2, [(0, 1), (1, 0)], 0, 1)
        with self.assertRaises(InvalidDagError):
            Dag(2, [(1, 0)], 0, 1)
        with self.assertRaises(InvalidDagError):
            Dag(2, [(0, 5)], 0, 1)

    def test_universal_iff_reachable(self):
        rng = random.Random(2)
        for _ in range(60):
            g = random_dag(rng, rng.randint(1, 6), 0.4)
            gadget = dag_gadget(g)
            self.assertTrue(is_ptnfa(gadget))
            self.assertEqual(universal(gadget).holds, g.reachable())


class TestDnfGadgets(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(InvalidFormulaError):
            DnfFormula(2, [])
        with self.assertRaises(InvalidFormulaError):
            DnfFormula(2, [(1, -1)])
        with self.assertRaises(InvalidFormulaError):
            DnfFormula(2, [(3,)])

    def test_example(self):
        self.assertFalse(EXAMPLE_DNF.is_valid())
        gadget = dnf_to_ptnfa(EXAMPLE_DNF)
        self.assertTrue(is_ptnfa(gadget))
        self.assertEqual(universal(gadget).witness, ("0", "0", "0"))
        self.assertFalse(gadget.accepts(("0", "1", "0")))
        self.assertTrue(gadget.accepts(("1", "1", "0")))
        self.assertTrue(gadget.accepts(("0", "1")))

    def test_rponfa_size(self):
        gadget = dnf_to_rponfa(EXAMPLE_DNF)
        self.assertEqual(len(gadget), 2 * (3 + 1) + 3)
        self.assertTrue(is_rponfa(gadget))
        self.assertFalse(is_pt(gadget).holds)

    def test_random_formulas(self):
        rng = random.Random(4)
        for _ in range(50):
            phi = random_dnf(rng, rng.randint(1, 4), rng.randint(1, 4))
            valid = phi.is_valid()
            self.assertEqual(universal(dnf_to_ptnfa(phi)).holds, valid)
            self.assertEqual(is_pt(dnf_to_rponfa(phi)).holds, valid)
            family = dnf_to_podfa_family(phi)
            self.assertTrue(all(d.is_deterministic() and d.is_complete() for d in family))
            common = intersection_witness(family + [_length(phi.vars)])
            self.assertEqual(common is None, valid)


def _length(n):
    """Complete DFA for {0,1}^n."""
    states = [f"l{i}" for i in range(n + 2)]
    transitions = [(states[i], s, states[min(i + 1, n + 1)]) for i in range(n + 2) for s in "01"]
    return Nfa(states, ["0", "1"], transitions, [states[0]], [states[n]])


class TestUnaryCnfGadget(unittest.TestCase):
    def test_number_theory(self):
        self.assertEqual(first_primes(5), [2, 3, 5, 7, 11])
        self.assertEqual(crt([(0, 2), (1, 3), (0, 5)]), 10)
        self.assertEqual(clause_offset((1, -2, 3), [2, 3, 5]), (10, 30))

    def test_validation(self):
        with self.assertRaises(InvalidFormulaError):
            Cnf3Formula(3, [(1, 2, 3, -1)])
        with self.assertRaises(InvalidFormulaError):
            Cnf3Formula(3, [(1, -1)])

    def test_universal_iff_unsatisfiable(self):
        rng = random.Random(6)
        for _ in range(50):
            phi = random_cnf3(rng, rng.randint(1, 3), rng.randint(1, 5))
            gadget = cnf3_to_unary_nfa(phi)
            satisfiable = phi.is_satisfiable()
            self.assertEqual(universal(gadget).holds, not satisfiable)
            if satisfiable:
                self.assertFalse(is_unary_pt(gadget))

    def test_unsatisfiable_example(self):
        phi = Cnf3Formula(1, [(1,), (-1,)])
        self.assertTrue(universal(cnf3_to_unary_nfa(phi)).holds)


class TestReductionsToPiecewiseTestability(unittest.TestCase):
    def test_mk_gadget(self):
        universal_nfa = Nfa(["p"], ["a"], [("p", "a", "p")], ["p"], ["p"])
        self.assertTrue(is_kpt(mk_gadget(universal_nfa, 2), 2).holds)
        only_a = Nfa(["p", "q"], ["a"], [("p", "a", "q")], ["p"], ["q"])
        self.assertFalse(is_kpt(mk_gadget(only_a, 2), 2).holds)
        with self.assertRaises(EmptyLanguageError):
            mk_gadget(Nfa(["p"], ["a"], [], ["p"], []), 1)

    def test_mk_gadget_chain_length(self):
        m = Nfa(["p"], ["a", "b"], [("p", "a", "p")], ["p"], ["p"])
        self.assertEqual(len(mk_gadget(m, 3)), 1 + 2 * 3)

    def test_mk_gadget_is_kpt_iff_universal(self):
        rng = random.Random(14)
        for k in (1, 2, 3):
            checked = 0
            while checked < 50:
                if rng.random() < 0.5:
                    m = random_nfa(rng, rng.randint(1, 4), 2, density=0.4)
                else:
                    m = random_ponfa(rng, rng.randint(1, 4), 2, density=0.4, complete=True,
                                     self_loop_deterministic=True)
                    if rng.random() < 0.5:
                        m = Nfa(m.states, m.alphabet, m.transitions, m.initial, m.states)
                if is_empty(m)[0]:
                    continue
                checked += 1
                gadget = mk_gadget(m, k)
                decision = is_kpt(gadget, k)
                self.assertEqual(decision.holds, universal(m).holds, (k, m.to_dict()))
                if not decision.holds:
                    self.assertTrue(decision.witness.revalidate(gadget))

    def test_pt_hardness_gadget(self):
        rng = random.Random(8)
        for _ in range(40):
            a = random_rponfa(rng, rng.randint(1, 4), 2, density=0.5)
            b = pt_hardness_gadget(a)
            self.assertTrue(is_rponfa(b))
            self.assertEqual(is_pt(b).holds, universal(a).holds)

    def test_pt_hardness_needs_rponfa(self):
        figure = Nfa(["p", "q"], ["a"], [("p", "a", "p"), ("p", "a", "q")], ["p"], ["q"])
        with self.assertRaises(NotRpoNfaError):
            pt_hardness_gadget(figure)

    def test_gadget_profiles(self):
        self.assertTrue(classify(a_kn(2, 3)).ptnfa)
        self.assertEqual(len(minimize(determinize(a_kn(1, 2)))), len(w_word(1, 2)) + 2)


if __name__ == '__main__':
    unittest.main()
