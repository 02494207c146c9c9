import os
import tempfile
import unittest

import networkx as nx

from piecewise_automata.automaton import (
    Nfa,
    accepts,
    complement,
    complete_with_sink,
    depth,
    determinize,
    disjoint_union,
    format_word,
    is_empty,
    minimize,
    pad_alphabets,
    parse_word,
    post_image,
    product_intersection,
    reachability_graph,
    subset_construction,
    with_alphabet,
)
from piecewise_automata.constructions import a_kn
from piecewise_automata.exceptions import (
    AlphabetMismatchError,
    BudgetExceededError,
    InvalidAutomatonError,
    NotDeterministicError,
    NotPartiallyOrderedError,
    SymbolNotInAlphabetError,
)

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def ends_in_a():
    return Nfa.load(os.path.join(FIXTURES, "ends_in_a.json"))


def even_a():
    """(aa)* over {a}."""
    return Nfa(["e", "o"], ["a"], [("e", "a", "o"), ("o", "a", "e")], ["e"], ["e"], name="even")


class TestNfaModel(unittest.TestCase):
    def test_membership(self):
        b = ends_in_a()
        self.assertTrue(accepts(b, ["a"]))
        self.assertTrue(accepts(b, ["b", "a", "a"]))
        self.assertFalse(accepts(b, ["a", "b"]))
        self.assertFalse(accepts(b, []))

    def test_unknown_symbol_in_word(self):
        with self.assertRaises(SymbolNotInAlphabetError):
            ends_in_a().accepts(["c"])

    def test_post_image(self):
        b = ends_in_a()
        self.assertEqual(post_image(b, ["0"], ["a"]), frozenset({"0", "1"}))
        self.assertEqual(post_image(b, ["0"], ["a", "b"]), frozenset({"0", "2"}))
        self.assertEqual(post_image(b, [], ["a"]), frozenset())
        with self.assertRaises(InvalidAutomatonError):
            post_image(b, ["9"], ["a"])

    def test_validation(self):
        with self.assertRaises(InvalidAutomatonError):
            Nfa(["p", "p"], ["a"], [], ["p"], [])
        with self.assertRaises(InvalidAutomatonError):
            Nfa(["p"], ["a"], [("p", "b", "p")], ["p"], [])
        with self.assertRaises(InvalidAutomatonError):
            Nfa(["p"], ["a"], [("p", "a", "q")], ["p"], [])
        with self.assertRaises(InvalidAutomatonError):
            Nfa(["p"], ["a"], [], ["q"], [])
        with self.assertRaises(InvalidAutomatonError):
            Nfa(["p"], ["a b"], [], ["p"], [])

    def test_structure_ignores_name(self):
        self.assertEqual(even_a(), Nfa(even_a().states, ["a"], even_a().transitions, ["e"], ["e"]))

    def test_predicates(self):
        b = ends_in_a()
        self.assertFalse(b.is_deterministic())
        self.assertTrue(b.is_complete())
        self.assertTrue(even_a().is_deterministic())
        self.assertEqual(b.self_loops("0"), frozenset({"a", "b"}))
        self.assertEqual(b.self_loops("1"), frozenset({"a"}))

    def test_words(self):
        self.assertEqual(parse_word(""), ())
        self.assertEqual(parse_word("ε"), ())
        self.assertEqual(parse_word(" a1  a2 "), ("a1", "a2"))
        self.assertEqual(format_word(("a1", "a2")), "a1 a2")


class TestSerialization(unittest.TestCase):
    def test_to_dict_key_order(self):
        data = ends_in_a().to_dict()
        self.assertEqual(list(data), ["name", "alphabet", "states", "initial", "accepting", "transitions"])
        self.assertEqual(data["transitions"][0], ["0", "a", "0"])

    def test_json_is_stable(self):
        b = ends_in_a()
        text = b.to_json()
        self.assertTrue(text.endswith("}\n"))
        self.assertEqual(Nfa.from_json(text), b)
        self.assertEqual(Nfa.from_json(text).to_json(), text)

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, "a.json")
            a_kn(1, 2).save(path)
            self.assertEqual(Nfa.load(path), a_kn(1, 2))

    def test_rejects_bad_json(self):
        with self.assertRaises(InvalidAutomatonError):
            Nfa.from_json("{")
        with self.assertRaises(InvalidAutomatonError):
            Nfa.from_dict({"alphabet": [], "states": [], "initial": [], "accepting": []})
        with self.assertRaises(InvalidAutomatonError):
            Nfa.from_dict({"alphabet": [], "states": [], "initial": [], "accepting": [],
                           "transitions": [], "extra": 1})
        with self.assertRaises(InvalidAutomatonError):
            Nfa.from_dict({"alphabet": ["a"], "states": ["p"], "initial": ["p"], "accepting": [],
                           "transitions": [["p", "a"]]})


class TestClassicalConstructions(unittest.TestCase):
    def test_subset_construction(self):
        dfa, macro = subset_construction(ends_in_a())
        self.assertTrue(dfa.is_deterministic())
        self.assertTrue(dfa.is_complete())
        self.assertEqual(len(dfa), 4)
        self.assertEqual(macro["S0"], frozenset({"0"}))
        self.assertEqual(macro["S1"], frozenset({"0", "1"}))

    def test_subset_construction_budget(self):
        with self.assertRaises(BudgetExceededError):
            subset_construction(ends_in_a(), max_states=2)

    def test_minimize(self):
        d = minimize(determinize(ends_in_a()))
        self.assertEqual(len(d), 2)
        self.assertEqual(d.states, ("m0", "m1"))
        for word in [(), ("a",), ("a", "b"), ("b", "a"), ("a", "a", "b", "a")]:
            self.assertEqual(d.accepts(word), ends_in_a().accepts(word))

    def test_minimize_needs_complete_dfa(self):
        with self.assertRaises(NotDeterministicError):
            minimize(ends_in_a())
        partial = Nfa(["p"], ["a", "b"], [("p", "a", "p")], ["p"], ["p"])
        with self.assertRaises(NotDeterministicError):
            minimize(partial)

    def test_complement(self):
        d = minimize(determinize(ends_in_a()))
        co = complement(d)
        self.assertTrue(co.accepts(()))
        self.assertTrue(co.accepts(("a", "b")))
        self.assertFalse(co.accepts(("a",)))
        self.assertEqual(complement(co).accepting, d.accepting)

    def test_complement_of_all_accepting_is_empty(self):
        d = Nfa(["p"], ["a"], [("p", "a", "p")], ["p"], ["p"])
        self.assertEqual(is_empty(complement(d)), (True, None))

    def test_product_intersection(self):
        d = minimize(determinize(ends_in_a()))
        product = product_intersection(d, complement(d))
        self.assertTrue(is_empty(product)[0])
        both = product_intersection(ends_in_a(), ends_in_a())
        self.assertTrue(both.accepts(("b", "a")))
        self.assertFalse(both.accepts(("a", "b")))

    def test_product_needs_same_alphabet(self):
        with self.assertRaises(AlphabetMismatchError):
            product_intersection(ends_in_a(), even_a())

    def test_is_empty_gives_shortest_word(self):
        self.assertEqual(is_empty(ends_in_a()), (False, ("a",)))
        self.assertEqual(is_empty(even_a()), (False, ()))
        no_accepting = Nfa(["p"], ["a"], [("p", "a", "p")], ["p"], [])
        self.assertEqual(is_empty(no_accepting), (True, None))

    def test_depth(self):
        self.assertEqual(depth(ends_in_a()), 2)
        self.assertEqual(depth(a_kn(1, 2)), 3)
        with self.assertRaises(NotPartiallyOrderedError):
            depth(even_a())

    def test_reachability_graph_drops_self_loops(self):
        graph = reachability_graph(ends_in_a())
        self.assertEqual(set(graph.edges), {("0", "1"), ("1", "2")})
        self.assertTrue(nx.is_directed_acyclic_graph(graph))
        self.assertEqual(set(reachability_graph(ends_in_a(), ["a"]).edges), {("0", "1")})


class TestAlphabetUtilities(unittest.TestCase):
    def test_complete_with_sink(self):
        partial = Nfa(["p", "sink"], ["a", "b"], [("p", "a", "p")], ["p"], ["p"])
        completed = complete_with_sink(partial)
        self.assertTrue(completed.is_complete())
        self.assertIn("sink'", completed.states)
        self.assertFalse(completed.accepts(("b", "a")))
        b = ends_in_a()
        self.assertIs(complete_with_sink(b), b)

    def test_pad_alphabets(self):
        a, b = pad_alphabets(ends_in_a(), even_a())
        self.assertEqual(a.alphabet, ("a", "b"))
        self.assertEqual(b.alphabet, ("a", "b"))
        self.assertFalse(b.accepts(("b",)))
        with self.assertRaises(AlphabetMismatchError):
            with_alphabet(ends_in_a(), ["a"])

    def test_disjoint_union(self):
        union = disjoint_union([("x:", even_a()), ("y:", even_a())], name="u")
        self.assertEqual(len(union), 4)
        self.assertEqual(union.initial, frozenset({"x:e", "y:e"}))
        self.assertTrue(union.accepts(("a", "a")))


if __name__ == '__main__':
    unittest.main()
