import json
import os
import random
import unittest

from piecewise_automata.classify import is_ptnfa
from piecewise_automata.constructions import w_word
from piecewise_automata.exceptions import (
    CapExceededError,
    InvalidTuringMachineError,
    TmAssumptionError,
)
from piecewise_automata.oracle import language_sample, words_up_to
from piecewise_automata.turing import (
    ProductSymbol,
    TmSpec,
    build_tm_reduction,
    cell_mark,
    encode_run,
    parse_cell,
    reduction_order,
    tm_to_ptnfa,
)

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def load_machine(name):
    with open(os.path.join(FIXTURES, name), 'r', encoding='utf-8') as f:
        return TmSpec.from_dict(json.load(f))


def walker():
    """Steps right once, then back left into q_f."""
    delta = []
    for t in ("1", "B"):
        delta.append(("q0", t, "q1", t, "R"))
        delta.append(("q1", t, "qf", t, "L"))
        delta.append(("qf", t, "qf", t, "S"))
    return TmSpec(["q0", "q1", "qf"], ["1", "B"], ["1"], "B", "q0", "qf", delta, 2)


class TestTmSpec(unittest.TestCase):
    def test_fixture(self):
        m = load_machine("tm_accepting.json")
        self.assertEqual(m.transition("q0", "1"), ("qf", "1", "S"))
        self.assertEqual(TmSpec.from_dict(m.to_dict()), m)

    def test_assumptions(self):
        data = load_machine("tm_accepting.json").to_dict()
        with self.assertRaises(TmAssumptionError):
            TmSpec.from_dict(dict(data, qf="q0"))
        broken = dict(data, delta=[row if row[:2] != ["qf", "1"] else ["qf", "1", "qf", "B", "S"]
                                   for row in data["delta"]])
        with self.assertRaises(TmAssumptionError):
            TmSpec.from_dict(broken)

    def test_validation(self):
        data = load_machine("tm_accepting.json").to_dict()
        with self.assertRaises(InvalidTuringMachineError):
            TmSpec.from_dict(dict(data, delta=data["delta"][1:]))
        with self.assertRaises(InvalidTuringMachineError):
            TmSpec.from_dict(dict(data, input=["B"]))
        with self.assertRaises(InvalidTuringMachineError):
            TmSpec.from_dict(dict(data, states=["q0", "q#f"], qf="q#f"))
        with self.assertRaises(InvalidTuringMachineError):
            TmSpec.from_dict({"states": ["q0"]})
        with self.assertRaises(InvalidTuringMachineError):
            load_machine("tm_accepting.json").initial_configuration(["1", "1"])

    def test_runs(self):
        accepted, configs, loop = load_machine("tm_accepting.json").run(["1"])
        self.assertTrue(accepted)
        self.assertEqual(configs, [(("1",), 0, "q0"), (("1",), 0, "qf")])
        self.assertEqual(loop, 1)

        accepted, configs, loop = load_machine("tm_rejecting.json").run(["1"])
        self.assertFalse(accepted)
        self.assertEqual((len(configs), loop), (1, 0))

        accepted, configs, _ = walker().run(["1"])
        self.assertTrue(accepted)
        self.assertEqual([c[1] for c in configs], [0, 1, 0])

    def test_head_is_clamped(self):
        m = walker()
        self.assertEqual(m.step((("1", "B"), 1, "q0")), (("1", "B"), 1, "q1"))

    def test_accepting_off_the_first_cell(self):
        delta = [("q0", t, "qf", t, "R") for t in ("1", "B")] + [("qf", t, "qf", t, "S") for t in ("1", "B")]
        m = TmSpec(["q0", "qf"], ["1", "B"], ["1"], "B", "q0", "qf", delta, 2)
        with self.assertRaises(TmAssumptionError):
            m.run(["1"])


class TestLocalSuccessor(unittest.TestCase):
    def test_marks(self):
        self.assertEqual(cell_mark("1", None), "1:.")
        self.assertEqual(parse_cell("1:q0"), ("1", "q0"))
        self.assertEqual(parse_cell("B:."), ("B", None))
        self.assertIsNone(parse_cell("#"))
        self.assertEqual(ProductSymbol.parse("a2/1:q0"), ProductSymbol("a2", "1:q0"))
        self.assertEqual(ProductSymbol("a2", "$").name, "a2/$")

    def test_successor_follows_the_run(self):
        m = walker()
        self.assertEqual(m.successor_mark("#", "1:q0", "B:."), "1:.")
        self.assertEqual(m.successor_mark("1:q0", "B:.", "#"), "B:q1")
        self.assertEqual(m.successor_mark("#", "1:.", "B:q1"), "1:qf")
        self.assertEqual(m.successor_mark("1:.", "B:q1", "#"), "B:.")
        self.assertEqual(m.successor_mark("1:.", "#", "B:q1"), "#")
        self.assertEqual(m.successor_mark("#", "$", "$"), "$")
        self.assertEqual(load_machine("tm_accepting.json").successor_mark("#", "1:q0", "#"), "1:qf")


class TestReductionParameters(unittest.TestCase):
    def test_sizes_for_one_cell(self):
        m = load_machine("tm_accepting.json")
        self.assertEqual(len(m.marks()), 8)
        self.assertEqual(reduction_order(m), 3)
        reduction = build_tm_reduction(m, ["1"])
        self.assertEqual(reduction.n, 3)
        self.assertEqual(len(reduction.alphabet), 24)
        self.assertEqual(len(reduction.components), m.space + 8)
        self.assertEqual(reduction.w_length, len(w_word(3, 3)))
        self.assertEqual(reduction.initial_marks, ("#", "1:q0", "#"))

    def test_caps(self):
        m = load_machine("tm_accepting.json")
        with self.assertRaises(CapExceededError):
            build_tm_reduction(m, ["1"], max_states=100)
        with self.assertRaises(CapExceededError):
            build_tm_reduction(m, ["1"], max_symbols=10)

    def test_is_ptnfa(self):
        self.assertTrue(is_ptnfa(tm_to_ptnfa(load_machine("tm_accepting.json"), ["1"])))
        self.assertTrue(is_ptnfa(tm_to_ptnfa(load_machine("tm_rejecting.json"), ["1"])))


class TestRunEncoding(unittest.TestCase):
    def test_encoding_shape(self):
        m = load_machine("tm_accepting.json")
        word = encode_run(m, ["1"])
        self.assertEqual(len(word), 19)
        marks = [ProductSymbol.parse(s).second for s in word]
        self.assertEqual(marks[:5], ["#", "1:q0", "#", "1:qf", "#"])
        self.assertEqual(marks[-2:], ["1:qf", "#"])
        self.assertEqual(tuple(ProductSymbol.parse(s).first for s in word), w_word(3, 3))

    def test_rejecting_machine_has_no_accepting_run(self):
        self.assertIsNone(encode_run(load_machine("tm_rejecting.json"), ["1"]))

    def test_accepting_run_is_rejected(self):
        m = load_machine("tm_accepting.json")
        nfa = tm_to_ptnfa(m, ["1"])
        word = encode_run(m, ["1"])
        self.assertFalse(nfa.accepts(word))

        rng = random.Random(9)
        for _ in range(50):
            position = rng.randrange(len(word))
            symbol = rng.choice([s for s in nfa.alphabet if s != word[position]])
            perturbed = word[:position] + (symbol,) + word[position + 1:]
            self.assertTrue(nfa.accepts(perturbed), perturbed)

    def test_rejecting_machine_accepts_all_short_words(self):
        m = load_machine("tm_rejecting.json")
        nfa = tm_to_ptnfa(m, ["1"])
        sample = language_sample(nfa, 3)
        for word in words_up_to(nfa.alphabet, 3):
            self.assertIn(word, sample)
        self.assertEqual(len(sample), sum(len(nfa.alphabet) ** length for length in range(4)))
        self.assertTrue(nfa.accepts(encode_run(m, ["1"], require_accepting=False)))

    def test_two_cell_machine(self):
        m = walker()
        reduction = build_tm_reduction(m, ["1"])
        self.assertEqual(reduction.n, 5)
        word = encode_run(m, ["1"])
        marks = [ProductSymbol.parse(s).second for s in word]
        self.assertEqual(marks[:10], ["#", "1:q0", "B:.", "#", "1:.", "B:q1", "#", "1:qf", "B:.", "#"])
        self.assertFalse(reduction.nfa.accepts(word))
        rng = random.Random(12)
        for _ in range(10):
            position = rng.randrange(len(word))
            symbol = rng.choice([s for s in reduction.alphabet if s != word[position]])
            self.assertTrue(reduction.nfa.accepts(word[:position] + (symbol,) + word[position + 1:]))


if __name__ == '__main__':
    unittest.main()
