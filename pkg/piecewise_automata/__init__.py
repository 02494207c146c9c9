"""
Piecewise Automata Library

Partially ordered automata, piecewise testability and the automata behind
their hardness results.

This library provides:
- An immutable NFA model with subset construction, minimization and products
- Structural classification (poNFA, rpoNFA, confluence, UMS, ptNFA)
- Universality, inclusion and equivalence with shortest counterexamples
- k-piecewise testability checks with witness pairs, including unary shortcuts
- Gadget compilers for the W-words, DAG, DNF, 3CNF and Turing machine reductions
- A brute-force oracle for cross-checking all of the above

Example usage:
    from piecewise_automata import Nfa, classify, universal, is_kpt

    a = Nfa.load("fixtures/ends_in_a.json")
    print(classify(a).to_dict())

    decision = universal(a)
    if not decision.holds:
        print("rejects", decision.witness)

    print(is_kpt(a, 2).holds)
"""

from .automaton import (
    Nfa,
    accepts,
    complement,
    complete_with_sink,
    depth,
    determinize,
    format_word,
    is_empty,
    minimize,
    pad_alphabets,
    parse_word,
    post_image,
    product_intersection,
    subset_construction,
    with_alphabet,
)
from .classify import (
    ClassificationReport,
    classify,
    is_confluent,
    is_partially_ordered,
    is_ptnfa,
    is_rponfa,
    is_self_loop_deterministic,
    is_ums,
    self_loop_alphabet,
)
from .constructions import (
    Cnf3Formula,
    Dag,
    DnfFormula,
    a_kn,
    cnf3_to_unary_nfa,
    dag_gadget,
    dnf_to_podfa_family,
    dnf_to_ptnfa,
    dnf_to_rponfa,
    mk_gadget,
    pt_hardness_gadget,
    strip_redundant,
    w_word,
)
from .deciders import (
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
from .dot import export_dot
from .exceptions import AutomatonError, BudgetExceededError
from .oracle import LanguageSample, language_sample, oracle_equivalent, oracle_kpt, oracle_universal
from .piecewise import (
    KAbstraction,
    KptDecision,
    KptWitness,
    SubwordSet,
    is_kpt,
    is_pt,
    is_subword,
    min_k,
    sim_k,
    subwords_k,
    unary_kpt_dfa,
    unary_kpt_nfa,
    unary_kpt_ponfa,
)
from .turing import TmReduction, TmSpec, build_tm_reduction, encode_run, tm_to_ptnfa

__version__ = "1.0.0"
__author__ = "Piecewise Automata Library"

__all__ = [
    'Nfa', 'accepts', 'post_image', 'parse_word', 'format_word',
    'subset_construction', 'determinize', 'minimize', 'complement',
    'product_intersection', 'is_empty', 'depth', 'complete_with_sink',
    'with_alphabet', 'pad_alphabets',
    'ClassificationReport', 'classify', 'self_loop_alphabet', 'is_partially_ordered',
    'is_self_loop_deterministic', 'is_rponfa', 'is_confluent', 'is_ums', 'is_ptnfa',
    'Decision', 'universal', 'includes', 'equivalent', 'intersection_witness',
    'BoolMatrix', 'unary_power_image', 'unary_eventual_behavior', 'unary_includes',
    'SubwordSet', 'KAbstraction', 'KptWitness', 'KptDecision', 'is_subword',
    'subwords_k', 'sim_k', 'is_pt', 'is_kpt', 'min_k',
    'unary_kpt_dfa', 'unary_kpt_ponfa', 'unary_kpt_nfa',
    'DnfFormula', 'Cnf3Formula', 'Dag', 'w_word', 'a_kn', 'strip_redundant',
    'dag_gadget', 'dnf_to_ptnfa', 'dnf_to_podfa_family', 'dnf_to_rponfa',
    'mk_gadget', 'cnf3_to_unary_nfa', 'pt_hardness_gadget',
    'TmSpec', 'TmReduction', 'build_tm_reduction', 'tm_to_ptnfa', 'encode_run',
    'LanguageSample', 'language_sample', 'oracle_universal', 'oracle_equivalent', 'oracle_kpt',
    'export_dot', 'AutomatonError', 'BudgetExceededError',
]
