#!/usr/bin/env python3
"""
Command-line interface for the piecewise-automata library.
"""

import argparse
import json
import logging
import random
import sys
from typing import Any, Dict, List, Optional

from .automaton import Nfa, Word, format_word, is_empty, pad_alphabets, parse_word
from .classify import classify, is_partially_ordered
from .constants import (
    DEFAULT_DENSITY,
    DEFAULT_MAX_MACROSTATES,
    DEFAULT_ORACLE_MAX_LEN,
    DEFAULT_RANDOM_STATES,
    DEFAULT_RANDOM_SYMBOLS,
    DEFAULT_SEED,
    DEFAULT_TM_MAX_STATES,
    DEFAULT_TM_MAX_SYMBOLS,
    EMPTY_WORD_TEXT,
    LOG_DATE_FORMAT,
    LOG_FORMAT,
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
from .deciders import Decision, equivalent, includes, universal
from .dot import export_dot
from .exceptions import BudgetExceededError
from .oracle import oracle_equivalent, oracle_kpt, oracle_universal
from .piecewise import KptDecision, is_kpt, is_pt, min_k, unary_kpt_dfa, unary_kpt_nfa, unary_kpt_ponfa
from . import random_automata
from .turing import TmSpec, build_tm_reduction, encode_run

RANDOM_KINDS = ['nfa', 'ponfa', 'rponfa', 'dfa', 'unary-dfa', 'unary-ponfa', 'unary-nfa', 'dnf', 'cnf3', 'dag']

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_BAD_INPUT = 2
EXIT_BUDGET = 3


def _setup_logging(verbosity: int, log_file: Optional[str]):
    """Set up logging configuration."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        filename=log_file,
        level=level,
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="piecewise-automata",
        description="Partially ordered automata, piecewise testability and hardness gadgets",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Structural profile of an automaton
  piecewise-automata classify fixtures/ends_in_a.json

  # Universality with a shortest counterexample
  piecewise-automata decide universal a.json

  # Is the language 2-piecewise testable?
  piecewise-automata --json decide kpt a.json -k 2

  # The word W_{2,2} and the ptNFA rejecting exactly it
  piecewise-automata gen wword -k 2 -n 2
  piecewise-automata gen aknn -k 2 -n 2 --strip > a22.json

  # Brute-force cross-check up to length 8
  piecewise-automata oracle universal a22.json --max-len 8

  # Render for Graphviz
  piecewise-automata export dot a22.json | dot -Tpng > a22.png

Exit codes: 0 property holds, 1 property fails, 2 bad input, 3 budget exceeded.
Words are printed as space-separated symbols.
        """
    )
    parser.add_argument('--json', action='store_true', help='Machine-readable JSON output')
    parser.add_argument('--max-macrostates', type=int, default=DEFAULT_MAX_MACROSTATES,
                        help=f'Exploration budget (default: {DEFAULT_MAX_MACROSTATES})')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log INFO (-v) or DEBUG (-vv) messages to stderr')
    parser.add_argument('--log-file', help='Write log messages to this file instead of stderr')

    verbs = parser.add_subparsers(dest='command', help='Available commands')

    # Classify command
    classify_parser = verbs.add_parser('classify', help='Report the structural classes of an automaton')
    classify_parser.add_argument('automaton', help='Automaton JSON file')

    # Decide command
    decide_parser = verbs.add_parser('decide', help='Run a decision procedure')
    decide = decide_parser.add_subparsers(dest='subcommand', help='Decision procedures')
    for name, text in (('universal', 'L(A) = Σ*'), ('pt', 'L(A) is piecewise testable'),
                       ('min-k', 'least k with L(A) k-PT'), ('empty', 'L(A) is empty')):
        sub = decide.add_parser(name, help=text)
        sub.add_argument('automaton', help='Automaton JSON file')
    for name, text in (('includes', 'L(A) ⊆ L(B)'), ('equiv', 'L(A) = L(B)')):
        sub = decide.add_parser(name, help=text)
        sub.add_argument('automaton', help='Automaton JSON file for A')
        sub.add_argument('other', help='Automaton JSON file for B')
        sub.add_argument('--pad', action='store_true', help='Pad both alphabets to their union')
    for name, text in (('kpt', 'L(A) is k-PT'), ('unary-kpt', 'unary L(A) is k-PT')):
        sub = decide.add_parser(name, help=text)
        sub.add_argument('automaton', help='Automaton JSON file')
        sub.add_argument('-k', type=int, required=True, help='Subword length bound')
        if name == 'unary-kpt':
            sub.add_argument('--method', choices=['auto', 'dfa', 'ponfa', 'nfa'], default='auto',
                             help='Unary procedure (default: chosen from the automaton class)')

    # Gen command
    gen_parser = verbs.add_parser('gen', help='Generate words, gadgets and random instances')
    gen = gen_parser.add_subparsers(dest='subcommand', help='Generators')
    for name, text in (('wword', 'the word W_{k,n}'), ('aknn', 'the ptNFA A_{k,n}')):
        sub = gen.add_parser(name, help=text)
        sub.add_argument('-k', type=int, required=True)
        sub.add_argument('-n', type=int, required=True)
        if name == 'aknn':
            sub.add_argument('--strip', action='store_true', help='Drop the redundant (i;m) states')
    for name, text in (('dag', 'DAG reachability gadget'), ('dnf-ptnfa', 'DNF validity ptNFA'),
                       ('dnf-podfas', 'DNF validity poDFA family'), ('dnf-rponfa', 'DNF validity rpoNFA'),
                       ('cnf3-unary', '3CNF unary NFA'), ('pt-hardness', 'PT-hardness gadget of an rpoNFA')):
        sub = gen.add_parser(name, help=text)
        sub.add_argument('source', help='Instance JSON file')
    mk_parser = gen.add_parser('mk', help='Universality to k-PT gadget M_k')
    mk_parser.add_argument('source', help='Automaton JSON file')
    mk_parser.add_argument('-k', type=int, required=True)
    tm_parser = gen.add_parser('tm', help='Turing machine reduction ptNFA')
    tm_parser.add_argument('source', help='Turing machine JSON file')
    tm_parser.add_argument('--input', default='', help='Space-separated input word')
    tm_parser.add_argument('--emit-run', action='store_true',
                           help='Print the encoded accepting run instead of the automaton')
    tm_parser.add_argument('--max-states', type=int, default=DEFAULT_TM_MAX_STATES)
    tm_parser.add_argument('--max-symbols', type=int, default=DEFAULT_TM_MAX_SYMBOLS)
    random_parser = gen.add_parser('random', help='Seeded random instance')
    random_parser.add_argument('--kind', choices=RANDOM_KINDS, default='nfa')
    random_parser.add_argument('--states', type=int, default=DEFAULT_RANDOM_STATES,
                               help='States, variables or DAG nodes')
    random_parser.add_argument('--symbols', type=int, default=DEFAULT_RANDOM_SYMBOLS,
                               help='Symbols, conjuncts or clauses')
    random_parser.add_argument('--density', type=float, default=DEFAULT_DENSITY)
    random_parser.add_argument('--complete', action='store_true', help='Complete poNFAs')
    random_parser.add_argument('--seed', type=int, default=DEFAULT_SEED)

    # Oracle command
    oracle_parser = verbs.add_parser('oracle', help='Brute-force refutation search')
    oracle = oracle_parser.add_subparsers(dest='subcommand', help='Oracle checks')
    for name in ('universal', 'equiv', 'kpt'):
        sub = oracle.add_parser(name)
        sub.add_argument('automaton', help='Automaton JSON file')
        if name == 'equiv':
            sub.add_argument('other', help='Second automaton JSON file')
        if name == 'kpt':
            sub.add_argument('-k', type=int, required=True)
        sub.add_argument('--max-len', type=int, default=DEFAULT_ORACLE_MAX_LEN,
                         help=f'Longest word enumerated (default: {DEFAULT_ORACLE_MAX_LEN})')

    # Export command
    export_parser = verbs.add_parser('export', help='Convert an automaton file')
    export = export_parser.add_subparsers(dest='subcommand', help='Formats')
    for name, text in (('dot', 'Graphviz DOT'), ('json', 'canonical JSON')):
        sub = export.add_parser(name, help=text)
        sub.add_argument('automaton', help='Automaton JSON file')

    return parser


def _show(word: Word) -> str:
    return format_word(word) if word else EMPTY_WORD_TEXT


def _load_json(path: str) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _emit(args, data: Dict[str, Any], lines: List[str]):
    if args.json:
        print(json.dumps(data, ensure_ascii=False, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _emit_decision(args, decision: Decision) -> int:
    lines = ["true" if decision.holds else "false"]
    if decision.witness is not None:
        lines.append(f"witness: {_show(decision.witness)}")
    _emit(args, decision.to_dict(), lines)
    return EXIT_OK if decision.holds else EXIT_FAILS


def _emit_kpt(args, decision: KptDecision) -> int:
    lines = ["true" if decision.holds else "false"]
    witness = None
    if decision.witness is not None:
        witness = decision.witness.to_dict()
        lines.append(f"accepted: {_show(decision.witness.u)}")
        lines.append(f"rejected: {_show(decision.witness.v)}")
    _emit(args, {"holds": decision.holds, "witness": witness}, lines)
    return EXIT_OK if decision.holds else EXIT_FAILS


def _emit_automaton(a: Nfa):
    sys.stdout.write(a.to_json())


def _run_decide(args) -> int:
    a = Nfa.load(args.automaton)
    budget = args.max_macrostates
    if args.subcommand == 'universal':
        return _emit_decision(args, universal(a, budget))
    if args.subcommand in ('includes', 'equiv'):
        b = Nfa.load(args.other)
        if args.pad:
            a, b = pad_alphabets(a, b)
        check = includes if args.subcommand == 'includes' else equivalent
        return _emit_decision(args, check(a, b, budget))
    if args.subcommand == 'empty':
        empty, word = is_empty(a)
        lines = ["true" if empty else "false"]
        if word is not None:
            lines.append(f"accepted: {_show(word)}")
        _emit(args, {"holds": empty, "witness": None if word is None else list(word)}, lines)
        return EXIT_OK if empty else EXIT_FAILS
    if args.subcommand == 'pt':
        report = is_pt(a, budget)
        data = {
            "holds": report.holds,
            "partially_ordered": report.partially_ordered,
            "confluent": report.confluent,
            "ums": report.ums,
            "minimal_dfa_states": len(report.minimal_dfa),
        }
        _emit(args, data, ["true" if report.holds else "false"])
        return EXIT_OK if report.holds else EXIT_FAILS
    if args.subcommand == 'min-k':
        k = min_k(a, budget)
        _emit(args, {"k": k}, ["none" if k is None else str(k)])
        return EXIT_OK if k is not None else EXIT_FAILS
    if args.subcommand == 'kpt':
        return _emit_kpt(args, is_kpt(a, args.k, budget))
    if args.subcommand == 'unary-kpt':
        method = args.method
        if method == 'auto':
            if a.is_deterministic() and a.is_complete():
                method = 'dfa'
            elif is_partially_ordered(a):
                method = 'ponfa'
            else:
                method = 'nfa'
        check = {'dfa': unary_kpt_dfa, 'ponfa': unary_kpt_ponfa, 'nfa': unary_kpt_nfa}[method]
        return _emit_kpt(args, check(a, args.k))
    raise ValueError(f"Unknown decide subcommand: {args.subcommand}")


def _random_instance(args):
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == 'nfa':
        return random_automata.random_nfa(rng, args.states, args.symbols, args.density)
    if kind == 'ponfa':
        return random_automata.random_ponfa(rng, args.states, args.symbols, args.density, complete=args.complete)
    if kind == 'rponfa':
        return random_automata.random_rponfa(rng, args.states, args.symbols, args.density, complete=args.complete)
    if kind == 'dfa':
        return random_automata.random_dfa(rng, args.states, args.symbols)
    if kind == 'unary-dfa':
        return random_automata.random_unary_dfa(rng, args.states)
    if kind == 'unary-ponfa':
        return random_automata.random_unary_ponfa(rng, args.states, args.density)
    if kind == 'unary-nfa':
        return random_automata.random_unary_nfa(rng, args.states, args.density)
    if kind == 'dnf':
        return random_automata.random_dnf(rng, args.states, args.symbols)
    if kind == 'cnf3':
        return random_automata.random_cnf3(rng, args.states, args.symbols)
    return random_automata.random_dag(rng, args.states, args.density)


def _run_gen(args) -> int:
    sub = args.subcommand
    if sub == 'wword':
        word = w_word(args.k, args.n)
        _emit(args, {"word": list(word)}, [format_word(word)])
        return EXIT_OK
    if sub == 'aknn':
        a = a_kn(args.k, args.n)
        _emit_automaton(strip_redundant(a) if args.strip else a)
        return EXIT_OK
    if sub == 'dag':
        _emit_automaton(dag_gadget(Dag.from_dict(_load_json(args.source))))
        return EXIT_OK
    if sub in ('dnf-ptnfa', 'dnf-rponfa'):
        phi = DnfFormula.from_dict(_load_json(args.source))
        _emit_automaton(dnf_to_ptnfa(phi) if sub == 'dnf-ptnfa' else dnf_to_rponfa(phi))
        return EXIT_OK
    if sub == 'dnf-podfas':
        family = dnf_to_podfa_family(DnfFormula.from_dict(_load_json(args.source)))
        print(json.dumps([d.to_dict() for d in family], ensure_ascii=False, indent=2))
        return EXIT_OK
    if sub == 'cnf3-unary':
        _emit_automaton(cnf3_to_unary_nfa(Cnf3Formula.from_dict(_load_json(args.source))))
        return EXIT_OK
    if sub == 'mk':
        _emit_automaton(mk_gadget(Nfa.load(args.source), args.k))
        return EXIT_OK
    if sub == 'pt-hardness':
        _emit_automaton(pt_hardness_gadget(Nfa.load(args.source)))
        return EXIT_OK
    if sub == 'tm':
        m = TmSpec.from_dict(_load_json(args.source))
        x = parse_word(args.input)
        if args.emit_run:
            word = encode_run(m, x)
            _emit(args, {"run": None if word is None else list(word)},
                  ["none" if word is None else format_word(word)])
            return EXIT_OK if word is not None else EXIT_FAILS
        _emit_automaton(build_tm_reduction(m, x, args.max_states, args.max_symbols).nfa)
        return EXIT_OK
    if sub == 'random':
        instance = _random_instance(args)
        if isinstance(instance, Nfa):
            _emit_automaton(instance)
        else:
            print(json.dumps(instance.to_dict()))
        return EXIT_OK
    raise ValueError(f"Unknown gen subcommand: {sub}")


def _run_oracle(args) -> int:
    a = Nfa.load(args.automaton)
    if args.subcommand == 'kpt':
        witness = oracle_kpt(a, args.k, args.max_len)
        if witness is None:
            _emit(args, {"witness": None}, ["none"])
            return EXIT_OK
        _emit(args, {"witness": witness.to_dict()},
              [f"accepted: {_show(witness.u)}", f"rejected: {_show(witness.v)}"])
        return EXIT_FAILS
    if args.subcommand == 'equiv':
        word = oracle_equivalent(a, Nfa.load(args.other), args.max_len)
    else:
        word = oracle_universal(a, args.max_len)
    _emit(args, {"witness": None if word is None else list(word)},
          ["none" if word is None else f"witness: {_show(word)}"])
    return EXIT_OK if word is None else EXIT_FAILS


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_BAD_INPUT
    if args.command != 'classify' and not getattr(args, 'subcommand', None):
        parser.error(f"{args.command} needs a subcommand")

    _setup_logging(args.verbose, args.log_file)

    try:
        if args.command == 'classify':
            report = classify(Nfa.load(args.automaton))
            data = report.to_dict()
            _emit(args, data, [f"{key}: {json.dumps(value)}" for key, value in data.items()])
            return EXIT_OK
        elif args.command == 'decide':
            return _run_decide(args)
        elif args.command == 'gen':
            return _run_gen(args)
        elif args.command == 'oracle':
            return _run_oracle(args)
        elif args.command == 'export':
            a = Nfa.load(args.automaton)
            sys.stdout.write(export_dot(a) if args.subcommand == 'dot' else a.to_json())
            return EXIT_OK
        return EXIT_BAD_INPUT

    except BudgetExceededError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


run = main


if __name__ == '__main__':
    sys.exit(main())
