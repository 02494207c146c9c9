"""
Graphviz DOT rendering of automata.
"""

from typing import Dict, List, Tuple

from .automaton import Nfa, State, Symbol


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r'\"'))


def export_dot(a: Nfa) -> str:
    """
    Render a as a left-to-right DOT digraph.

    Each initial state gets an entry arrow from a point node, accepting states
    are double circles, and the symbols of parallel transitions share one
    edge. States and labels follow the declared order, so equal automata
    render identically.
    """
    lines = [f"digraph {_gvquote(a.name or 'A')} {{", "  rankdir=LR;"]
    starts = [(f"__start_{i}", q) for i, q in enumerate(a.ordered(a.initial))]
    for node, _ in starts:
        lines.append(f'  {_gvquote(node)} [shape=point, label=""];')
    for q in a.states:
        shape = "doublecircle" if q in a.accepting else "circle"
        lines.append(f"  {_gvquote(q)} [shape={shape}];")
    for node, q in starts:
        lines.append(f"  {_gvquote(node)} -> {_gvquote(q)};")

    labels: Dict[Tuple[State, State], List[Symbol]] = {}
    for p in a.states:
        for symbol in a.alphabet:
            for q in a.ordered(a.successors(p, symbol)):
                labels.setdefault((p, q), []).append(symbol)
    for (p, q), symbols in sorted(labels.items(), key=lambda item: (a.index(item[0][0]), a.index(item[0][1]))):
        lines.append(f"  {_gvquote(p)} -> {_gvquote(q)} [label={_gvquote(','.join(symbols))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
