"""NFA to regular expression by state elimination."""

from __future__ import annotations

import enum

from .automata import NFA
from .expr.tree import EMPTY, EPSILON, Regex, concat, star, sym, union


class EliminationOrder(enum.Enum):
    LOWEST_INDEX_FIRST = "lowest"
    FEWEST_PATHS_FIRST = "fewest"


START, SINK = -1, -2


def useful_states(nfa: NFA) -> set[int]:
    """States reachable from an initial state and co-reachable to an
    accepting one."""
    fwd: dict[int, set[int]] = {}
    bwd: dict[int, set[int]] = {}
    for p, _, q in nfa.transitions:
        fwd.setdefault(p, set()).add(q)
        bwd.setdefault(q, set()).add(p)

    def closure(seeds, graph):
        seen = set(seeds)
        stack = list(seen)
        while stack:
            for q in graph.get(stack.pop(), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return seen

    return closure(nfa.initial, fwd) & closure(nfa.accepting, bwd)


class Gnfa:
    """Generalised NFA with regex-labelled edges, a fresh start and sink.

    At most one edge per ordered pair; parallel edges are merged by union in
    insertion order.
    """

    def __init__(self):
        self.out: dict[int, dict[int, Regex]] = {START: {}, SINK: {}}
        self.inn: dict[int, set[int]] = {START: set(), SINK: set()}

    def add_state(self, q: int) -> None:
        self.out.setdefault(q, {})
        self.inn.setdefault(q, set())

    def add_edge(self, p: int, q: int, r: Regex) -> None:
        old = self.out[p].get(q, EMPTY)
        new = union(old, r)
        if new == EMPTY:
            return
        self.out[p][q] = new
        self.inn[q].add(p)

    @property
    def inner_states(self) -> list[int]:
        return sorted(q for q in self.out if q not in (START, SINK))

    def paths_through(self, q: int) -> int:
        ins = len(self.inn[q] - {q})
        outs = len(set(self.out[q]) - {q})
        return ins * outs

    def eliminate(self, q: int) -> None:
        loop = self.out[q].get(q)
        loop_star = star(loop) if loop is not None else EPSILON
        preds = sorted(self.inn[q] - {q})
        succs = sorted(set(self.out[q]) - {q})
        for p in preds:
            head = concat(self.out[p][q], loop_star)
            for r in succs:
                self.add_edge(p, r, concat(head, self.out[q][r]))
        for p in preds:
            del self.out[p][q]
        for r in succs:
            self.inn[r].discard(q)
        del self.out[q]
        del self.inn[q]

    def result(self) -> Regex:
        return self.out[START].get(SINK, EMPTY)


def to_gnfa(nfa: NFA) -> Gnfa:
    keep = useful_states(nfa)
    g = Gnfa()
    for q in sorted(keep):
        g.add_state(q)
    for q in sorted(nfa.initial & keep):
        g.add_edge(START, q, EPSILON)
    for p, a, q in nfa.transitions:
        if p in keep and q in keep:
            g.add_edge(p, q, sym(nfa.alphabet[a]))
    for q in sorted(nfa.accepting & keep):
        g.add_edge(q, SINK, EPSILON)
    return g


def nfa_to_regex(nfa: NFA, order: EliminationOrder | str = EliminationOrder.LOWEST_INDEX_FIRST) -> Regex:
    order = EliminationOrder(order)
    g = to_gnfa(nfa)
    while True:
        remaining = g.inner_states
        if not remaining:
            break
        if order is EliminationOrder.LOWEST_INDEX_FIRST:
            q = remaining[0]
        else:
            q = min(remaining, key=lambda s: (g.paths_through(s), s))
        g.eliminate(q)
    return g.result()
