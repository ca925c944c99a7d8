"""Triplet NFAs for a transition-based NBA.

For states ``i, j`` the NFA adds a copy ``j'`` of ``j`` (index ``n``) with no
outgoing transitions and redirects every transition into ``j`` to ``j'``.
Starting in ``i`` with ``j'`` the only accepting state, it recognises the
nonempty words whose run from ``i`` ends on first arrival at ``j``. The
``REJ``/``ACC`` variants keep only the rejecting/accepting transitions
leaving ``i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .automata import NFA, NBA, AutomatonError, Transition, WrongAcceptanceKind


class TripletKind(enum.Enum):
    ALL = "all"
    REJ = "rej"
    ACC = "acc"


@dataclass(frozen=True)
class Triplet:
    i: int
    j: int
    kind: TripletKind
    nfa: NFA
    copy_state: int


def copy_state_nfa(
    num_states: int,
    alphabet,
    transitions: list[Transition],
    i: int,
    j: int,
    kind: TripletKind = TripletKind.ALL,
) -> NFA:
    copy = num_states
    delta = []
    for t in transitions:
        dst = copy if t.dst == j else t.dst
        if t.src == i:
            if kind is TripletKind.REJ and t.accepting:
                continue
            if kind is TripletKind.ACC and not t.accepting:
                continue
        delta.append((t.src, t.sym, dst))
    return NFA(num_states + 1, alphabet, delta, {i}, {copy})


def build_nfa(nba: NBA, i: int, j: int, kind: TripletKind | str = TripletKind.ALL) -> Triplet:
    if not nba.is_transition_based:
        raise WrongAcceptanceKind("triplet NFAs need a transition-based NBA")
    for name, q in (("i", i), ("j", j)):
        if not isinstance(q, int) or not 0 <= q < nba.num_states:
            raise AutomatonError(f"{name}: invalid state {q!r} (automaton has {nba.num_states})")
    kind = TripletKind(kind)
    nfa = copy_state_nfa(nba.num_states, nba.alphabet, list(nba.transitions), i, j, kind)
    return Triplet(i, j, kind, nfa, nba.num_states)


def membership(nfa: NFA, word) -> bool:
    return nfa.accepts(word)
