"""Büchi and finite automata over opaque symbol alphabets.

States are dense integers ``0..n-1``. Symbols are indices into the
automaton's ``alphabet`` tuple, whose entries are the display labels.
Automata are immutable once built; every operation here returns a new one.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


class AutomatonError(ValueError):
    """An automaton violates a structural invariant."""


class WrongAcceptanceKind(AutomatonError):
    pass


class Acceptance(enum.Enum):
    TRANSITION = "transition"
    STATE = "state"


class Transition(NamedTuple):
    src: int
    sym: int
    dst: int
    accepting: bool = False


def _check_states(name: str, states: Iterable[int], n: int) -> None:
    for q in states:
        if not isinstance(q, int) or isinstance(q, bool) or not 0 <= q < n:
            raise AutomatonError(f"{name}: state {q!r} out of range 0..{n - 1}")


@dataclass(frozen=True)
class NBA:
    """Nondeterministic Büchi automaton.

    With ``Acceptance.TRANSITION`` a run is accepting when it crosses
    transitions flagged ``accepting`` infinitely often; with
    ``Acceptance.STATE`` when it visits ``accepting_states`` infinitely often.
    """

    num_states: int
    alphabet: tuple[str, ...]
    transitions: tuple[Transition, ...]
    initial: frozenset[int]
    acceptance: Acceptance = Acceptance.TRANSITION
    accepting_states: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(
            self, "transitions", tuple(Transition(*t) for t in self.transitions)
        )
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting_states", frozenset(self.accepting_states))
        object.__setattr__(self, "acceptance", Acceptance(self.acceptance))
        self._validate()

    def _validate(self) -> None:
        n = self.num_states
        if not isinstance(n, int) or n < 0:
            raise AutomatonError(f"num_states: expected a non-negative int, got {n!r}")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise AutomatonError("alphabet: display labels must be unique")
        for s in self.alphabet:
            if not isinstance(s, str) or not s:
                raise AutomatonError(f"alphabet: invalid label {s!r}")
        _check_states("initial", self.initial, n)
        _check_states("accepting_states", self.accepting_states, n)
        seen = set()
        for k, t in enumerate(self.transitions):
            _check_states(f"transitions[{k}].src", [t.src], n)
            _check_states(f"transitions[{k}].dst", [t.dst], n)
            if not isinstance(t.sym, int) or not 0 <= t.sym < len(self.alphabet):
                raise AutomatonError(f"transitions[{k}].sym: {t.sym!r} not in alphabet")
            key = (t.src, t.sym, t.dst)
            if key in seen:
                raise AutomatonError(f"transitions[{k}]: duplicate transition {key}")
            seen.add(key)
        if self.acceptance is Acceptance.STATE:
            if any(t.accepting for t in self.transitions):
                raise AutomatonError(
                    "transitions: state-based automaton cannot have accepting transitions"
                )
        elif self.accepting_states:
            raise AutomatonError(
                "accepting_states: must be empty for a transition-based automaton"
            )

    @property
    def states(self) -> range:
        return range(self.num_states)

    @property
    def is_transition_based(self) -> bool:
        return self.acceptance is Acceptance.TRANSITION

    def symbol_index(self, label: str) -> int:
        try:
            return self.alphabet.index(label)
        except ValueError:
            raise KeyError(f"unknown symbol {label!r}") from None

    def outdegree(self, q: int) -> int:
        return sum(1 for t in self.transitions if t.src == q)

    def successors(self) -> list[list[Transition]]:
        out: list[list[Transition]] = [[] for _ in range(self.num_states)]
        for t in self.transitions:
            out[t.src].append(t)
        return out


@dataclass(frozen=True)
class NFA:
    """Nondeterministic finite automaton; transitions are ``(src, sym, dst)``."""

    num_states: int
    alphabet: tuple[str, ...]
    transitions: tuple[tuple[int, int, int], ...]
    initial: frozenset[int]
    accepting: frozenset[int]
    _delta: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(tuple(t) for t in self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = self.num_states
        _check_states("initial", self.initial, n)
        _check_states("accepting", self.accepting, n)
        delta: dict[tuple[int, int], set[int]] = {}
        for k, (p, a, q) in enumerate(self.transitions):
            _check_states(f"transitions[{k}]", (p, q), n)
            if not 0 <= a < len(self.alphabet):
                raise AutomatonError(f"transitions[{k}].sym: {a!r} not in alphabet")
            delta.setdefault((p, a), set()).add(q)
        object.__setattr__(self, "_delta", delta)

    def step(self, current: Iterable[int], sym: int) -> set[int]:
        nxt: set[int] = set()
        for p in current:
            nxt |= self._delta.get((p, sym), set())
        return nxt

    def accepts(self, word: Iterable[str]) -> bool:
        """Subset simulation over display labels."""
        index = {s: k for k, s in enumerate(self.alphabet)}
        current = set(self.initial)
        for s in word:
            if s not in index:
                raise KeyError(f"unknown symbol {s!r}")
            current = self.step(current, index[s])
            if not current:
                return False
        return bool(current & self.accepting)


def accepting_source_states(nba: NBA) -> frozenset[int]:
    """States with at least one outgoing accepting transition."""
    if not nba.is_transition_based:
        raise WrongAcceptanceKind("accepting_source_states needs a transition-based NBA")
    return frozenset(t.src for t in nba.transitions if t.accepting)


def lift_state_based(nba: NBA) -> NBA:
    """Reinterpret a state-based NBA as transition-based: a transition is
    accepting iff its source is an accepting state."""
    if nba.is_transition_based:
        raise WrongAcceptanceKind("lift_state_based needs a state-based NBA")
    F = nba.accepting_states
    return NBA(
        nba.num_states,
        nba.alphabet,
        [t._replace(accepting=t.src in F) for t in nba.transitions],
        nba.initial,
        Acceptance.TRANSITION,
    )


def degeneralize(nba: NBA) -> NBA:
    """Two-copy construction: copy 1 means "the last transition taken was
    accepting". Only the reachable part is kept, numbered by ``(q, copy)``."""
    if not nba.is_transition_based:
        raise WrongAcceptanceKind("degeneralize needs a transition-based NBA")
    succ = nba.successors()
    start = {(q, 0) for q in nba.initial}
    seen = set(start)
    queue = deque(sorted(start))
    while queue:
        p, _ = queue.popleft()
        for t in succ[p]:
            nxt = (t.dst, 1 if t.accepting else 0)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    order = sorted(seen)
    index = {s: k for k, s in enumerate(order)}
    transitions = []
    for (p, b) in order:
        for t in succ[p]:
            transitions.append(
                Transition(index[(p, b)], t.sym, index[(t.dst, 1 if t.accepting else 0)])
            )
    return NBA(
        len(order),
        nba.alphabet,
        transitions,
        {index[s] for s in start},
        Acceptance.STATE,
        {index[s] for s in order if s[1] == 1},
    )


def reachable_states(nba: NBA) -> set[int]:
    succ = nba.successors()
    seen = set(nba.initial)
    stack = list(seen)
    while stack:
        for t in succ[stack.pop()]:
            if t.dst not in seen:
                seen.add(t.dst)
                stack.append(t.dst)
    return seen


def trim(nba: NBA) -> NBA:
    """Drop states unreachable from the initial states, keeping the relative
    order of the survivors."""
    keep = sorted(reachable_states(nba))
    if len(keep) == nba.num_states:
        return nba
    index = {q: k for k, q in enumerate(keep)}
    return NBA(
        len(keep),
        nba.alphabet,
        [
            t._replace(src=index[t.src], dst=index[t.dst])
            for t in nba.transitions
            if t.src in index
        ],
        {index[q] for q in nba.initial},
        nba.acceptance,
        {index[q] for q in nba.accepting_states if q in index},
    )


def as_transition_based(nba: NBA) -> NBA:
    return nba if nba.is_transition_based else lift_state_based(nba)
