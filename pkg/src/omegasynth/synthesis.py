"""ω-regular expression synthesis from Büchi automata.

``synthesize_transition`` works on transition acceptance directly: for every
initial state ``q0`` and accepting source state ``q`` it emits

    R_all(q0, q) · ( R_rej(q, q)* · R_acc(q, q) )^ω

with the prefix dropped when ``q == q0``. ``synthesize_state_based`` is the
classic construction over accepting states, kept as the comparison baseline.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

from .automata import (
    NBA,
    WrongAcceptanceKind,
    accepting_source_states,
    degeneralize,
)
from .decompose import TripletKind, build_nfa, copy_state_nfa
from .elimination import EliminationOrder, nfa_to_regex
from .expr.metrics import Metrics, measure
from .expr.simplify import simplify
from .expr.tree import (
    EMPTY_OMEGA,
    OmegaRegex,
    Regex,
    concat,
    concat_fin,
    omega,
    star,
    union_omega,
)


class SynthesisMethod(enum.Enum):
    TRANSITION = "transition"
    STATE = "state"
    AUTO = "auto"


def _regex(nba: NBA, i: int, j: int, kind: TripletKind, order) -> Regex:
    return nfa_to_regex(build_nfa(nba, i, j, kind).nfa, order)


def transition_term(nba: NBA, q0: int, q: int, order=EliminationOrder.LOWEST_INDEX_FIRST) -> OmegaRegex:
    rej = _regex(nba, q, q, TripletKind.REJ, order)
    acc = _regex(nba, q, q, TripletKind.ACC, order)
    loop = omega(concat(star(rej, grouped=True), acc))
    if q == q0:
        return loop
    return concat_fin(_regex(nba, q0, q, TripletKind.ALL, order), loop)


def synthesize_transition(nba: NBA, order=EliminationOrder.LOWEST_INDEX_FIRST) -> OmegaRegex:
    if not nba.is_transition_based:
        raise WrongAcceptanceKind("synthesize_transition needs a transition-based NBA")
    order = EliminationOrder(order)
    sources = sorted(accepting_source_states(nba))
    expression = EMPTY_OMEGA
    for q0 in sorted(nba.initial):
        for q in sources:
            expression = union_omega(expression, transition_term(nba, q0, q, order))
    return expression


def synthesize_state_based(nba: NBA, order=EliminationOrder.LOWEST_INDEX_FIRST) -> OmegaRegex:
    if nba.is_transition_based:
        raise WrongAcceptanceKind("synthesize_state_based needs a state-based NBA")
    order = EliminationOrder(order)
    transitions = list(nba.transitions)

    def first_arrival(i: int, j: int) -> Regex:
        nfa = copy_state_nfa(nba.num_states, nba.alphabet, transitions, i, j)
        return nfa_to_regex(nfa, order)

    expression = EMPTY_OMEGA
    for q0 in sorted(nba.initial):
        for q in sorted(nba.accepting_states):
            loop = omega(first_arrival(q, q))
            term = loop if q == q0 else concat_fin(first_arrival(q0, q), loop)
            expression = union_omega(expression, term)
    return expression


@dataclass
class SynthesisReport:
    method: SynthesisMethod
    expression: OmegaRegex
    metrics: Metrics
    pair_count: int
    accepting_sources: int
    states: int
    simplified: OmegaRegex | None = None
    simplified_metrics: Metrics | None = None
    elapsed: float = 0.0
    timings: dict[str, float] = field(default_factory=dict)
    degeneralized: NBA | None = None
    selection: dict | None = None


def synthesize(
    nba: NBA,
    method: SynthesisMethod | str = SynthesisMethod.TRANSITION,
    order=EliminationOrder.LOWEST_INDEX_FIRST,
    simplify_rules=None,
) -> SynthesisReport:
    """Run one synthesis method and collect metrics.

    ``method=STATE`` accepts either a state-based NBA or a transition-based
    one, which is degeneralized first. ``simplify_rules`` (a rule-name set)
    additionally produces a simplified expression.
    """
    method = SynthesisMethod(method)
    if method is SynthesisMethod.AUTO:
        return auto_select(nba, order, simplify_rules)
    t0 = time.perf_counter()
    timings = {}
    degen = None
    if method is SynthesisMethod.TRANSITION:
        if not nba.is_transition_based:
            raise WrongAcceptanceKind("method 'transition' needs a transition-based NBA")
        target = nba
        n_acc = len(accepting_source_states(nba))
        expr = synthesize_transition(nba, order)
    else:
        if nba.is_transition_based:
            t = time.perf_counter()
            degen = target = degeneralize(nba)
            timings["degeneralize"] = time.perf_counter() - t
        else:
            target = nba
        n_acc = len(target.accepting_states)
        expr = synthesize_state_based(target, order)
    timings["synthesis"] = time.perf_counter() - t0
    t = time.perf_counter()
    report = SynthesisReport(
        method=method,
        expression=expr,
        metrics=measure(expr),
        pair_count=len(target.initial) * n_acc,
        accepting_sources=n_acc,
        states=target.num_states,
        degeneralized=degen,
    )
    timings["metrics"] = time.perf_counter() - t
    if simplify_rules is not None:
        t = time.perf_counter()
        report.simplified = simplify(expr, simplify_rules)
        report.simplified_metrics = measure(report.simplified)
        timings["simplify"] = time.perf_counter() - t
    report.timings = timings
    report.elapsed = time.perf_counter() - t0
    return report


def auto_select(
    nba: NBA, order=EliminationOrder.LOWEST_INDEX_FIRST, simplify_rules=None
) -> SynthesisReport:
    """Use the transition-based route only when it has strictly fewer
    accepting sources than the degeneralized automaton has accepting states."""
    if not nba.is_transition_based:
        raise WrongAcceptanceKind("auto_select needs a transition-based NBA")
    n_sources = len(accepting_source_states(nba))
    n_states_acc = len(degeneralize(nba).accepting_states)
    chosen = SynthesisMethod.TRANSITION if n_sources < n_states_acc else SynthesisMethod.STATE
    report = synthesize(nba, chosen, order, simplify_rules)
    report.selection = {"transition_sources": n_sources, "state_accepting": n_states_acc}
    return report


__all__ = [
    "SynthesisMethod",
    "SynthesisReport",
    "auto_select",
    "synthesize",
    "synthesize_state_based",
    "synthesize_transition",
    "transition_term",
]
