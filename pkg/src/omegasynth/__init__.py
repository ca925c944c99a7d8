"""Synthesis of ω-regular expressions from Büchi automata."""

from .automata import (
    NBA,
    NFA,
    Acceptance,
    AutomatonError,
    Transition,
    WrongAcceptanceKind,
    accepting_source_states,
    degeneralize,
    lift_state_based,
    trim,
)
from .decompose import Triplet, TripletKind, build_nfa, membership
from .elimination import EliminationOrder, nfa_to_regex
from .formats import (
    HoaError,
    InputError,
    SchemaError,
    UnsupportedAcceptance,
    emit_hoa,
    emit_json,
    parse_hoa,
    parse_json,
)
from .synthesis import (
    SynthesisMethod,
    SynthesisReport,
    auto_select,
    synthesize,
    synthesize_state_based,
    synthesize_transition,
)

__version__ = "0.1.0"
