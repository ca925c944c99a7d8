from .metrics import Metrics, measure, rpn, star_height, tllen
from .simplify import DEFAULT_RULES, RULES, SimplifyIterationCap, simplify
from .syntax import ExprSyntaxError, parse, parse_omega, to_text
from .tree import (
    EMPTY,
    EMPTY_OMEGA,
    EPSILON,
    Concat,
    ConcatFin,
    Empty,
    EmptyOmega,
    Epsilon,
    Node,
    NullableOmegaBody,
    OmegaIter,
    OmegaRegex,
    Regex,
    Star,
    Sym,
    Union,
    UnionOmega,
    concat,
    concat_fin,
    normalize,
    nullable,
    omega,
    star,
    sym,
    union,
    union_omega,
)
