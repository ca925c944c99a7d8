"""Rewrite-based simplification of (ω-)regular expressions.

Every rule preserves the language and strictly lowers the node count, so a
bottom-up pass repeated to a fixed point terminates; the iteration cap is a
guard only.
"""

from __future__ import annotations

import warnings

from .tree import (
    ConcatFin,
    Concat,
    Epsilon,
    Node,
    OmegaIter,
    Star,
    Union,
    UnionOmega,
    children,
    concat,
    concat_all,
    concat_fin,
    flatten_concat,
    flatten_union,
    normalize,
    nullable,
    omega,
    star,
    union,
    union_all,
    union_omega,
)


class SimplifyIterationCap(UserWarning):
    """The fixed point was not reached within the iteration cap."""


def _union_items(e):
    return flatten_union(e), isinstance(e, UnionOmega)


def union_idempotent(e: Node):
    """x + x ⇒ x"""
    if not isinstance(e, (Union, UnionOmega)):
        return None
    items, is_omega = _union_items(e)
    kept = []
    for x in items:
        if x not in kept:
            kept.append(x)
    if len(kept) == len(items):
        return None
    return union_all(kept, is_omega)


def union_absorb_star(e: Node):
    """x + xy* ⇒ xy*  (either order)"""
    if not isinstance(e, Union):
        return None
    items = flatten_union(e)
    for k, x in enumerate(items):
        for m, other in enumerate(items):
            if m == k:
                continue
            parts = flatten_concat(other)
            if parts and isinstance(parts[-1], Star) and concat_all(parts[:-1]) == x:
                return union_all(items[:k] + items[k + 1:])
    return None


def union_epsilon_nullable(e: Node):
    """ε + x* ⇒ x*, generalised to any nullable alternative."""
    if not isinstance(e, Union):
        return None
    items = flatten_union(e)
    if not any(isinstance(x, Epsilon) for x in items):
        return None
    rest = [x for x in items if not isinstance(x, Epsilon)]
    if any(nullable(x) for x in rest):
        return union_all(rest)
    return None


def star_star(e: Node):
    """(x*)* ⇒ x*"""
    if isinstance(e, Star) and isinstance(e.child, Star):
        return e.child
    return None


def star_concat(e: Node):
    """x*x* ⇒ x*"""
    if not isinstance(e, Concat):
        return None
    parts = flatten_concat(e)
    for k in range(len(parts) - 1):
        if isinstance(parts[k], Star) and parts[k] == parts[k + 1]:
            return concat_all(parts[:k + 1] + parts[k + 2:])
    return None


def _omega_tail(e: Node):
    if isinstance(e, ConcatFin) and isinstance(e.rest, OmegaIter):
        return flatten_concat(e.prefix), e.rest.body
    return None


def omega_unroll(e: Node):
    """xyy^ω ⇒ xy^ω"""
    tail = _omega_tail(e)
    if tail is None:
        return None
    prefix, body = tail
    loop = flatten_concat(body)
    if loop and len(prefix) >= len(loop) and prefix[len(prefix) - len(loop):] == loop:
        return concat_fin(concat_all(prefix[:len(prefix) - len(loop)]), e.rest)
    return None


def omega_star_absorb(e: Node):
    """xy*y^ω ⇒ xy^ω"""
    tail = _omega_tail(e)
    if tail is None:
        return None
    prefix, body = tail
    if prefix and prefix[-1] == Star(body):
        return concat_fin(concat_all(prefix[:-1]), e.rest)
    return None


def omega_plus(e: Node):
    """(x*x)^ω ⇒ x^ω and (xx*)^ω ⇒ x^ω"""
    if not isinstance(e, OmegaIter):
        return None
    parts = flatten_concat(e.body)
    if len(parts) < 2:
        return None
    if isinstance(parts[0], Star) and concat_all(parts[1:]) == parts[0].child:
        return omega(parts[0].child)
    if isinstance(parts[-1], Star) and concat_all(parts[:-1]) == parts[-1].child:
        return omega(parts[-1].child)
    return None


RULES = {
    "union-idempotent": union_idempotent,
    "union-absorb-star": union_absorb_star,
    "union-epsilon-nullable": union_epsilon_nullable,
    "star-star": star_star,
    "star-concat": star_concat,
    "omega-unroll": omega_unroll,
    "omega-star-absorb": omega_star_absorb,
    "omega-plus": omega_plus,
}

DEFAULT_RULES = frozenset(RULES)


def _rebuild(e: Node, kids: list) -> Node:
    match e:
        case Union():
            return union(*kids)
        case Concat():
            return concat(*kids)
        case Star():
            return star(kids[0], grouped=kids[0].grouped)
        case OmegaIter():
            return omega(kids[0])
        case ConcatFin():
            return concat_fin(*kids)
        case UnionOmega():
            return union_omega(*kids)
    return e


def _pass(e: Node, rules: list) -> Node:
    kids = [_pass(c, rules) for c in children(e)]
    if kids:
        e = _rebuild(e, kids)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            out = rule(e)
            if out is not None:
                e, changed = out, True
                break
    return e


def simplify(e: Node, rules=DEFAULT_RULES, max_iterations: int = 64) -> Node:
    """Apply ``rules`` (names from :data:`RULES`) bottom-up until nothing
    changes. With an empty rule set the input is returned unchanged."""
    unknown = set(rules) - set(RULES)
    if unknown:
        raise KeyError(f"unknown simplification rules: {sorted(unknown)}")
    if not rules:
        return e
    active = [RULES[name] for name in RULES if name in rules]
    current = normalize(e)
    for _ in range(max_iterations):
        nxt = _pass(current, active)
        if nxt == current:
            return nxt
        current = nxt
    warnings.warn(
        f"simplification did not converge within {max_iterations} iterations",
        SimplifyIterationCap,
        stacklevel=2,
    )
    return current
