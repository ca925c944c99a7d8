"""Syntax trees for regular and ω-regular expressions.

The node classes are plain immutable records. Build trees through the
lower-case constructors (:func:`union`, :func:`concat`, :func:`star`,
:func:`omega`, :func:`concat_fin`, :func:`union_omega`), which normalize as
they go:

* ∅ is absorbing for concatenation and neutral for union, ε is neutral for
  concatenation, ``∅* = ε* = ε``;
* union and concatenation chains are kept left-associative;
* ω-forms over ∅ collapse to :data:`EMPTY_OMEGA` and a finite prefix of ε
  disappears.

After construction ∅ occurs only as a whole expression and ε never sits
under a concatenation.

``grouped`` records that the expression was written in parentheses. It only
affects printing and is ignored by equality, hashing and the metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Regex(Node):
    grouped: bool = field(default=False, compare=False, kw_only=True)


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    label: str


@dataclass(frozen=True)
class Union(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True)
class Star(Regex):
    child: Regex


@dataclass(frozen=True)
class OmegaRegex(Node):
    grouped: bool = field(default=False, compare=False, kw_only=True)


@dataclass(frozen=True)
class EmptyOmega(OmegaRegex):
    pass


@dataclass(frozen=True)
class OmegaIter(OmegaRegex):
    body: Regex


@dataclass(frozen=True)
class ConcatFin(OmegaRegex):
    prefix: Regex
    rest: OmegaRegex


@dataclass(frozen=True)
class UnionOmega(OmegaRegex):
    left: OmegaRegex
    right: OmegaRegex


EMPTY = Empty()
EPSILON = Epsilon()
EMPTY_OMEGA = EmptyOmega()


class NullableOmegaBody(ValueError):
    """An ω-iteration body that accepts the empty word."""


def sym(label: str) -> Sym:
    return Sym(label)


def union(left: Regex, right: Regex) -> Regex:
    if isinstance(left, Empty):
        return right
    if isinstance(right, Empty):
        return left
    if isinstance(right, Union):
        return union(union(left, right.left), right.right)
    return Union(left, right)


def concat(left: Regex, right: Regex) -> Regex:
    if isinstance(left, Empty) or isinstance(right, Empty):
        return EMPTY
    if isinstance(left, Epsilon):
        return right
    if isinstance(right, Epsilon):
        return left
    if isinstance(right, Concat):
        return concat(concat(left, right.left), right.right)
    return Concat(left, right)


def star(child: Regex, grouped: bool = False) -> Regex:
    """Kleene star. ``grouped`` marks the operand as parenthesised for
    printing, e.g. ``(c)*``."""
    if isinstance(child, (Empty, Epsilon)):
        return EPSILON
    if grouped and not child.grouped:
        child = replace(child, grouped=True)
    return Star(child)


def omega(body: Regex) -> OmegaRegex:
    if isinstance(body, Empty):
        return EMPTY_OMEGA
    if nullable(body):
        raise NullableOmegaBody("ω-iteration body must not accept the empty word")
    return OmegaIter(body)


def concat_fin(prefix: Regex, rest: OmegaRegex) -> OmegaRegex:
    if isinstance(prefix, Empty) or isinstance(rest, EmptyOmega):
        return EMPTY_OMEGA
    if isinstance(prefix, Epsilon):
        return rest
    if isinstance(rest, ConcatFin):
        return concat_fin(concat(prefix, rest.prefix), rest.rest)
    return ConcatFin(prefix, rest)


def union_omega(left: OmegaRegex, right: OmegaRegex) -> OmegaRegex:
    if isinstance(left, EmptyOmega):
        return right
    if isinstance(right, EmptyOmega):
        return left
    if isinstance(right, UnionOmega):
        return union_omega(union_omega(left, right.left), right.right)
    return UnionOmega(left, right)


def union_all(items, omega_kind: bool = False):
    out = EMPTY_OMEGA if omega_kind else EMPTY
    join = union_omega if omega_kind else union
    for x in items:
        out = join(out, x)
    return out


def concat_all(items) -> Regex:
    out: Regex = EPSILON
    for x in items:
        out = concat(out, x)
    return out


def nullable(r: Regex) -> bool:
    match r:
        case Epsilon() | Star():
            return True
        case Empty() | Sym():
            return False
        case Union(left, right):
            return nullable(left) or nullable(right)
        case Concat(left, right):
            return nullable(left) and nullable(right)
    raise TypeError(f"not a regular expression: {r!r}")


def normalize(e: Node) -> Node:
    """Rebuild ``e`` bottom-up through the normalizing constructors."""
    match e:
        case Empty() | Epsilon() | Sym() | EmptyOmega():
            return e
        case Union(left, right):
            return union(normalize(left), normalize(right))
        case Concat(left, right):
            return concat(normalize(left), normalize(right))
        case Star(child):
            return star(normalize(child), grouped=child.grouped)
        case OmegaIter(body):
            return omega(normalize(body))
        case ConcatFin(prefix, rest):
            return concat_fin(normalize(prefix), normalize(rest))
        case UnionOmega(left, right):
            return union_omega(normalize(left), normalize(right))
    raise TypeError(f"not an expression: {e!r}")


def flatten_union(e: Node) -> list:
    if isinstance(e, (Union, UnionOmega)):
        return flatten_union(e.left) + flatten_union(e.right)
    return [e]


def flatten_concat(r: Regex) -> list[Regex]:
    if isinstance(r, Concat):
        return flatten_concat(r.left) + flatten_concat(r.right)
    if isinstance(r, Epsilon):
        return []
    return [r]


def children(e: Node) -> tuple:
    match e:
        case Union(left, right) | Concat(left, right) | UnionOmega(left, right):
            return (left, right)
        case Star(child):
            return (child,)
        case OmegaIter(body):
            return (body,)
        case ConcatFin(prefix, rest):
            return (prefix, rest)
    return ()


def symbols(e: Node) -> set[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Sym):
            out.add(n.label)
        stack.extend(children(n))
    return out
