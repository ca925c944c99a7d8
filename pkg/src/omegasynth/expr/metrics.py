"""Compactness metrics for expression syntax trees."""

from __future__ import annotations

from dataclasses import dataclass

from .tree import (
    Concat,
    ConcatFin,
    Empty,
    EmptyOmega,
    Epsilon,
    Node,
    OmegaIter,
    Star,
    Sym,
    Union,
    UnionOmega,
    children,
)


@dataclass(frozen=True)
class Metrics:
    rpn: int
    tllen: int
    star_height: int

    def as_dict(self) -> dict:
        return {"rpn": self.rpn, "tllen": self.tllen, "h": self.star_height}


def rpn(e: Node) -> int:
    """Number of nodes in the (binary) syntax tree."""
    count = 0
    stack = [e]
    while stack:
        n = stack.pop()
        count += 1
        stack.extend(children(n))
    return count


def tllen(e: Node) -> int:
    """Symbols on the longest path that goes through each star/ω body once."""
    match e:
        case Sym():
            return 1
        case Empty() | Epsilon() | EmptyOmega():
            return 0
        case Union(left, right) | UnionOmega(left, right):
            return max(tllen(left), tllen(right))
        case Concat(left, right) | ConcatFin(left, right):
            return tllen(left) + tllen(right)
        case Star(child) | OmegaIter(child):
            return tllen(child)
    raise TypeError(f"not an expression: {e!r}")


def star_height(e: Node) -> int:
    """Maximum nesting depth of Kleene stars; ω-iteration does not count."""
    match e:
        case Sym() | Empty() | Epsilon() | EmptyOmega():
            return 0
        case Star(child):
            return 1 + star_height(child)
        case OmegaIter(child):
            return star_height(child)
        case _:
            return max(star_height(c) for c in children(e))


def measure(e: Node) -> Metrics:
    return Metrics(rpn(e), tllen(e), star_height(e))
