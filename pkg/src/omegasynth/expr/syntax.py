"""Concrete syntax for expressions.

Grammar (``^w`` binds like ``*``; star > concatenation > union)::

    expr    := term ('+' term)*
    term    := factor+
    factor  := atom ('*' | '^w')*
    atom    := SYMBOL | '%e' | '%0' | '(' expr ')'
    SYMBOL  := a single letter or digit | '<' any text without '>' '>'

Inside ``<...>``, a literal ``>`` or ``\\`` is escaped with a backslash.
"""

from __future__ import annotations

from dataclasses import replace

from .tree import (
    ConcatFin,
    Concat,
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
    EMPTY,
    EPSILON,
    concat,
    concat_fin,
    omega,
    star,
    union,
    union_omega,
)


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"syntax error at position {position}: {message}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()+*":
            toks.append((c, c, i))
            i += 1
        elif text.startswith("^w", i):
            toks.append(("^w", "^w", i))
            i += 2
        elif text.startswith("%e", i):
            toks.append(("eps", "%e", i))
            i += 2
        elif text.startswith("%0", i):
            toks.append(("empty", "%0", i))
            i += 2
        elif c == "<":
            j = i + 1
            label = []
            while j < len(text) and text[j] != ">":
                if text[j] == "\\" and j + 1 < len(text):
                    j += 1
                label.append(text[j])
                j += 1
            if j >= len(text):
                raise ExprSyntaxError("unterminated '<'", i)
            if not label:
                raise ExprSyntaxError("empty symbol '<>'", i)
            toks.append(("sym", "".join(label), i))
            i = j + 1
        elif c.isalnum():
            toks.append(("sym", c, i))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {c!r}", i)
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    """Builds an untyped tree of tuples, then :func:`_typed` checks it."""

    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def expr(self):
        pos = self.tok[2]
        terms = [self.term()]
        while self.tok[0] == "+":
            self.i += 1
            terms.append(self.term())
        return ("union", terms, pos) if len(terms) > 1 else terms[0]

    def term(self):
        pos = self.tok[2]
        factors = [self.factor()]
        while self.tok[0] in ("sym", "eps", "empty", "("):
            factors.append(self.factor())
        return ("concat", factors, pos) if len(factors) > 1 else factors[0]

    def factor(self):
        node = self.atom()
        while self.tok[0] in ("*", "^w"):
            kind, _, pos = self.tok
            self.i += 1
            node = ("star" if kind == "*" else "omega", node, pos)
        return node

    def atom(self):
        kind, val, pos = self.tok
        if kind == "(":
            self.i += 1
            inner = self.expr()
            if self.tok[0] != ")":
                raise ExprSyntaxError("expected ')'", self.tok[2])
            self.i += 1
            return ("group", inner, pos)
        if kind in ("sym", "eps", "empty"):
            self.i += 1
            return (kind, val, pos)
        what = "end of input" if kind == "eof" else repr(val)
        raise ExprSyntaxError(f"unexpected {what}", pos)


def _typed(node) -> Node:
    kind, arg, pos = node
    if kind == "sym":
        return Sym(arg)
    if kind == "eps":
        return EPSILON
    if kind == "empty":
        return EMPTY
    if kind == "group":
        inner = _typed(arg)
        return replace(inner, grouped=True)
    if kind == "star":
        child = _typed(arg)
        if isinstance(child, OmegaRegex):
            raise ExprSyntaxError("'*' applied to an ω-expression", pos)
        return star(child)
    if kind == "omega":
        body = _typed(arg)
        if isinstance(body, OmegaRegex):
            raise ExprSyntaxError("'^w' applied to an ω-expression", pos)
        try:
            return omega(body)
        except NullableOmegaBody as exc:
            raise ExprSyntaxError(str(exc), pos) from None
    parts = [_typed(x) for x in arg]
    if kind == "union":
        finite = [isinstance(p, Regex) for p in parts]
        if all(finite):
            out = parts[0]
            for p in parts[1:]:
                out = union(out, p)
            return out
        if any(finite):
            raise ExprSyntaxError("union mixes finite and ω-expressions", pos)
        out = parts[0]
        for p in parts[1:]:
            out = union_omega(out, p)
        return out
    # concatenation: only the last factor may be an ω-expression
    for p, raw in zip(parts[:-1], arg[:-1]):
        if isinstance(p, OmegaRegex):
            raise ExprSyntaxError("ω-expression must end a concatenation", raw[2])
    prefix = parts[0] if len(parts) > 1 else EPSILON
    for p in parts[1:-1]:
        prefix = concat(prefix, p)
    last = parts[-1]
    if isinstance(last, OmegaRegex):
        return concat_fin(prefix, last)
    return concat(prefix, last)


def _parse_any(text: str) -> Node:
    p = _Parser(text)
    tree = p.expr()
    if p.tok[0] != "eof":
        raise ExprSyntaxError(f"unexpected {p.tok[1]!r}", p.tok[2])
    return _typed(tree)


def parse(text: str) -> Regex:
    e = _parse_any(text)
    if not isinstance(e, Regex):
        raise ExprSyntaxError("expected a regular expression, got an ω-expression", 0)
    return e


def parse_omega(text: str) -> OmegaRegex:
    e = _parse_any(text)
    if not isinstance(e, OmegaRegex):
        raise ExprSyntaxError("expected an ω-expression", 0)
    return e


def format_symbol(label: str) -> str:
    if len(label) == 1 and label.isalnum() and label.isascii():
        return label
    return "<" + label.replace("\\", "\\\\").replace(">", "\\>") + ">"


# precedence levels: union 0, concat 1, star/omega operand 2
def _fmt(e: Node, level: int, bare: bool = False) -> str:
    match e:
        case Empty():
            s, own = "%0", 3
        case Epsilon():
            s, own = "%e", 3
        case Sym(label):
            s, own = format_symbol(label), 3
        case EmptyOmega():
            s, own = "%0^w", 2
        case Union(left, right) | UnionOmega(left, right):
            s, own = _fmt(left, 0) + "+" + _fmt(right, 1), 0
        case Concat(left, right):
            s, own = _fmt(left, 1) + _fmt(right, 2), 1
        case ConcatFin(prefix, rest):
            s, own = _fmt(prefix, 1) + _fmt(rest, 2), 1
        case Star(child):
            s, own = _fmt(child, 3) + "*", 2
        case OmegaIter(body):
            s, own = "(" + _fmt(body, 0, bare=True) + ")^w", 2
        case _:
            raise TypeError(f"not an expression: {e!r}")
    if own < level or (e.grouped and not bare and not isinstance(e, OmegaIter)):
        return "(" + s + ")"
    return s


def to_text(e: Node) -> str:
    return _fmt(e, 0)
