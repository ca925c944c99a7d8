"""Independent checking machinery.

Nothing in here uses the synthesis pipeline. ω-regular expressions are turned
back into Büchi automata with a position (Glushkov) construction, and two
automata are compared on every ultimately periodic word ``u·v^ω`` within
length bounds.
"""

from __future__ import annotations

import itertools
import random
import string
import warnings
from dataclasses import dataclass

from .automata import NBA, NFA, Acceptance, Transition, as_transition_based, trim
from .decompose import TripletKind
from .expr.tree import (
    EMPTY,
    EPSILON,
    Concat,
    ConcatFin,
    Empty,
    EmptyOmega,
    Epsilon,
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
    nullable,
    omega,
    star,
    sym,
    symbols,
    union,
    union_omega,
)


@dataclass(frozen=True)
class Lasso:
    """The ω-word ``prefix · loop^ω``."""

    prefix: tuple[str, ...]
    loop: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "loop", tuple(self.loop))
        if not self.loop:
            raise ValueError("lasso loop must be nonempty")

    def __str__(self) -> str:
        return f'u="{"".join(self.prefix)}" v="{"".join(self.loop)}"'


@dataclass(frozen=True)
class EquivBounds:
    max_prefix: int = 4
    max_loop: int = 4

    def __post_init__(self):
        if self.max_prefix < 0 or self.max_loop < 1:
            raise ValueError("need max_prefix >= 0 and max_loop >= 1")


@dataclass(frozen=True)
class EquivResult:
    equal: bool
    counterexample: Lasso | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.equal


class CostWarning(UserWarning):
    pass


# ---------------------------------------------------------- lasso acceptance


def nba_accepts_lasso(nba: NBA, lasso: Lasso) -> bool:
    """Product of the automaton with the lasso's position cycle; accept iff
    a cycle through an accepting transition is reachable."""
    nba = as_transition_based(nba)
    index = {s: k for k, s in enumerate(nba.alphabet)}
    word = list(lasso.prefix) + list(lasso.loop)
    for s in word:
        if s not in index:
            raise KeyError(f"unknown symbol {s!r}")
    n, back = len(word), len(lasso.prefix)
    by_src_sym: dict[tuple[int, int], list[Transition]] = {}
    for t in nba.transitions:
        by_src_sym.setdefault((t.src, t.sym), []).append(t)

    def edges(node):
        q, k = node
        nk = k + 1 if k + 1 < n else back
        for t in by_src_sym.get((q, index[word[k]]), ()):
            yield (t.dst, nk), t.accepting

    start = [(q, 0) for q in nba.initial]
    reach = set(start)
    stack = list(start)
    acc_edges = []
    while stack:
        node = stack.pop()
        for nxt, acc in edges(node):
            if acc:
                acc_edges.append((node, nxt))
            if nxt not in reach:
                reach.add(nxt)
                stack.append(nxt)
    for src, dst in acc_edges:
        seen = {dst}
        stack = [dst]
        while stack:
            node = stack.pop()
            if node == src:
                return True
            for nxt, _ in edges(node):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return False


# ------------------------------------------------------------ regex -> NFA


def _glushkov(r: Regex):
    """Returns (labels per position, first, last, follow, nullable)."""
    labels: list[str] = []
    follow: dict[int, set[int]] = {}

    def walk(e):
        match e:
            case Empty():
                return set(), set(), False
            case Epsilon():
                return set(), set(), True
            case Sym(label):
                labels.append(label)
                p = len(labels)
                follow[p] = set()
                return {p}, {p}, False
            case Union(left, right):
                f1, l1, n1 = walk(left)
                f2, l2, n2 = walk(right)
                return f1 | f2, l1 | l2, n1 or n2
            case Concat(left, right):
                f1, l1, n1 = walk(left)
                f2, l2, n2 = walk(right)
                for p in l1:
                    follow[p] |= f2
                return (f1 | f2 if n1 else f1), (l1 | l2 if n2 else l2), n1 and n2
            case Star(child):
                f, l, _ = walk(child)
                for p in l:
                    follow[p] |= f
                return f, l, True
        raise TypeError(f"not a regular expression: {e!r}")

    first, last, null = walk(r)
    return labels, first, last, follow, null


def regex_to_nfa(r: Regex, alphabet=None) -> NFA:
    """ε-free position automaton; state 0 is the only initial state and has
    no incoming transitions."""
    labels, first, last, follow, null = _glushkov(r)
    alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(set(labels)))
    index = {s: k for k, s in enumerate(alphabet)}
    missing = set(labels) - set(index)
    if missing:
        raise KeyError(f"symbols not in alphabet: {sorted(missing)}")
    transitions = [(0, index[labels[p - 1]], p) for p in sorted(first)]
    for p in sorted(follow):
        transitions += [(p, index[labels[q - 1]], q) for q in sorted(follow[p])]
    accepting = set(last) | ({0} if null else set())
    return NFA(len(labels) + 1, alphabet, transitions, {0}, accepting)


def regex_matches(r: Regex, word) -> bool:
    """Direct backtracking-free matcher over end positions."""
    word = list(word)

    def ends(e, i) -> set[int]:
        match e:
            case Empty():
                return set()
            case Epsilon():
                return {i}
            case Sym(label):
                return {i + 1} if i < len(word) and word[i] == label else set()
            case Union(left, right):
                return ends(left, i) | ends(right, i)
            case Concat(left, right):
                out = set()
                for m in ends(left, i):
                    out |= ends(right, m)
                return out
            case Star(child):
                out = {i}
                frontier = [i]
                while frontier:
                    k = frontier.pop()
                    for m in ends(child, k):
                        if m not in out:
                            out.add(m)
                            frontier.append(m)
                return out
        raise TypeError(f"not a regular expression: {e!r}")

    return len(word) in ends(r, 0)


# ------------------------------------------------------- ω-regex -> NBA


def omega_regex_to_nba(e: OmegaRegex, alphabet=None) -> NBA:
    alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(symbols(e)))
    index = {s: k for k, s in enumerate(alphabet)}
    trans: dict[tuple[int, int, int], bool] = {}
    counter = [0]

    def add(p, a, q, acc=False):
        trans[(p, a, q)] = trans.get((p, a, q), False) or acc

    def nfa_part(r: Regex):
        nfa = regex_to_nfa(r, alphabet)
        off = counter[0]
        counter[0] += nfa.num_states
        return nfa, off

    def build(x: OmegaRegex) -> set[int]:
        match x:
            case EmptyOmega():
                return set()
            case OmegaIter(body):
                if nullable(body):
                    raise NullableOmegaBody("ω-iteration body accepts the empty word")
                nfa, off = nfa_part(body)
                for p, a, q in nfa.transitions:
                    add(p + off, a, q + off)
                    if q in nfa.accepting:
                        add(p + off, a, off, True)
                return {off}
            case ConcatFin(prefix, rest):
                nfa, off = nfa_part(prefix)
                starts = build(rest)
                for p, a, q in nfa.transitions:
                    add(p + off, a, q + off)
                    if q in nfa.accepting:
                        for s in starts:
                            add(p + off, a, s)
                return {off} | (starts if 0 in nfa.accepting else set())
            case UnionOmega(left, right):
                return build(left) | build(right)
        raise TypeError(f"not an ω-regular expression: {x!r}")

    missing = symbols(e) - set(index)
    if missing:
        raise KeyError(f"symbols not in alphabet: {sorted(missing)}")
    initial = build(e)
    transitions = [Transition(p, a, q, acc) for (p, a, q), acc in trans.items()]
    return trim(NBA(counter[0], alphabet, transitions, initial, Acceptance.TRANSITION))


# --------------------------------------------------------- bounded equality


def words(alphabet, max_len: int, min_len: int = 0):
    for n in range(min_len, max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


class _Profiles:
    """Bit-parallel evaluation of ``u·v^ω`` membership for many lassos."""

    def __init__(self, nba: NBA, alphabet):
        nba = as_transition_based(nba)
        self.n = nba.num_states
        index = {s: k for k, s in enumerate(alphabet)}
        k = len(alphabet)
        self.succ = [[0] * self.n for _ in range(k)]
        self.acc = [[0] * self.n for _ in range(k)]
        for t in nba.transitions:
            a = index[nba.alphabet[t.sym]]
            self.succ[a][t.src] |= 1 << t.dst
            if t.accepting:
                self.acc[a][t.src] |= 1 << t.dst
        self.index = index
        self.init = 0
        for q in nba.initial:
            self.init |= 1 << q
        self._prefix = {(): self.init}
        ident = [1 << p for p in range(self.n)]
        self._loop = {(): (ident, [0] * self.n)}
        self._good: dict[tuple, int] = {}

    def _image(self, mask: int, table) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= table[low.bit_length() - 1]
            mask ^= low
        return out

    def prefix(self, u: tuple) -> int:
        if u not in self._prefix:
            self._prefix[u] = self._image(self.prefix(u[:-1]), self.succ[self.index[u[-1]]])
        return self._prefix[u]

    def loop(self, v: tuple):
        if v not in self._loop:
            reach, accr = self.loop(v[:-1])
            a = self.index[v[-1]]
            succ, acc = self.succ[a], self.acc[a]
            new_reach = [self._image(m, succ) for m in reach]
            new_acc = [self._image(accr[p], succ) | self._image(reach[p], acc) for p in range(self.n)]
            self._loop[v] = (new_reach, new_acc)
        return self._loop[v]

    def good(self, v: tuple) -> int:
        """States from which ``v^ω`` has an accepting run."""
        if v in self._good:
            return self._good[v]
        reach, accr = self.loop(v)
        comp = _scc(self.n, reach)
        hot = 0
        for p in range(self.n):
            m = accr[p]
            while m:
                low = m & -m
                q = low.bit_length() - 1
                if comp[q] == comp[p]:
                    hot |= 1 << p
                    break
                m ^= low
        # backward closure of the states lying on accepting cycles
        pred = [0] * self.n
        for p in range(self.n):
            m = reach[p]
            while m:
                low = m & -m
                pred[low.bit_length() - 1] |= 1 << p
                m ^= low
        good, frontier = hot, hot
        while frontier:
            new = self._image(frontier, pred) & ~good
            good |= new
            frontier = new
        self._good[v] = good
        return good

    def accepts(self, u: tuple, v: tuple) -> bool:
        return bool(self.prefix(u) & self.good(v))


def _scc(n: int, adj: list[int]) -> list[int]:
    """Iterative Tarjan over bitmask adjacency; returns component ids."""
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, adj[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, rest = work[-1]
            if rest:
                bit = rest & -rest
                work[-1] = (v, rest ^ bit)
                w = bit.bit_length() - 1
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, adj[w]))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def bounded_equiv(x: NBA, y: NBA, bounds: EquivBounds = EquivBounds(), budget: int = 2_000_000) -> EquivResult:
    """Compare two automata on every lasso with ``|u| <= max_prefix`` and
    ``1 <= |v| <= max_loop``; the first disagreement in enumeration order
    (prefix length, prefix, loop length, loop) is returned."""
    if set(x.alphabet) != set(y.alphabet):
        raise ValueError(
            f"alphabets differ: {sorted(x.alphabet)} vs {sorted(y.alphabet)}"
        )
    alphabet = x.alphabet
    k = len(alphabet)
    n_u = sum(k ** i for i in range(bounds.max_prefix + 1))
    n_v = sum(k ** i for i in range(1, bounds.max_loop + 1))
    if n_u * n_v > budget:
        warnings.warn(f"bounded equivalence will check {n_u * n_v} lassos", CostWarning, stacklevel=2)
    px, py = _Profiles(x, alphabet), _Profiles(y, alphabet)
    loops = list(words(alphabet, bounds.max_loop, 1))
    checked = 0
    for u in words(alphabet, bounds.max_prefix):
        for v in loops:
            checked += 1
            if px.accepts(u, v) != py.accepts(u, v):
                return EquivResult(False, Lasso(u, v), checked)
    return EquivResult(True, None, checked)


# ------------------------------------------------------------ brute force


def first_arrival_accepts(nba: NBA, i: int, j: int, kind, word) -> bool:
    """Path enumeration over ``nba``: is there a run of ``word`` from ``i``
    that ends exactly on its first arrival at ``j``, taking only
    rejecting/accepting transitions out of ``i`` for ``REJ``/``ACC``?"""
    kind = TripletKind(kind)
    word = [nba.symbol_index(s) for s in word]
    if not word:
        return False
    succ = nba.successors()

    def go(p, k):
        for t in succ[p]:
            if t.sym != word[k]:
                continue
            if p == i and kind is TripletKind.REJ and t.accepting:
                continue
            if p == i and kind is TripletKind.ACC and not t.accepting:
                continue
            last = k == len(word) - 1
            if t.dst == j:
                if last:
                    return True
                continue
            if not last and go(t.dst, k + 1):
                return True
        return False

    return go(i, 0)


# -------------------------------------------------------------- generators


def _rng(seed) -> random.Random:
    # tuples would be hashed, and str hashing is salted per process
    if not isinstance(seed, (int, float, str, bytes)):
        seed = repr(seed)
    return random.Random(seed)


def alphabet_of(size: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:size])


def random_nba(
    seed,
    num_states: int = 4,
    alphabet_size: int = 2,
    edge_density: float = 0.4,
    acc_prob: float = 0.3,
    num_initial: int = 1,
) -> NBA:
    """Seeded random transition-based NBA, trimmed to its reachable part."""
    if num_states < 1 or alphabet_size < 0 or not 0 <= edge_density <= 1 or not 0 <= acc_prob <= 1:
        raise ValueError("random_nba parameters out of range")
    rng = _rng(seed)
    alphabet = alphabet_of(alphabet_size)
    transitions = []
    for p in range(num_states):
        for a in range(alphabet_size):
            for q in range(num_states):
                if rng.random() < edge_density:
                    transitions.append(Transition(p, a, q, rng.random() < acc_prob))
    initial = set(rng.sample(range(num_states), min(num_initial, num_states)))
    return trim(NBA(num_states, alphabet, transitions, initial))


def random_state_nba(seed, num_states=4, alphabet_size=2, edge_density=0.4, acc_prob=0.3) -> NBA:
    rng = _rng(seed)
    base = random_nba(rng.random(), num_states, alphabet_size, edge_density, 0.0)
    accepting = {q for q in base.states if rng.random() < acc_prob}
    return NBA(base.num_states, base.alphabet, base.transitions, base.initial, Acceptance.STATE, accepting)


def random_regex(rng: random.Random, depth: int, alphabet) -> Regex:
    if depth <= 1 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.08:
            return EPSILON
        if roll < 0.12:
            return EMPTY
        return sym(rng.choice(alphabet))
    op = rng.choice(["union", "concat", "concat", "star"])
    if op == "star":
        return star(random_regex(rng, depth - 1, alphabet))
    left = random_regex(rng, depth - 1, alphabet)
    right = random_regex(rng, depth - 1, alphabet)
    return union(left, right) if op == "union" else concat(left, right)


def random_omega_regex(rng: random.Random, depth: int, alphabet) -> OmegaRegex:
    """Random ω-expression; nullable ω-bodies get a trailing symbol."""
    roll = rng.random()
    if depth <= 2 or roll < 0.4:
        body = random_regex(rng, max(depth - 1, 1), alphabet)
        if nullable(body):
            body = concat(body, sym(rng.choice(alphabet)))
        return omega(body)
    if roll < 0.75:
        return concat_fin(random_regex(rng, depth - 1, alphabet), random_omega_regex(rng, depth - 1, alphabet))
    return union_omega(random_omega_regex(rng, depth - 1, alphabet), random_omega_regex(rng, depth - 1, alphabet))
