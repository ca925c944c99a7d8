"""Reading and writing automata: a Büchi subset of HOA v1 and a native JSON form.

HOA edge labels are treated as opaque letters. Each syntactically distinct
label becomes one alphabet symbol whose display text is the label with atomic
proposition indices replaced by their names (``[0&!1]`` over ``AP: 2 "a" "b"``
gives ``a&!b``).
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .automata import NBA, NFA, Acceptance, AutomatonError, Transition


class InputError(ValueError):
    """Malformed or unsupported input document."""


class HoaError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnsupportedAcceptance(HoaError):
    pass


class SchemaError(InputError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


# --------------------------------------------------------------------- HOA

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>/\*)
  | (?P<marker>--(?:BODY|END|ABORT)--)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<header>[A-Za-z_][A-Za-z0-9_-]*:)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_-]*)
  | (?P<alias>@[A-Za-z0-9_-]+)
  | (?P<punct>[\[\]{}()&|!])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise HoaError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind == "comment":
            # HOA comments nest
            depth, i = 1, m.end()
            while depth:
                if i >= len(text):
                    raise HoaError("unterminated comment", line)
                if text.startswith("/*", i):
                    depth, i = depth + 1, i + 2
                elif text.startswith("*/", i):
                    depth, i = depth - 1, i + 2
                else:
                    line += text[i] == "\n"
                    i += 1
            pos = i
            continue
        elif kind != "ws":
            tokens.append((kind, m.group(), line))
        pos = m.end()
    return tokens


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


class _HoaParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", self._last_line())

    def _last_line(self) -> int:
        return self.toks[-1][2] if self.toks else 1

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise HoaError(f"expected {want}, got {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def take_int(self) -> int:
        return int(self.take("int")[1])

    def label(self) -> tuple[tuple[str, str], ...]:
        """Tokens of a bracketed label, brackets consumed."""
        self.take("punct", "[")
        out = []
        depth = 0
        while True:
            kind, val, line = self.peek()
            if kind == "eof":
                raise HoaError("unterminated label", line)
            if (kind, val) == ("punct", "]") and depth == 0:
                self.i += 1
                break
            if kind == "alias":
                raise HoaError("aliases are not supported", line)
            if kind not in ("int", "ident", "punct") or val in "[]{}":
                raise HoaError(f"unexpected {val!r} in label", line)
            if kind == "ident" and val not in ("t", "f"):
                raise HoaError(f"unexpected {val!r} in label", line)
            self.i += 1
            depth += {"(": 1, ")": -1}.get(val, 0)
            if depth < 0:
                raise HoaError("unbalanced parentheses in label", line)
            out.append((kind, val))
        if not out or depth:
            raise HoaError("empty or unbalanced label", self.toks[self.i - 1][2])
        return tuple(out)

    def acc_sets(self) -> bool:
        """Parse an optional ``{...}`` acceptance-set mark; True if present."""
        if self.peek()[:2] != ("punct", "{"):
            return False
        self.take()
        while self.peek()[:2] != ("punct", "}"):
            line = self.peek()[2]
            if self.take_int() != 0:
                raise UnsupportedAcceptance("only acceptance set 0 is supported", line)
        self.take()
        return True


def parse_hoa(text: str | bytes) -> NBA:
    """Parse a Büchi automaton in HOA v1 format."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise HoaError(f"input is not UTF-8: {exc}") from None
    p = _HoaParser(text)
    kind, val, line = p.peek()
    if (kind, val) != ("header", "HOA:"):
        raise HoaError("missing 'HOA: v1' header", line)

    n_states = None
    starts: list[int] = []
    aps: list[str] | None = None
    acceptance_seen = False
    while p.peek()[0] == "header":
        _, name, line = p.take()
        if name == "HOA:":
            if p.take("ident")[1] != "v1":
                raise HoaError("only HOA v1 is supported", line)
        elif name == "States:":
            n_states = p.take_int()
        elif name == "Start:":
            starts.append(p.take_int())
            if p.peek()[:2] == ("punct", "&"):
                raise HoaError("conjunctive start states (alternation) not supported", line)
        elif name == "AP:":
            count = p.take_int()
            aps = [_unquote(p.take("string")[1]) for _ in range(count)]
            if len(set(aps)) != len(aps):
                raise HoaError("duplicate atomic proposition names", line)
        elif name == "Alias:":
            raise HoaError("aliases are not supported", line)
        elif name == "Acceptance:":
            acc = []
            while p.peek()[0] not in ("header", "marker", "eof"):
                acc.append(p.take()[1])
            if acc != ["1", "Inf", "(", "0", ")"]:
                raise UnsupportedAcceptance(
                    f"unsupported acceptance condition {' '.join(acc)!r}", line
                )
            acceptance_seen = True
        else:
            while p.peek()[0] not in ("header", "marker", "eof"):
                p.take()
    if not acceptance_seen:
        raise UnsupportedAcceptance("missing 'Acceptance: 1 Inf(0)'", p.peek()[2])
    p.take("marker", "--BODY--")
    aps = aps or []

    raw_edges: list[tuple[int, tuple, int, bool, int]] = []
    state_marks: set[int] = set()
    declared: set[int] = set()
    any_edge_mark = False
    while p.peek()[:2] == ("header", "State:"):
        _, _, line = p.take()
        state_label = p.label() if p.peek()[:2] == ("punct", "[") else None
        q = p.take_int()
        if q in declared:
            raise HoaError(f"state {q} declared twice", line)
        declared.add(q)
        if p.peek()[0] == "string":
            p.take()
        if p.acc_sets():
            state_marks.add(q)
        while p.peek()[0] in ("punct", "int") and p.peek()[1] != "{":
            eline = p.peek()[2]
            lab = p.label() if p.peek()[:2] == ("punct", "[") else state_label
            if lab is None:
                raise HoaError("implicit edge labels are not supported", eline)
            dst = p.take_int()
            if p.peek()[:2] == ("punct", "&"):
                raise HoaError("conjunctive destinations (alternation) not supported", eline)
            marked = p.acc_sets()
            any_edge_mark |= marked
            raw_edges.append((q, lab, dst, marked, eline))
    tok = p.peek()
    if tok[1] == "--ABORT--":
        raise HoaError("automaton aborted", tok[2])
    p.take("marker", "--END--")
    if p.peek()[0] != "eof":
        raise HoaError("trailing content after --END--", p.peek()[2])

    if state_marks and any_edge_mark:
        raise HoaError("mixed state and edge acceptance marks are not supported")

    if n_states is None:
        n_states = 1 + max(
            [*declared, *starts, *(e[2] for e in raw_edges)], default=-1
        )
    for q in [*declared, *starts]:
        if q >= n_states:
            raise HoaError(f"state {q} out of range (States: {n_states})")

    def display(lab) -> str:
        parts = []
        for kind, val in lab:
            if kind == "int":
                k = int(val)
                if k >= len(aps):
                    raise HoaError(f"AP index {k} out of range")
                parts.append(aps[k])
            else:
                parts.append(val)
        return "".join(parts)

    labels = [e[1] for e in raw_edges]
    if labels and all(len(lab) == 1 and lab[0][0] == "int" for lab in labels):
        for lab in labels:
            display(lab)
        alphabet = list(aps)
    else:
        alphabet = []
        for lab in labels:
            d = display(lab)
            if d not in alphabet:
                alphabet.append(d)
    index = {s: k for k, s in enumerate(alphabet)}

    transitions = []
    seen = set()
    for q, lab, dst, marked, eline in raw_edges:
        if dst >= n_states:
            raise HoaError(f"edge target {dst} out of range (States: {n_states})", eline)
        sym = index[display(lab)]
        if (q, sym, dst) in seen:
            raise HoaError(f"duplicate edge {q} -[{display(lab)}]-> {dst}", eline)
        seen.add((q, sym, dst))
        transitions.append(Transition(q, sym, dst, marked))

    kind = Acceptance.STATE if state_marks else Acceptance.TRANSITION
    try:
        return NBA(n_states, alphabet, transitions, starts, kind, state_marks)
    except AutomatonError as exc:
        raise HoaError(str(exc)) from None


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_hoa(aut: NBA | NFA, name: str | None = None) -> str:
    """Serialize to HOA. Each alphabet symbol becomes one AP and edges are
    labelled with the bare AP index. NFAs are written with their accepting
    states marked, for inspection only."""
    is_nfa = isinstance(aut, NFA)
    state_based = is_nfa or not aut.is_transition_based
    marked = aut.accepting if is_nfa else aut.accepting_states
    lines = ["HOA: v1"]
    if name:
        lines.append(f"name: {_quote(name)}")
    lines.append(f"States: {aut.num_states}")
    lines += [f"Start: {q}" for q in sorted(aut.initial)]
    lines.append(" ".join([f"AP: {len(aut.alphabet)}", *map(_quote, aut.alphabet)]))
    lines.append("acc-name: Buchi")
    lines.append("Acceptance: 1 Inf(0)")
    lines.append(
        "properties: trans-labels explicit-labels "
        + ("state-acc" if state_based else "trans-acc")
    )
    lines.append("--BODY--")
    for q in range(aut.num_states):
        lines.append(f"State: {q}" + (" {0}" if state_based and q in marked else ""))
        for t in aut.transitions:
            src, sym, dst = t[0], t[1], t[2]
            if src == q:
                acc = " {0}" if not state_based and t[3] else ""
                lines.append(f"[{sym}] {dst}{acc}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------------- JSON


def nba_to_dict(nba: NBA) -> dict:
    return {
        "num_states": nba.num_states,
        "alphabet": list(nba.alphabet),
        "initial": sorted(nba.initial),
        "acceptance_kind": nba.acceptance.value,
        "accepting_states": sorted(nba.accepting_states),
        "transitions": [
            {"src": t.src, "sym": t.sym, "dst": t.dst, "acc": t.accepting}
            for t in nba.transitions
        ],
    }


def nfa_to_dict(nfa: NFA) -> dict:
    return {
        "num_states": nfa.num_states,
        "alphabet": list(nfa.alphabet),
        "initial": sorted(nfa.initial),
        "accepting": sorted(nfa.accepting),
        "transitions": [{"src": p, "sym": a, "dst": q} for p, a, q in nfa.transitions],
    }


def _int(field: str, value, lo: int = 0, hi: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(field, f"expected an integer, got {value!r}")
    if value < lo or (hi is not None and value >= hi):
        upper = f"..{hi - 1}" if hi is not None else ""
        raise SchemaError(field, f"{value} out of range {lo}{upper}")
    return value


def _list(field: str, value) -> list:
    if not isinstance(value, list):
        raise SchemaError(field, f"expected a list, got {type(value).__name__}")
    return value


def nba_from_dict(doc) -> NBA:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    for key in ("num_states", "alphabet", "initial", "acceptance_kind", "transitions"):
        if key not in doc:
            raise SchemaError(key, "missing")
    n = _int("num_states", doc["num_states"])
    alphabet = _list("alphabet", doc["alphabet"])
    for k, s in enumerate(alphabet):
        if not isinstance(s, str) or not s:
            raise SchemaError(f"alphabet[{k}]", f"expected a non-empty string, got {s!r}")
    if len(set(alphabet)) != len(alphabet):
        raise SchemaError("alphabet", "labels must be unique")
    initial = [_int(f"initial[{k}]", q, 0, n) for k, q in enumerate(_list("initial", doc["initial"]))]
    kind = doc["acceptance_kind"]
    if kind not in ("transition", "state"):
        raise SchemaError("acceptance_kind", f"expected 'transition' or 'state', got {kind!r}")
    acc_states = [
        _int(f"accepting_states[{k}]", q, 0, n)
        for k, q in enumerate(_list("accepting_states", doc.get("accepting_states", [])))
    ]
    if kind == "transition" and acc_states:
        raise SchemaError("accepting_states", "must be empty for acceptance_kind 'transition'")
    transitions = []
    seen = set()
    for k, t in enumerate(_list("transitions", doc["transitions"])):
        f = f"transitions[{k}]"
        if not isinstance(t, dict):
            raise SchemaError(f, "expected an object")
        for key in ("src", "sym", "dst"):
            if key not in t:
                raise SchemaError(f"{f}.{key}", "missing")
        src = _int(f"{f}.src", t["src"], 0, n)
        sym = _int(f"{f}.sym", t["sym"], 0, len(alphabet))
        dst = _int(f"{f}.dst", t["dst"], 0, n)
        acc = t.get("acc", False)
        if not isinstance(acc, bool):
            raise SchemaError(f"{f}.acc", f"expected a boolean, got {acc!r}")
        if acc and kind == "state":
            raise SchemaError(f"{f}.acc", "accepting edge in a state-based automaton")
        if (src, sym, dst) in seen:
            raise SchemaError(f, "duplicate transition")
        seen.add((src, sym, dst))
        transitions.append(Transition(src, sym, dst, acc))
    return NBA(n, alphabet, transitions, initial, Acceptance(kind), acc_states)


def parse_json(text: str | bytes) -> NBA:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return nba_from_dict(doc)


def emit_json(aut: NBA | NFA) -> str:
    doc = nfa_to_dict(aut) if isinstance(aut, NFA) else nba_to_dict(aut)
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str, hint: str = "") -> NBA:
    """Parse HOA or JSON, sniffing from ``hint`` (a filename) or the content."""
    stripped = text.lstrip()
    if hint.endswith(".json") or stripped.startswith("{"):
        return parse_json(text)
    return parse_hoa(text)


def load(path: str | Path) -> NBA:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None
    return loads(text, path.name)
