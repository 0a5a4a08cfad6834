"""Line-oriented system description files.

::

    # left process of the branching-time example
    type: lts
    alphabet: a b c
    states: s0 s10 s11 s20 s21
    trans: s0 a s10
    trans: s0 a s11

Keys after the ``type:`` line may appear in any order.  ``gps`` transitions
carry a rational weight (``trans: x a y 1/2``), ``lts-term``/``nfa`` add
``accept: s ...``, and ``sig`` uses ``op: f 2`` and ``rule: x f x y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .em_extension import make_em_instance
from .freemonad import SigCoalgebra, Signature, make_term_instance
from .kernel import ConstructionError, Instance
from .nondet import (
    LtsSystem,
    NonBlockingNfa,
    TerminatingLts,
    completion_to_nonblocking,
    make_lts_instance,
    make_nonblocking_nfa_instance,
    make_terminating_instance,
)
from .prob import GpsSystem, make_gps_instance

KINDS = ("lts", "lts-term", "nfa", "gps", "sig")
ALLOWED_KEYS = {
    "lts": {"alphabet", "states", "trans"},
    "lts-term": {"alphabet", "states", "trans", "accept"},
    "nfa": {"alphabet", "states", "trans", "accept"},
    "gps": {"alphabet", "states", "trans"},
    "sig": {"states", "op", "rule"},
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message}, line {line}")


@dataclass(frozen=True)
class SystemDescription:
    kind: str
    alphabet: tuple = ()
    states: tuple = ()
    transitions: tuple = ()  # (src, symbol, dst, weight-or-None)
    accepting: tuple = ()
    operations: tuple = ()  # (name, arity)
    rules: tuple = ()  # (state, op, (args...))


def _tokens(raw: str) -> tuple[str, str] | None:
    text = raw.split("#", 1)[0].strip()
    if not text:
        return None
    key, sep, rest = text.partition(":")
    if not sep:
        return ("", text)
    return key.strip(), rest.strip()


def parse_system(text: str) -> SystemDescription:
    entries: list[tuple[int, str, list[str]]] = []
    kind = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = _tokens(raw)
        if tok is None:
            continue
        key, rest = tok
        if not key:
            raise ParseError(f"expected 'key: value', got {rest!r}", lineno)
        if kind is None:
            if key != "type":
                raise ParseError("the first entry must be 'type: <kind>'", lineno)
            if rest not in KINDS:
                raise ParseError(f"unknown kind {rest!r}", lineno)
            kind = rest
            continue
        if key == "type":
            raise ParseError("duplicate type line", lineno)
        if key not in ALLOWED_KEYS[kind]:
            raise ParseError(f"key {key!r} not allowed for kind {kind}", lineno)
        entries.append((lineno, key, rest.split()))
    if kind is None:
        raise ParseError("missing 'type:' line")

    alphabet: list[str] = []
    states: list[str] = []
    ops: list[tuple[str, int]] = []
    for lineno, key, words in entries:
        if key == "alphabet":
            for w in words:
                if w in alphabet:
                    raise ParseError(f"symbol {w} declared twice", lineno)
                alphabet.append(w)
        elif key == "states":
            for w in words:
                if w in states:
                    raise ParseError(f"state {w} declared twice", lineno)
                states.append(w)
        elif key == "op":
            if len(words) != 2:
                raise ParseError("expected 'op: <name> <arity>'", lineno)
            name, arity = words
            if not arity.isdigit():
                raise ParseError(f"arity {arity!r} is not a non-negative integer", lineno)
            if any(name == n for n, _ in ops):
                raise ParseError(f"operation {name} declared twice", lineno)
            if any(c in "(),*" for c in name):
                raise ParseError(f"bad operation name {name!r}", lineno)
            ops.append((name, int(arity)))

    def state(name: str, lineno: int) -> str:
        if name not in states:
            raise ParseError(f"state {name} not declared", lineno)
        return name

    transitions = []
    accepting: list[str] = []
    rules = []
    first_line: dict[str, int] = {}
    for lineno, key, words in entries:
        if key == "trans":
            want = 4 if kind == "gps" else 3
            if len(words) != want:
                form = "src sym dst weight" if kind == "gps" else "src sym dst"
                raise ParseError(f"expected 'trans: {form}'", lineno)
            src, sym, dst = words[:3]
            state(src, lineno)
            if sym not in alphabet:
                raise ParseError(f"symbol {sym} not declared", lineno)
            state(dst, lineno)
            weight = None
            if kind == "gps":
                try:
                    weight = Fraction(words[3])
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"bad weight {words[3]!r}", lineno) from None
                if weight <= 0:
                    raise ParseError(f"weight {weight} must be positive", lineno)
                if any(t[:3] == (src, sym, dst) for t in transitions):
                    raise ParseError(f"duplicate transition {src} {sym} {dst}", lineno)
            first_line.setdefault(src, lineno)
            transitions.append((src, sym, dst, weight))
        elif key == "accept":
            for w in words:
                state(w, lineno)
                if w not in accepting:
                    accepting.append(w)
        elif key == "rule":
            if len(words) < 2:
                raise ParseError("expected 'rule: <state> <op> <args...>'", lineno)
            src, op, args = words[0], words[1], tuple(words[2:])
            state(src, lineno)
            arity = dict(ops).get(op)
            if arity is None:
                raise ParseError(f"operation {op} not declared", lineno)
            if arity != len(args):
                raise ParseError(f"operation {op} has arity {arity}, got {len(args)} arguments", lineno)
            for a in args:
                state(a, lineno)
            if any(r[0] == src for r in rules):
                raise ParseError(f"second rule for state {src}", lineno)
            rules.append((src, op, args))

    states_line = next((ln for ln, k, _ in entries if k == "states"), None)
    if not states:
        raise ParseError("no states declared")
    if kind == "gps":
        if not alphabet:
            raise ParseError("gps systems need a non-empty alphabet")
        for s in states:
            total = sum((t[3] for t in transitions if t[0] == s), Fraction(0))
            if total != 1:
                raise ParseError(f"row of state {s} sums to {total}, expected 1",
                                 first_line.get(s, states_line))
    if kind == "sig":
        if not ops:
            raise ParseError("a signature needs at least one 'op:' line")
        for s in states:
            if not any(r[0] == s for r in rules):
                raise ParseError(f"state {s} has no rule", states_line)

    return SystemDescription(kind, tuple(alphabet), tuple(states), tuple(transitions),
                             tuple(accepting), tuple(ops), tuple(rules))


def render_system(desc: SystemDescription) -> str:
    lines = [f"type: {desc.kind}"]
    if desc.alphabet:
        lines.append("alphabet: " + " ".join(desc.alphabet))
    lines.append("states: " + " ".join(desc.states))
    for name, arity in desc.operations:
        lines.append(f"op: {name} {arity}")
    for src, sym, dst, weight in desc.transitions:
        suffix = "" if weight is None else f" {weight}"
        lines.append(f"trans: {src} {sym} {dst}{suffix}")
    if desc.accepting:
        lines.append("accept: " + " ".join(desc.accepting))
    for src, op, args in desc.rules:
        lines.append("rule: " + " ".join((src, op) + tuple(args)))
    return "\n".join(lines) + "\n"


def build_system(desc: SystemDescription, complete: bool = False):
    """Turn a description into the matching system object (raises ConstructionError)."""
    s_index = {s: i for i, s in enumerate(desc.states)}
    a_index = {a: i for i, a in enumerate(desc.alphabet)}
    names = desc.states
    if desc.kind == "gps":
        rows = [dict() for _ in desc.states]
        for src, sym, dst, w in desc.transitions:
            rows[s_index[src]][(a_index[sym], s_index[dst])] = w
        return GpsSystem(desc.alphabet, len(names), tuple(rows), names)
    if desc.kind == "sig":
        sig = Signature(desc.operations)
        rules = [None] * len(names)
        for src, op, args in desc.rules:
            rules[s_index[src]] = (op, tuple(s_index[a] for a in args))
        return SigCoalgebra(sig, len(names), tuple(rules), names)
    trans = frozenset((s_index[s], a_index[a], s_index[t]) for s, a, t, _ in desc.transitions)
    if desc.kind == "lts":
        return LtsSystem(desc.alphabet, len(names), trans, names)
    acc = frozenset(s_index[s] for s in desc.accepting)
    term = TerminatingLts(desc.alphabet, len(names), trans, names, acc)
    if desc.kind == "lts-term":
        return term
    if complete:
        return completion_to_nonblocking(term)
    blocked = term.blocking_pairs()
    if blocked:
        x, a = blocked[0]
        raise ConstructionError(f"state {names[x]} has no successor on letter {desc.alphabet[a]} "
                                "(pass --complete to add a sink)")
    return NonBlockingNfa(desc.alphabet, len(names), trans, names, acc)


def make_instance(system, kind: str | None = None) -> Instance:
    """Default alpha-instance for a system object; ``kind='em'`` selects the tree instance."""
    if kind == "em":
        return make_em_instance(system)
    if isinstance(system, NonBlockingNfa):
        return make_nonblocking_nfa_instance(system)
    if isinstance(system, TerminatingLts):
        return make_terminating_instance(system)
    if isinstance(system, LtsSystem):
        return make_lts_instance(system)
    if isinstance(system, GpsSystem):
        return make_gps_instance(system)
    if isinstance(system, SigCoalgebra):
        return make_term_instance(system)
    raise TypeError(f"no instance for {type(system).__name__}")


def load_system(path, complete: bool = False):
    desc = parse_system(Path(path).read_text(encoding="utf-8"))
    return desc, build_system(desc, complete)
