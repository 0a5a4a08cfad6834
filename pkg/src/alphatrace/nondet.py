"""Nondeterministic instances over pretrace sets.

Three transition types share the monad of finite sets of pretraces
``(word, tag)``: plain labelled transition systems, LTS with explicit
termination (tag ``ACCEPT`` marks a successful ``✓``), and non-blocking
nondeterministic automata.  Also hosts the collapse of trace sequences to
accepted languages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .kernel import (
    ConstructionError,
    EPSILON,
    Instance,
    InputError,
    TraceSequence,
    render_word,
    render_word_set,
    word_key,
)

ACCEPT = -1


@dataclass(frozen=True)
class LtsSystem:
    """Finite LTS; transitions are ``(source, letter index, target)`` triples."""

    alphabet: tuple
    n_states: int
    transitions: frozenset
    state_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        if not self.state_names:
            object.__setattr__(self, "state_names", tuple(f"x{i}" for i in range(self.n_states)))
        object.__setattr__(self, "state_names", tuple(self.state_names))
        if self.n_states < 1:
            raise ConstructionError("a system needs at least one state")
        if len(self.state_names) != self.n_states:
            raise ConstructionError("state_names does not match n_states")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ConstructionError("alphabet symbols must be unique")
        succ: dict[tuple[int, int], set[int]] = {}
        for src, a, dst in self.transitions:
            if not 0 <= a < len(self.alphabet):
                raise ConstructionError(f"transition label {a} not in alphabet")
            for s in (src, dst):
                if not 0 <= s < self.n_states:
                    raise ConstructionError(f"state index {s} out of range")
            succ.setdefault((src, a), set()).add(dst)
        object.__setattr__(self, "_succ", {k: frozenset(v) for k, v in succ.items()})

    def successors(self, x: int, a: int) -> frozenset:
        return self._succ.get((x, a), frozenset())

    def out(self, x: int) -> frozenset:
        """All ``(letter, target)`` pairs leaving ``x``."""
        return frozenset((a, y) for a in range(len(self.alphabet)) for y in self.successors(x, a))

    def blocking_pairs(self) -> list[tuple[int, int]]:
        return [(x, a) for x in range(self.n_states) for a in range(len(self.alphabet))
                if not self.successors(x, a)]


@dataclass(frozen=True)
class TerminatingLts(LtsSystem):
    accepting: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        bad = [s for s in self.accepting if not 0 <= s < self.n_states]
        if bad:
            raise ConstructionError(f"accepting state index {bad[0]} out of range")


@dataclass(frozen=True)
class NonBlockingNfa(TerminatingLts):
    def __post_init__(self):
        super().__post_init__()
        blocked = self.blocking_pairs()
        if blocked:
            x, a = blocked[0]
            raise ConstructionError(
                f"state {self.state_names[x]} has no successor on letter {self.alphabet[a]}")


@dataclass(frozen=True)
class PretraceSet:
    """A finite set of ``(word, tag)`` pairs; tag is a state index or ``ACCEPT``."""

    pairs: frozenset

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs, key=lambda p: (word_key(p[0]), p[1]))


def live_words(entry: PretraceSet) -> frozenset:
    return frozenset(u for u, tag in entry.pairs if tag != ACCEPT)


def accepted_words(entry: PretraceSet) -> frozenset:
    return frozenset(u for u, tag in entry.pairs if tag == ACCEPT)


def render_pretraces(m: PretraceSet, alphabet: Sequence[str], names: Sequence[str] | None = None) -> str:
    def tag(t):
        if t == ACCEPT:
            return "✓"
        return names[t] if names is not None and t < len(names) else f"x{t}"
    body = ", ".join(f"({render_word(u, alphabet)},{tag(t)})" for u, t in m.sorted_pairs())
    return "{" + body + "}"


def render_stage(entry: PretraceSet, alphabet: Sequence[str], terminating: bool) -> str:
    """One trace-sequence entry over the terminal carrier."""
    live = render_word_set(live_words(entry), alphabet)
    if not terminating:
        return live
    return f"accepted {render_word_set(accepted_words(entry), alphabet)} live {live}"


EMPTY = PretraceSet(frozenset())


class _PretraceInstance(Instance):
    terminating = False

    def __init__(self, sys: LtsSystem):
        super().__init__(sys.n_states, sys.alphabet, sys.state_names)
        self.system = sys

    def unit(self, x):
        return PretraceSet(frozenset({((), x)}))

    def star(self, f, m):
        out = set()
        for u, x in m.pairs:
            if x == ACCEPT:
                out.add((u, ACCEPT))
                continue
            for v, b in f(x).pairs:
                out.add((u + v, b))
        return PretraceSet(frozenset(out))

    def map(self, f, m):
        return PretraceSet(frozenset((u, x if x == ACCEPT else f(x)) for u, x in m.pairs))

    def random_mvalue(self, rng, size):
        k = len(self.alphabet)
        pairs = set()
        for _ in range(rng.randint(0, 4)):
            word = tuple(rng.randrange(k) for _ in range(rng.randint(0, 2)))
            if self.terminating and rng.random() < 0.25:
                pairs.add((word, ACCEPT))
            else:
                pairs.add((word, rng.randrange(size)))
        return PretraceSet(frozenset(pairs))

    def _random_steps(self, rng, size) -> frozenset:
        k = len(self.alphabet)
        return frozenset((a, y) for a in range(k) for y in range(size) if rng.random() < 0.3)

    def render(self, m):
        return render_pretraces(m, self.alphabet)


class LtsInstance(_PretraceInstance):
    """``G = P(Σ × -)`` inside ``M = P(Σ* × -)``."""

    family = "lts"

    def gamma(self, x):
        return self.system.out(x)

    def alpha_raw(self, g):
        return PretraceSet(frozenset(((a,), y) for a, y in g))

    def map_g(self, f, g):
        return frozenset((a, f(y)) for a, y in g)

    def observe(self, x, labels):
        return tuple(sorted({(a, labels[y]) for a, y in self.system.out(x)}))

    def random_gvalue(self, rng, size):
        return self._random_steps(rng, size)


class TerminatingInstance(_PretraceInstance):
    """``G = P(1 + Σ × -)`` (encoded as ``(accepting, steps)``) inside ``M = P(Σ* × (- + 1))``."""

    family = "lts-term"
    terminating = True

    def gamma(self, x):
        return (x in self.system.accepting, self.system.out(x))

    def alpha_raw(self, g):
        accepting, steps = g
        pairs = {((a,), y) for a, y in steps}
        if accepting:
            pairs.add(((), ACCEPT))
        return PretraceSet(frozenset(pairs))

    def map_g(self, f, g):
        accepting, steps = g
        return (accepting, frozenset((a, f(y)) for a, y in steps))

    def observe(self, x, labels):
        return (x in self.system.accepting, tuple(sorted({(a, labels[y]) for a, y in self.system.out(x)})))

    def random_gvalue(self, rng, size):
        return (rng.random() < 0.5, self._random_steps(rng, size))


class NfaInstance(TerminatingInstance):
    """Restriction of the termination instance to ``2 × (P⁺)^Σ``."""

    family = "nfa"

    def random_gvalue(self, rng, size):
        steps = set()
        for a in range(len(self.alphabet)):
            targets = [y for y in range(size) if rng.random() < 0.4] or [rng.randrange(size)]
            steps.update((a, y) for y in targets)
        return (rng.random() < 0.5, frozenset(steps))


def make_lts_instance(sys: LtsSystem) -> LtsInstance:
    return LtsInstance(sys)


def make_terminating_instance(sys: TerminatingLts) -> TerminatingInstance:
    return TerminatingInstance(sys)


def make_nonblocking_nfa_instance(sys: NonBlockingNfa) -> NfaInstance:
    if not isinstance(sys, NonBlockingNfa):
        # re-validate anything that merely looks like an automaton
        sys = NonBlockingNfa(sys.alphabet, sys.n_states, sys.transitions, sys.state_names,
                             getattr(sys, "accepting", frozenset()))
    return NfaInstance(sys)


def stage_components(entry: PretraceSet) -> tuple[frozenset, frozenset]:
    """``(accepted words, live words)`` of a terminal-carrier entry."""
    return accepted_words(entry), live_words(entry)


def language_collapse(seq: TraceSequence) -> list[frozenset]:
    """Erase everything tied to a poststate: keep only the ✓-tagged words of each stage."""
    if seq.family not in ("lts", "lts-term", "nfa"):
        raise InputError(f"language collapse needs a pretrace-set sequence, got family {seq.family!r}")
    return [accepted_words(e) for e in seq.entries]


def tilde_gamma(inst: _PretraceInstance, x: int, depth: int) -> list[frozenset]:
    """Language iterates started from the empty map instead of the unit."""
    if not isinstance(inst, _PretraceInstance):
        raise InputError("tilde iteration is defined for pretrace-set instances only")
    inst.check_state(x)
    table = (EMPTY,) * inst.carrier_size
    out = [accepted_words(table[x])]
    for _ in range(depth):
        step = table.__getitem__
        table = tuple(inst.star(step, inst.alpha_gamma(s)) for s in range(inst.carrier_size))
        out.append(accepted_words(table[x]))
    return out


def completion_to_nonblocking(sys: TerminatingLts) -> NonBlockingNfa:
    """Send every blocked (state, letter) to a fresh non-accepting sink looping on all letters."""
    sink = sys.n_states
    name = "sink"
    while name in sys.state_names:
        name += "_"
    k = len(sys.alphabet)
    added = {(x, a, sink) for x, a in sys.blocking_pairs()}
    added |= {(sink, a, sink) for a in range(k)}
    return NonBlockingNfa(sys.alphabet, sys.n_states + 1, sys.transitions | added,
                          sys.state_names + (name,), getattr(sys, "accepting", frozenset()))


def is_total(sys: LtsSystem) -> bool:
    """Every state has at least one outgoing transition (non-empty branching)."""
    return all(sys.out(x) for x in range(sys.n_states))


def names_to_words(words: Iterable[str], alphabet: Sequence[str]) -> frozenset:
    """Parse single-character-symbol words like ``"ab"`` (``"ε"`` or ``""`` is the empty word)."""
    index = {s: i for i, s in enumerate(alphabet)}
    out = set()
    for w in words:
        if w in ("", EPSILON):
            out.add(())
        else:
            out.add(tuple(index[c] for c in w))
    return frozenset(out)


def lts_from_names(alphabet: Sequence[str], states: Sequence[str],
                   transitions: Iterable[tuple[str, str, str]],
                   accepting: Iterable[str] | None = None,
                   cls: Callable = None) -> LtsSystem:
    """Build a system from symbolic names; convenient for fixtures."""
    s_index = {s: i for i, s in enumerate(states)}
    a_index = {a: i for i, a in enumerate(alphabet)}
    trans = frozenset((s_index[s], a_index[a], s_index[t]) for s, a, t in transitions)
    if accepting is None and cls is None:
        return LtsSystem(tuple(alphabet), len(states), trans, tuple(states))
    cls = cls or TerminatingLts
    acc = frozenset(s_index[s] for s in (accepting or ()))
    return cls(tuple(alphabet), len(states), trans, tuple(states), acc)
