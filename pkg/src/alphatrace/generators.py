"""Seeded random systems for every instance family."""

from __future__ import annotations

import random
from fractions import Fraction

from .em_extension import make_em_instance
from .freemonad import SigCoalgebra, Signature, make_term_instance
from .kernel import Instance
from .nondet import (
    LtsSystem,
    NonBlockingNfa,
    TerminatingLts,
    make_lts_instance,
    make_nonblocking_nfa_instance,
    make_terminating_instance,
)
from .prob import GpsSystem, make_gps_instance

FAMILIES = ("lts", "lts-term", "nfa", "gps", "sig", "em")
LETTERS = "abcd"


def _size(rng, lo, hi):
    return rng.randint(lo, hi)


def random_lts(rng: random.Random, max_states: int = 5, max_letters: int = 3,
               density: float = 0.3, total: bool = False) -> LtsSystem:
    n = _size(rng, 1, max_states)
    k = _size(rng, 1, max_letters)
    trans = {(x, a, y) for x in range(n) for a in range(k) for y in range(n) if rng.random() < density}
    if total:
        for x in range(n):
            if not any(t[0] == x for t in trans):
                trans.add((x, rng.randrange(k), rng.randrange(n)))
    return LtsSystem(tuple(LETTERS[:k]), n, frozenset(trans))


def random_sparse_lts(rng: random.Random, max_states: int = 5, max_letters: int = 3,
                      max_out: int = 2) -> LtsSystem:
    """Out-degree at most ``max_out``; keeps trace counts small at large depths."""
    n = _size(rng, 1, max_states)
    k = _size(rng, 1, max_letters)
    trans = set()
    for x in range(n):
        for _ in range(rng.randint(0, max_out)):
            trans.add((x, rng.randrange(k), rng.randrange(n)))
    return LtsSystem(tuple(LETTERS[:k]), n, frozenset(trans))


def random_terminating(rng: random.Random, max_states: int = 5, max_letters: int = 3,
                       density: float = 0.3) -> TerminatingLts:
    base = random_lts(rng, max_states, max_letters, density)
    acc = frozenset(x for x in range(base.n_states) if rng.random() < 0.4)
    return TerminatingLts(base.alphabet, base.n_states, base.transitions, (), acc)


def random_nfa(rng: random.Random, max_states: int = 5, letters: int = 2,
               density: float = 0.3) -> TerminatingLts:
    """Possibly blocking automaton over a fixed-size alphabet."""
    n = _size(rng, 1, max_states)
    trans = {(x, a, y) for x in range(n) for a in range(letters) for y in range(n) if rng.random() < density}
    acc = frozenset(x for x in range(n) if rng.random() < 0.4)
    return TerminatingLts(tuple("01"[:letters]) if letters <= 2 else tuple(LETTERS[:letters]), n,
                          frozenset(trans), (), acc)


def random_nonblocking_nfa(rng: random.Random, max_states: int = 5, max_letters: int = 2,
                           density: float = 0.3) -> NonBlockingNfa:
    n = _size(rng, 1, max_states)
    k = _size(rng, 1, max_letters)
    trans = set()
    for x in range(n):
        for a in range(k):
            targets = [y for y in range(n) if rng.random() < density] or [rng.randrange(n)]
            trans.update((x, a, y) for y in targets)
    acc = frozenset(x for x in range(n) if rng.random() < 0.4)
    return NonBlockingNfa(tuple(LETTERS[:k]), n, frozenset(trans), (), acc)


def random_gps(rng: random.Random, max_states: int = 5, max_letters: int = 3) -> GpsSystem:
    n = _size(rng, 1, max_states)
    k = _size(rng, 1, max_letters)
    rows = []
    for _ in range(n):
        keys = {(rng.randrange(k), rng.randrange(n)) for _ in range(rng.randint(1, 3))}
        raw = {key: rng.randint(1, 4) for key in keys}
        total = sum(raw.values())
        rows.append({key: Fraction(v, total) for key, v in raw.items()})
    return GpsSystem(tuple(LETTERS[:k]), n, tuple(rows))


def random_signature(rng: random.Random, max_ops: int = 3, max_arity: int = 2) -> Signature:
    count = rng.randint(1, max_ops)
    return Signature(tuple((name, rng.randint(0, max_arity)) for name in "fghk"[:count]))


def random_sig_coalgebra(rng: random.Random, max_states: int = 6, sig: Signature | None = None) -> SigCoalgebra:
    sig = sig or random_signature(rng)
    n = _size(rng, 1, max_states)
    rules = []
    for _ in range(n):
        op, arity = rng.choice(sig.operations)
        rules.append((op, tuple(rng.randrange(n) for _ in range(arity))))
    return SigCoalgebra(sig, n, tuple(rules))


def random_instance(rng: random.Random, family: str, max_states: int = 5) -> Instance:
    if family == "lts":
        return make_lts_instance(random_lts(rng, max_states))
    if family == "lts-term":
        return make_terminating_instance(random_terminating(rng, max_states))
    if family == "nfa":
        return make_nonblocking_nfa_instance(random_nonblocking_nfa(rng, max_states))
    if family == "gps":
        return make_gps_instance(random_gps(rng, max_states))
    if family == "sig":
        return make_term_instance(random_sig_coalgebra(rng, max_states))
    if family == "em":
        return make_em_instance(random_nfa(rng, max_states))
    raise ValueError(f"unknown family {family!r}")
