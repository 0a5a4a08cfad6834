"""Brute-force ground truth, deliberately sharing no code with the Kleisli iteration.

Trace and language oracles walk a word trie while simulating the set of
reachable states; the exact trace-equivalence decision explores the
synchronized product of two subset automata.
"""

from __future__ import annotations

from collections import deque

from . import kernel
from .kernel import Instance, Partition, Word
from .nondet import LtsSystem
from .report import LawReport

__all__ = [
    "LawReport",
    "oracle_traces",
    "oracle_language",
    "oracle_exact_trace_equiv",
    "product_size",
    "oracle_bisim_stable",
]


def _post(sys: LtsSystem, states: frozenset, a: int) -> frozenset:
    out = set()
    for s in states:
        for src, b, dst in sys.transitions:
            if src == s and b == a:
                out.add(dst)
    return frozenset(out)


def oracle_traces(sys: LtsSystem, x: int, n: int) -> set[Word]:
    """Words of length exactly n executable from x."""
    layer = {(): frozenset({x})}
    for _ in range(n):
        nxt = {}
        for word, states in layer.items():
            for a in range(len(sys.alphabet)):
                post = _post(sys, states, a)
                if post:
                    nxt[word + (a,)] = post
        layer = nxt
    return set(layer)


def oracle_language(sys, x: int, n: int) -> set[Word]:
    """Accepted words of length at most n (``sys`` needs ``accepting``)."""
    accepting = sys.accepting
    out = set()
    layer = {(): frozenset({x})}
    for length in range(n + 1):
        for word, states in layer.items():
            if states & accepting:
                out.add(word)
        if length == n:
            break
        nxt = {}
        for word, states in layer.items():
            for a in range(len(sys.alphabet)):
                post = _post(sys, states, a)
                if post:  # the empty subset accepts nothing, ever
                    nxt[word + (a,)] = post
        layer = nxt
    return out


def _product(sys: LtsSystem, x: int, y: int):
    start = (frozenset({x}), frozenset({y}))
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        yield p, q
        for a in range(len(sys.alphabet)):
            nxt = (_post(sys, p, a), _post(sys, q, a))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)


def oracle_exact_trace_equiv(sys: LtsSystem, x: int, y: int) -> bool:
    """Unbounded decision: every state accepting, so a subset accepts iff it is non-empty."""
    return all(bool(p) == bool(q) for p, q in _product(sys, x, y))


def product_size(sys: LtsSystem, x: int, y: int) -> int:
    """Reachable pairs of the synchronized subset product; a shortest distinguishing
    word, if any, is shorter than this."""
    return sum(1 for _ in _product(sys, x, y))


def oracle_bisim_stable(inst: Instance) -> Partition:
    return kernel.stable_partition(inst)
