"""Extension semantics for NFAs ``X -> 2 × P(X)^Σ`` via the subset construction.

Monad values are uniform-depth layered trees: inner nodes are labelled
``y`` (accepting) or ``n`` with one child per letter, leaves hold finite
sets of states.  Joins of equal-depth trees are label-wise OR and
leaf-wise union; the empty join of depth k is the all-``n`` tree with
empty leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernel
from .kernel import ConstructionError, Instance, InputError
from .nondet import TerminatingLts
from .report import LawReport

NfaSystem = TerminatingLts


@dataclass(frozen=True)
class Leaf:
    states: frozenset


@dataclass(frozen=True)
class Collapsed:
    """The leaf ``*`` of ``F^n 1``."""


STAR = Collapsed()


@dataclass(frozen=True)
class Node:
    accept: bool
    children: tuple


def tree_depth(t) -> int:
    d = 0
    while isinstance(t, Node):
        t = t.children[0]
        d += 1
    return d


def bottom(depth: int, width: int):
    if depth == 0:
        return Leaf(frozenset())
    child = bottom(depth - 1, width)
    return Node(False, (child,) * width)


def join(trees: Sequence, width: int, depth: int):
    """Least upper bound of same-depth trees; ``y`` wins over ``n``."""
    if not trees:
        return bottom(depth, width)
    first = trees[0]
    if isinstance(first, Leaf):
        if not all(isinstance(t, Leaf) for t in trees):
            raise InputError("join of trees with different depths")
        return Leaf(frozenset().union(*(t.states for t in trees)))
    if not all(isinstance(t, Node) for t in trees):
        raise InputError("join of trees with different depths")
    return Node(any(t.accept for t in trees),
                tuple(join([t.children[a] for t in trees], width, depth - 1) for a in range(width)))


def _map_leaves(fn, t):
    if isinstance(t, Node):
        return Node(t.accept, tuple(_map_leaves(fn, c) for c in t.children))
    return fn(t)


def render_tree(t, alphabet: Sequence[str], names: Sequence[str] | None = None) -> str:
    """Indented node-label lines, children in alphabet order."""
    lines: list[str] = []

    def leaf(t):
        if isinstance(t, Collapsed):
            return "*"
        if names is None:
            items = ["*" if s == 0 else f"x{s}" for s in sorted(t.states)]
        else:
            items = [names[s] for s in sorted(t.states)]
        return "{" + ",".join(items) + "}"

    def walk(t, prefix, indent):
        label = ("y" if t.accept else "n") if isinstance(t, Node) else leaf(t)
        lines.append("  " * indent + prefix + label)
        if isinstance(t, Node):
            for a, c in zip(alphabet, t.children):
                walk(c, f"{a}: ", indent + 1)

    walk(t, "", 0)
    return "\n".join(lines)


def tree_to_data(t):
    if isinstance(t, Node):
        return {"label": "y" if t.accept else "n", "children": [tree_to_data(c) for c in t.children]}
    if isinstance(t, Collapsed):
        return "*"
    return sorted(t.states)


@dataclass(frozen=True)
class DeterminizedSystem:
    alphabet: tuple
    subsets: tuple
    accepting: frozenset
    delta: dict

    def step(self, s: frozenset, a: int) -> frozenset:
        return self.delta[(s, a)]

    def accepts(self, s: frozenset) -> bool:
        return s in self.accepting


def d_gamma(nfa: NfaSystem, subset: frozenset) -> tuple:
    """The determinized structure on one subset: OR of acceptance, union of successors."""
    accept = any(x in nfa.accepting for x in subset)
    succ = tuple(frozenset().union(*(nfa.successors(x, a) for x in subset))
                 for a in range(len(nfa.alphabet)))
    return accept, succ


def determinize(nfa: NfaSystem, initial=None) -> DeterminizedSystem:
    """Subset construction on everything reachable from ``initial`` (default: all singletons)."""
    if initial is None:
        initial = [frozenset({x}) for x in range(nfa.n_states)]
    todo = [frozenset(s) for s in initial]
    seen = set(todo)
    order: list[frozenset] = []
    delta: dict = {}
    accepting = set()
    while todo:
        s = todo.pop(0)
        order.append(s)
        accept, succ = d_gamma(nfa, s)
        if accept:
            accepting.add(s)
        for a, t in enumerate(succ):
            delta[(s, a)] = t
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return DeterminizedSystem(nfa.alphabet, tuple(order), frozenset(accepting), delta)


def bar_gamma(nfa: NfaSystem, subset, n: int):
    """Cone of the determinized system into ``F^n 1``."""
    subset = frozenset(subset)
    if any(not 0 <= x < nfa.n_states for x in subset):
        raise InputError("subset mentions a state outside the carrier")
    if n == 0:
        return STAR
    accept, succ = d_gamma(nfa, subset)
    return Node(accept, tuple(bar_gamma(nfa, t, n - 1) for t in succ))


class EmInstance(Instance):
    """``G = F T`` with ``F = 2 × (-)^Σ``, ``T`` finite powerset, ``M`` layered trees over ``T``."""

    family = "em"

    def __init__(self, nfa: NfaSystem):
        if not nfa.alphabet:
            raise ConstructionError("the tree encoding needs a non-empty alphabet")
        super().__init__(nfa.n_states, nfa.alphabet, nfa.state_names)
        self.system = nfa
        self.width = len(nfa.alphabet)

    def unit(self, x):
        return Leaf(frozenset({x}))

    def star(self, f, m):
        depth = tree_depth(f(0))
        return _map_leaves(lambda leaf: join([f(x) for x in sorted(leaf.states)], self.width, depth), m)

    def map(self, f, m):
        return _map_leaves(lambda leaf: Leaf(frozenset(f(x) for x in leaf.states)), m)

    def gamma(self, x):
        return (x in self.system.accepting,
                tuple(self.system.successors(x, a) for a in range(self.width)))

    def alpha_raw(self, g):
        accept, succ = g
        return Node(accept, tuple(Leaf(frozenset(s)) for s in succ))

    def map_g(self, f, g):
        accept, succ = g
        return (accept, tuple(frozenset(f(y) for y in s) for s in succ))

    def observe(self, x, labels):
        accept, succ = self.gamma(x)
        return (accept, tuple(tuple(sorted({labels[y] for y in s})) for s in succ))

    def random_mvalue(self, rng, size, depth=None):
        if depth is None:
            depth = rng.randint(0, 2)
        if depth == 0:
            return Leaf(frozenset(y for y in range(size) if rng.random() < 0.35))
        return Node(rng.random() < 0.5, tuple(self.random_mvalue(rng, size, depth - 1) for _ in range(self.width)))

    def random_kleisli(self, rng, src, dst):
        # stay inside the uniform-depth fragment: one depth per map
        depth = rng.randint(0, 2)
        return tuple(self.random_mvalue(rng, dst, depth) for _ in range(src))

    def random_gvalue(self, rng, size):
        return (rng.random() < 0.5,
                tuple(frozenset(y for y in range(size) if rng.random() < 0.35) for _ in range(self.width)))

    def render(self, m):
        return render_tree(m, self.alphabet).replace("\n", " / ")


def make_em_instance(nfa: NfaSystem) -> EmInstance:
    return EmInstance(nfa)


def mvalue_iterate(nfa: NfaSystem, x: int, n: int):
    return kernel.iterate(make_em_instance(nfa), x, n)


def forget_leaves(t):
    """``M!`` on trees: every non-empty leaf becomes ``{*}``."""
    return _map_leaves(lambda leaf: Leaf(frozenset(0 for _ in leaf.states)), t)


def collapse_leaves(t):
    def collapse(leaf):
        if isinstance(leaf, Leaf) and not leaf.states <= {0}:
            raise InputError("collapse expects leaves over the terminal carrier")
        return STAR
    return _map_leaves(collapse, t)


def accepted_paths(t) -> frozenset:
    """Words labelling root-to-node paths that end in a ``y`` node."""
    out = set()

    def walk(t, word):
        if isinstance(t, Node):
            if t.accept:
                out.add(word)
            for a, c in enumerate(t.children):
                walk(c, word + (a,))

    walk(t, ())
    return frozenset(out)


def verify_theorem_jss(nfa: NfaSystem, depth: int) -> LawReport:
    """The determinized cone from ``{x}`` equals the collapsed, forgotten n-th iterate of x."""
    inst = make_em_instance(nfa)
    report = LawReport("em/jss")
    for x in range(nfa.n_states):
        m = inst.unit(x)
        for n in range(depth + 1):
            if n:
                m = inst.star(inst.alpha_gamma, m)
            expected = bar_gamma(nfa, {x}, n)
            actual = collapse_leaves(inst.forget(m))
            report.record(expected == actual, (nfa.state_names[x], n),
                          lambda: render_tree(expected, nfa.alphabet), lambda: render_tree(actual, nfa.alphabet))
    return report
