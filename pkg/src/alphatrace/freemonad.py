"""Polynomial (signature) functors with their free monad of finite terms.

Terms are the monad values; the Kleisli star is simultaneous substitution
of variables.  Layer values are the uniform-depth trees of ``G^n 1`` used
for the final-sequence cone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import kernel
from .kernel import ConstructionError, Instance, InputError
from .report import LawReport


@dataclass(frozen=True)
class Signature:
    operations: tuple  # ((name, arity), ...)

    def __post_init__(self):
        object.__setattr__(self, "operations", tuple((str(n), int(k)) for n, k in self.operations))
        if not self.operations:
            raise ConstructionError("a signature needs at least one operation")
        names = [n for n, _ in self.operations]
        if len(set(names)) != len(names):
            raise ConstructionError("operation names must be unique")
        for name, arity in self.operations:
            if arity < 0:
                raise ConstructionError(f"operation {name} has negative arity")
            if not name or name == "*" or any(c.isspace() or c in "(),*" for c in name):
                raise ConstructionError(f"bad operation name {name!r}")

    def arity(self, name: str) -> int:
        for n, k in self.operations:
            if n == name:
                return k
        raise ConstructionError(f"unknown operation {name}")


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()


def render_term(t, names: Sequence[str] | None = None, terminal: bool = False) -> str:
    """``name(child,...)``, constants bare, variables ``xK`` (``*`` over the terminal carrier)."""
    if isinstance(t, Var):
        if terminal:
            return "*"
        return names[t.index] if names is not None else f"x{t.index}"
    if not t.args:
        return t.op
    return f"{t.op}(" + ",".join(render_term(a, names, terminal) for a in t.args) + ")"


def substitute(f, t):
    if isinstance(t, Var):
        return f(t.index)
    return App(t.op, tuple(substitute(f, a) for a in t.args))


def rename(f, t):
    if isinstance(t, Var):
        return Var(f(t.index))
    return App(t.op, tuple(rename(f, a) for a in t.args))


def term_depth(t) -> int:
    """Operation nesting depth; variables have depth 0, constants depth 1."""
    if isinstance(t, Var):
        return 0
    return 1 + max((term_depth(a) for a in t.args), default=0)


def truncate(t, depth: int):
    """Cut a term over the terminal carrier at ``depth``, putting ``*`` at the cut points."""
    if isinstance(t, Var):
        return t
    if depth == 0:
        return Var(0)
    return App(t.op, tuple(truncate(a, depth - 1) for a in t.args))


@dataclass(frozen=True)
class Layer:
    """Element of ``G^n 1``: ``op=None`` is the terminal element ``*``."""

    op: str | None = None
    children: tuple = ()


STAR = Layer()


def render_layer(v: Layer) -> str:
    if v.op is None:
        return "*"
    if not v.children:
        return v.op
    return f"{v.op}(" + ",".join(render_layer(c) for c in v.children) + ")"


def layer_depth_ok(v: Layer, n: int) -> bool:
    """``*`` exactly at depth n; operations (possibly constants) strictly above."""
    if v.op is None:
        return n == 0
    if n == 0:
        return False
    return all(layer_depth_ok(c, n - 1) for c in v.children)


@dataclass(frozen=True)
class SigCoalgebra:
    """Each state maps to one operation applied to state arguments."""

    signature: Signature
    n_states: int
    rules: tuple  # ((op, (arg, ...)), ...)
    state_names: tuple = ()

    def __post_init__(self):
        if not self.state_names:
            object.__setattr__(self, "state_names", tuple(f"x{i}" for i in range(self.n_states)))
        object.__setattr__(self, "rules", tuple((op, tuple(args)) for op, args in self.rules))
        if self.n_states < 1 or len(self.rules) != self.n_states:
            raise ConstructionError("one rule per state is required")
        for x, (op, args) in enumerate(self.rules):
            if self.signature.arity(op) != len(args):
                raise ConstructionError(
                    f"state {self.state_names[x]}: {op} expects {self.signature.arity(op)} arguments, got {len(args)}")
            if any(not 0 <= y < self.n_states for y in args):
                raise ConstructionError(f"state {self.state_names[x]}: argument out of range")


class TermInstance(Instance):
    """``G`` polynomial, ``M = G*`` with ``alpha`` the flat-term embedding."""

    family = "sig"

    def __init__(self, c: SigCoalgebra):
        ops = tuple(f"{n}/{k}" for n, k in c.signature.operations)
        super().__init__(c.n_states, ops, c.state_names)
        self.coalgebra = c
        self.signature = c.signature

    def unit(self, x):
        return Var(x)

    def star(self, f, m):
        return substitute(f, m)

    def map(self, f, m):
        return rename(f, m)

    def gamma(self, x):
        return self.coalgebra.rules[x]

    def alpha_raw(self, g):
        op, args = g
        return App(op, tuple(Var(y) for y in args))

    def map_g(self, f, g):
        op, args = g
        return (op, tuple(f(y) for y in args))

    def observe(self, x, labels):
        op, args = self.coalgebra.rules[x]
        return (op, tuple(labels[y] for y in args))

    def random_mvalue(self, rng, size, depth=2):
        if depth == 0 or rng.random() < 0.3:
            return Var(rng.randrange(size))
        op, arity = rng.choice(self.signature.operations)
        return App(op, tuple(self.random_mvalue(rng, size, depth - 1) for _ in range(arity)))

    def random_gvalue(self, rng, size):
        op, arity = rng.choice(self.signature.operations)
        return (op, tuple(rng.randrange(size) for _ in range(arity)))

    def render(self, m):
        return render_term(m)


def make_term_instance(c: SigCoalgebra) -> TermInstance:
    return TermInstance(c)


def gamma_n(c: SigCoalgebra, x: int, n: int) -> Layer:
    """Canonical cone into the final sequence: ``gamma_{n+1} = G(gamma_n) . gamma``."""
    if n == 0:
        return STAR
    op, args = c.rules[x]
    return Layer(op, tuple(gamma_n(c, y, n - 1) for y in args))


def alpha_n(v: Layer, n: int):
    """``alpha_0 = eta``, ``alpha_{n+1} = mu . alpha . G(alpha_n)`` at the terminal object."""
    if not layer_depth_ok(v, n):
        raise InputError(f"{render_layer(v)} is not a depth-{n} layer value")
    return _alpha_n(v, n)


def _alpha_n(v: Layer, n: int):
    if n == 0:
        return Var(0)
    children = [_alpha_n(c, n - 1) for c in v.children]      # G(alpha_n)
    flat = App(v.op, tuple(Var(i) for i in range(len(children))))  # alpha
    return substitute(children.__getitem__, flat)             # mu


def layer_values(sig: Signature, n: int, bound: int = 10_000) -> tuple[list[Layer], bool]:
    """All of ``G^n 1``, or the first ``bound`` values and a truncation flag."""
    level = [STAR]
    for _ in range(n):
        nxt: list[Layer] = []
        for name, arity in sig.operations:
            for kids in itertools.product(level, repeat=arity):
                if len(nxt) == bound:
                    return nxt, True
                nxt.append(Layer(name, kids))
        level = nxt
    return level, False


def verify_factorization(c: SigCoalgebra, depth: int) -> LawReport:
    """Forgotten iterates equal ``alpha_n`` of the cone value, for every state and n <= depth."""
    inst = make_term_instance(c)
    report = LawReport("sig/factorization")
    for x in range(c.n_states):
        seq = kernel.trace_sequence(inst, x, depth)
        for n, entry in enumerate(seq.entries):
            expected = alpha_n(gamma_n(c, x, n), n)
            report.record(entry == expected, (c.state_names[x], n),
                          lambda: render_term(expected, terminal=True), lambda: render_term(entry, terminal=True))
    return report


def verify_alpha_n_injective(sig: Signature, n: int, bound: int = 10_000) -> LawReport:
    report = LawReport(f"sig/alpha-{n}-injective")
    values, truncated = layer_values(sig, n, bound)
    report.truncated = truncated
    seen: dict = {}
    for v in values:
        image = alpha_n(v, n)
        clash = seen.setdefault(image, v)
        report.record(clash is v, render_layer(v), "distinct image", f"same as {render_layer(clash)}")
    return report


def verify_strong_bisim(c: SigCoalgebra, depth: int) -> LawReport:
    """alpha-trace equivalence and finite-depth behavioural equivalence coincide at each depth."""
    inst = make_term_instance(c)
    report = LawReport("sig/strong-bisim")
    seqs = kernel.all_trace_sequences(inst, depth)
    parts = kernel.finite_depth_partitions(inst, depth)
    for x, y in itertools.combinations(range(c.n_states), 2):
        diff = kernel.first_difference(seqs[x], seqs[y])
        for part in parts:
            n = part.depth
            traces_agree = diff is None or diff > n
            report.record(traces_agree == part.same_block(x, y),
                          (c.state_names[x], c.state_names[y], n),
                          f"behavioural={part.same_block(x, y)}", f"alpha={traces_agree}")
    return report
