"""Generic iteration and equivalence engine.

An :class:`Instance` bundles a transition type ``G``, a global monad ``M``
(unit, Kleisli star, functor action) and a natural transformation
``alpha: G -> M`` together with one concrete ``G``-coalgebra ``gamma`` on a
finite, densely indexed carrier ``0..carrier_size-1``.  Everything in this
module is written against that contract only.

Monad values (``MValue``) are instance-specific immutable objects in
canonical form, so ``==`` is semantic equality.
"""

from __future__ import annotations

import abc
import itertools
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .report import LawReport

Word = tuple  # tuple of letter indices into the alphabet
MValue = Hashable
GValue = Hashable
Kleisli = Callable[[int], MValue]

EPSILON = "ε"


class InputError(ValueError):
    """Ill-formed call: state out of range, mismatched alphabets, wrong family."""


class ConstructionError(ValueError):
    """A system description violates its well-formedness invariants."""


def word_key(word: Word) -> tuple:
    """Length-first, then lexicographic by alphabet position."""
    return (len(word), word)


def render_word(word: Word, alphabet: Sequence[str]) -> str:
    if not word:
        return EPSILON
    letters = [alphabet[i] for i in word]
    sep = "" if all(len(s) == 1 for s in letters) else "."
    return sep.join(letters)


def render_word_set(words: Iterable[Word], alphabet: Sequence[str]) -> str:
    return "{" + ", ".join(render_word(w, alphabet) for w in sorted(words, key=word_key)) + "}"


def all_words(alphabet_size: int, length: int) -> Iterable[Word]:
    return itertools.product(range(alphabet_size), repeat=length)


class Instance(abc.ABC):
    """A trace semantics ``alpha: G -> M`` plus a ``G``-coalgebra on a finite carrier."""

    family = "abstract"

    def __init__(self, carrier_size: int, alphabet: Sequence[str], state_names: Sequence[str] | None = None):
        if carrier_size < 1:
            raise InputError("carrier must contain at least one state")
        self.carrier_size = carrier_size
        self.alphabet = tuple(alphabet)
        self.state_names = tuple(state_names) if state_names else tuple(f"x{i}" for i in range(carrier_size))
        self._alpha_gamma: dict[int, MValue] = {}

    # -- monad ---------------------------------------------------------------
    @abc.abstractmethod
    def unit(self, x: int) -> MValue:
        ...

    @abc.abstractmethod
    def star(self, f: Kleisli, m: MValue) -> MValue:
        """Kleisli extension of ``f`` applied to ``m``."""

    @abc.abstractmethod
    def map(self, f: Callable[[int], int], m: MValue) -> MValue:
        """Functor action ``M f``."""

    def forget(self, m: MValue) -> MValue:
        """``M!``: collapse every state to the single element 0 of the terminal carrier."""
        return self.map(lambda _: 0, m)

    # -- coalgebra and alpha -------------------------------------------------
    @abc.abstractmethod
    def gamma(self, x: int) -> GValue:
        ...

    @abc.abstractmethod
    def alpha_raw(self, g: GValue) -> MValue:
        ...

    @abc.abstractmethod
    def map_g(self, f: Callable[[int], int], g: GValue) -> GValue:
        """Functor action ``G f`` on the instance's own G-value encoding."""

    def alpha_gamma(self, x: int) -> MValue:
        try:
            return self._alpha_gamma[x]
        except KeyError:
            value = self._alpha_gamma[x] = self.alpha_raw(self.gamma(x))
            return value

    @abc.abstractmethod
    def observe(self, x: int, labels: Sequence[int]) -> Hashable:
        """Canonical key of ``G(labels)(gamma(x))``."""

    # -- sampling for law checks --------------------------------------------
    @abc.abstractmethod
    def random_mvalue(self, rng: random.Random, size: int) -> MValue:
        ...

    @abc.abstractmethod
    def random_gvalue(self, rng: random.Random, size: int) -> GValue:
        ...

    def random_kleisli(self, rng: random.Random, src: int, dst: int) -> tuple:
        """A random map ``src -> M dst`` given as a lookup table."""
        return tuple(self.random_mvalue(rng, dst) for _ in range(src))

    # -- presentation --------------------------------------------------------
    def render(self, m: MValue) -> str:
        return str(m)

    def check_state(self, x: int) -> None:
        if not isinstance(x, int) or not 0 <= x < self.carrier_size:
            raise InputError(f"state {x!r} out of range 0..{self.carrier_size - 1}")


@dataclass(frozen=True)
class TraceSequence:
    """``entries[n]`` is ``M!`` applied to the n-th iterate of ``state``."""

    state: int
    entries: tuple
    family: str

    @property
    def depth(self) -> int:
        return len(self.entries) - 1


@dataclass(frozen=True)
class Partition:
    labels: tuple
    depth: int

    @property
    def block_count(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def same_block(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def refines(self, coarser: "Partition") -> bool:
        seen: dict[int, int] = {}
        for fine, coarse in zip(self.labels, coarser.labels):
            if seen.setdefault(fine, coarse) != coarse:
                return False
        return True

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, b in enumerate(self.labels):
            out[b].append(x)
        return out


# -- iteration -----------------------------------------------------------------

def iterate(inst: Instance, x: int, n: int) -> MValue:
    """The n-th iterate: ``unit(x)`` then ``n`` Kleisli extensions along ``alpha . gamma``."""
    inst.check_state(x)
    if n < 0:
        raise InputError("depth must be non-negative")
    m = inst.unit(x)
    for _ in range(n):
        m = inst.star(inst.alpha_gamma, m)
    return m


def iterate_all(inst: Instance, depth: int) -> list[tuple]:
    """``tables[n][x]`` is the n-th iterate of x, for n = 0..depth."""
    table = tuple(inst.unit(x) for x in range(inst.carrier_size))
    tables = [table]
    for _ in range(depth):
        table = tuple(inst.star(inst.alpha_gamma, m) for m in table)
        tables.append(table)
    return tables


def trace_sequence(inst: Instance, x: int, depth: int) -> TraceSequence:
    inst.check_state(x)
    if depth < 0:
        raise InputError("depth must be non-negative")
    m = inst.unit(x)
    entries = [inst.forget(m)]
    for _ in range(depth):
        m = inst.star(inst.alpha_gamma, m)
        entries.append(inst.forget(m))
    return TraceSequence(x, tuple(entries), inst.family)


def all_trace_sequences(inst: Instance, depth: int) -> list[TraceSequence]:
    return [trace_sequence(inst, x, depth) for x in range(inst.carrier_size)]


def first_difference(a: TraceSequence, b: TraceSequence) -> int | None:
    """Smallest stage where the sequences differ, or None if they agree throughout."""
    for n, (u, v) in enumerate(zip(a.entries, b.entries)):
        if u != v:
            return n
    return None


def _check_compatible(inst: Instance, other: Instance) -> None:
    if inst.alphabet != other.alphabet:
        raise InputError(f"alphabets differ: {inst.alphabet} vs {other.alphabet}")
    if inst.family != other.family:
        raise InputError(f"instance families differ: {inst.family} vs {other.family}")


def alpha_trace_equivalent(inst: Instance, x: int, y: int, depth: int, other: Instance | None = None) -> bool:
    """Depth-bounded alpha-trace equivalence; ``y`` lives in ``other`` when given."""
    other = inst if other is None else other
    _check_compatible(inst, other)
    return first_difference(trace_sequence(inst, x, depth), trace_sequence(other, y, depth)) is None


# -- partition refinement ------------------------------------------------------

def _relabel(keys: Sequence[Hashable]) -> tuple:
    ids: dict[Hashable, int] = {}
    return tuple(ids.setdefault(k, len(ids)) for k in keys)


def refine(inst: Instance, labels: Sequence[int]) -> tuple:
    """Block labels of the fibres of ``observe(., labels)``, numbered by first occurrence."""
    return _relabel([inst.observe(x, labels) for x in range(inst.carrier_size)])


def finite_depth_partitions(inst: Instance, depth: int) -> list[Partition]:
    if depth < 0:
        raise InputError("depth must be non-negative")
    labels = (0,) * inst.carrier_size
    parts = [Partition(labels, 0)]
    for n in range(1, depth + 1):
        labels = refine(inst, labels)
        parts.append(Partition(labels, n))
    return parts


def stable_partition(inst: Instance) -> Partition:
    """Refine until the block count stops growing; at most ``carrier_size`` rounds."""
    labels = (0,) * inst.carrier_size
    n = 0
    while True:
        nxt = refine(inst, labels)
        n += 1
        if max(nxt) == max(labels):
            return Partition(nxt, n)
        labels = nxt


def finite_depth_equivalent(inst: Instance, x: int, y: int, depth: int) -> bool:
    inst.check_state(x)
    inst.check_state(y)
    # partitions are monotone, so the deepest one decides
    return finite_depth_partitions(inst, depth)[-1].same_block(x, y)


def first_split(inst: Instance, x: int, y: int, depth: int) -> int | None:
    for part in finite_depth_partitions(inst, depth):
        if not part.same_block(x, y):
            return part.depth
    return None


# -- law verification ----------------------------------------------------------

def _lookup(table: Sequence) -> Kleisli:
    return table.__getitem__


def verify_monad_laws(inst: Instance, trials: int = 200, seed: int = 0, max_size: int = 4) -> LawReport:
    """Check the three Kleisli laws on seeded random monad values and maps."""
    rng = random.Random(seed)
    report = LawReport(f"{inst.family}/kleisli-laws", seed)
    for t in range(trials):
        nx, ny, nz = (rng.randint(1, max_size) for _ in range(3))
        m = inst.random_mvalue(rng, nx)
        f = _lookup(inst.random_kleisli(rng, nx, ny))
        g = _lookup(inst.random_kleisli(rng, ny, nz))
        x = rng.randrange(nx)

        lhs = inst.star(inst.unit, m)
        report.record(lhs == m, ("left-unit", t), lambda: inst.render(m), lambda: inst.render(lhs))

        lhs = inst.star(f, inst.unit(x))
        report.record(lhs == f(x), ("right-unit", t, x), lambda: inst.render(f(x)), lambda: inst.render(lhs))

        lhs = inst.star(lambda y: inst.star(g, f(y)), m)
        rhs = inst.star(g, inst.star(f, m))
        report.record(lhs == rhs, ("associativity", t), lambda: inst.render(rhs), lambda: inst.render(lhs))
    return report


def verify_alpha_naturality(
    inst: Instance,
    f: Callable[[int], int] | None = None,
    trials: int = 100,
    seed: int = 0,
) -> LawReport:
    """``M f . alpha = alpha . G f`` on the coalgebra's own G-values and on random ones.

    With ``f=None`` a fresh random map is drawn for every trial.
    """
    rng = random.Random(seed)
    report = LawReport(f"{inst.family}/alpha-naturality", seed)
    n = inst.carrier_size
    samples = [inst.gamma(x) for x in range(n)]
    samples += [inst.random_gvalue(rng, n) for _ in range(trials)]
    for i, g in enumerate(samples):
        h = f
        if h is None:
            target = rng.randint(1, n + 1)
            h = _lookup(tuple(rng.randrange(target) for _ in range(n)))
        lhs = inst.map(h, inst.alpha_raw(g))
        rhs = inst.alpha_raw(inst.map_g(h, g))
        report.record(lhs == rhs, ("g", i), lambda: inst.render(rhs), lambda: inst.render(lhs))
    return report


def verify_iteration_identity(inst: Instance, depth: int) -> LawReport:
    """Iterating on the left (``(alpha gamma)^* . gamma^(n)``) agrees with
    iterating on the right (``(gamma^(n))^* . alpha gamma``) for all states and n < depth."""
    report = LawReport(f"{inst.family}/iteration-identity")
    tables = iterate_all(inst, depth)
    for n in range(depth):
        step = _lookup(tables[n])
        for x in range(inst.carrier_size):
            right = inst.star(step, inst.alpha_gamma(x))
            report.record(right == tables[n + 1][x], (inst.state_names[x], n + 1),
                          lambda: inst.render(tables[n + 1][x]), lambda: inst.render(right))
    return report


def verify_corollary(inst: Instance, depth: int) -> LawReport:
    """Finite-depth equivalent pairs must have equal trace sequences up to the same depth."""
    report = LawReport(f"{inst.family}/corollary")
    seqs = all_trace_sequences(inst, depth)
    parts = finite_depth_partitions(inst, depth)
    for x, y in itertools.combinations(range(inst.carrier_size), 2):
        diff = first_difference(seqs[x], seqs[y])
        for part in parts:
            if not part.same_block(x, y):
                break
            ok = diff is None or diff > part.depth
            report.record(ok, (inst.state_names[x], inst.state_names[y], part.depth),
                          "alpha-trace equivalent", f"traces differ at stage {diff}")
    return report


def verify_trace_sequence_consistency(seq: TraceSequence, nonblocking: bool) -> LawReport:
    """Prefix consistency of consecutive stages and, for non-blocking systems, extensibility.

    Only live (state-tagged) pretraces are considered; accepted words are
    tracked separately by the termination instances.
    """
    from .nondet import PretraceSet, live_words

    if not all(isinstance(e, PretraceSet) for e in seq.entries):
        raise InputError("consistency check needs a word-set based trace sequence")
    report = LawReport("consistency")
    stages = [live_words(e) for e in seq.entries]
    for n in range(len(stages) - 1):
        here, nxt = stages[n], stages[n + 1]
        prefixes = {w[:n] for w in nxt}
        report.record(prefixes <= here, ("prefix", n + 1), sorted(here), sorted(prefixes - here))
        if nonblocking:
            stuck = sorted(here - prefixes)
            report.record(not stuck, ("extensible", n), [], stuck)
    return report
