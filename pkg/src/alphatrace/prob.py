"""Generative probabilistic systems over the distribution monad, in exact rationals."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import kernel
from .kernel import ConstructionError, Instance, InputError, Word, all_words, render_word, word_key
from .report import LawReport


@dataclass(frozen=True)
class GpsSystem:
    """Each state carries a full distribution over ``(letter index, successor)``.

    ``rows[x]`` is a tuple of ``((letter, successor), weight)`` pairs.
    """

    alphabet: tuple
    n_states: int
    rows: tuple
    state_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if not self.state_names:
            object.__setattr__(self, "state_names", tuple(f"x{i}" for i in range(self.n_states)))
        if not self.alphabet:
            raise ConstructionError("probabilistic systems need a non-empty alphabet")
        if len(self.rows) != self.n_states:
            raise ConstructionError("one row per state is required")
        rows = []
        for x, row in enumerate(self.rows):
            items = row.items() if isinstance(row, Mapping) else row
            merged: dict[tuple[int, int], Fraction] = {}
            name = self.state_names[x]
            for (a, y), w in items:
                w = Fraction(w)
                if w <= 0:
                    raise ConstructionError(f"state {name}: non-positive weight {w}")
                if not 0 <= a < len(self.alphabet) or not 0 <= y < self.n_states:
                    raise ConstructionError(f"state {name}: transition ({a}, {y}) out of range")
                if (a, y) in merged:
                    raise ConstructionError(f"state {name}: duplicate transition ({a}, {y})")
                merged[(a, y)] = w
            total = sum(merged.values(), Fraction(0))
            if total != 1:
                raise ConstructionError(f"state {name}: weights sum to {total}, expected 1")
            rows.append(tuple(sorted(merged.items())))
        object.__setattr__(self, "rows", tuple(rows))

    def row(self, x: int) -> dict:
        return dict(self.rows[x])


@dataclass(frozen=True)
class WeightedPretraces:
    """Finitely supported weights on ``(word, state)``; zero weights never stored."""

    weights: frozenset

    @classmethod
    def from_dict(cls, d: Mapping) -> "WeightedPretraces":
        return cls(frozenset((k, Fraction(v)) for k, v in d.items() if v != 0))

    def as_dict(self) -> dict:
        return dict(self.weights)

    def mass(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def word_weights(self) -> dict:
        """Weights by word alone (meaningful over the terminal carrier)."""
        out: dict[Word, Fraction] = defaultdict(Fraction)
        for (u, _), w in self.weights:
            out[u] += w
        return dict(out)


def render_weighted(m: WeightedPretraces, alphabet: Sequence[str], with_states: bool = False) -> str:
    items = sorted(m.weights, key=lambda kv: (word_key(kv[0][0]), kv[0][1]))
    if with_states:
        body = ", ".join(f"({render_word(u, alphabet)},x{x}): {w}" for (u, x), w in items)
    else:
        body = ", ".join(f"{render_word(u, alphabet)}: {w}" for (u, _), w in items)
    return "{" + body + "}"


class GpsInstance(Instance):
    """``G = D(Σ × -)`` inside ``M = D(Σ* × -)``."""

    family = "gps"

    def __init__(self, sys: GpsSystem):
        super().__init__(sys.n_states, sys.alphabet, sys.state_names)
        self.system = sys

    def unit(self, x):
        return WeightedPretraces(frozenset({(((), x), Fraction(1))}))

    def star(self, f, m):
        acc: dict = defaultdict(Fraction)
        for (v, x), p in m.weights:
            for (w, y), q in f(x).weights:
                acc[(v + w, y)] += p * q
        return WeightedPretraces.from_dict(acc)

    def map(self, f, m):
        acc: dict = defaultdict(Fraction)
        for (u, x), p in m.weights:
            acc[(u, f(x))] += p
        return WeightedPretraces.from_dict(acc)

    def gamma(self, x):
        return self.system.rows[x]

    def alpha_raw(self, g):
        return WeightedPretraces.from_dict({((a,), y): w for (a, y), w in g})

    def map_g(self, f, g):
        acc: dict = defaultdict(Fraction)
        for (a, y), w in g:
            acc[(a, f(y))] += w
        return tuple(sorted((k, v) for k, v in acc.items() if v))

    def observe(self, x, labels):
        acc: dict = defaultdict(Fraction)
        for (a, y), w in self.system.rows[x]:
            acc[(a, labels[y])] += w
        return tuple(sorted(acc.items()))

    def _random_distribution(self, rng, keys):
        raw = {k: rng.randint(1, 4) for k in keys}
        total = sum(raw.values())
        return {k: Fraction(v, total) for k, v in raw.items()}

    def random_mvalue(self, rng, size):
        k = len(self.alphabet)
        keys = {(tuple(rng.randrange(k) for _ in range(rng.randint(0, 2))), rng.randrange(size))
                for _ in range(rng.randint(1, 4))}
        return WeightedPretraces.from_dict(self._random_distribution(rng, keys))

    def random_gvalue(self, rng, size):
        keys = {(rng.randrange(len(self.alphabet)), rng.randrange(size)) for _ in range(rng.randint(1, 4))}
        return tuple(sorted(self._random_distribution(rng, keys).items()))

    def render(self, m):
        return render_weighted(m, self.alphabet, with_states=True)


def make_gps_instance(sys: GpsSystem) -> GpsInstance:
    return GpsInstance(sys)


def cylinder_probability(sys: GpsSystem, x: int, v: Word) -> Fraction:
    """Probability of the cone of infinite words extending ``v``, by unrolling the
    first letter: ``P_x(av) = sum_y gamma(x)(a, y) * P_y(v)``."""
    if not 0 <= x < sys.n_states:
        raise InputError(f"state {x} out of range")
    v = tuple(v)
    memo: dict[tuple[int, int], Fraction] = {}

    def mu(state: int, i: int) -> Fraction:
        if i == len(v):
            return Fraction(1)
        key = (state, i)
        if key not in memo:
            a = v[i]
            memo[key] = sum((w * mu(y, i + 1) for (b, y), w in sys.rows[state] if b == a), Fraction(0))
        return memo[key]

    return mu(x, 0)


def verify_prob_trace_match(sys: GpsSystem, depth: int) -> LawReport:
    """Forgotten n-th iterates coincide with cylinder probabilities on every word of length n."""
    inst = make_gps_instance(sys)
    report = LawReport("gps/prob-match")
    k = len(sys.alphabet)
    for x in range(sys.n_states):
        seq = kernel.trace_sequence(inst, x, depth)
        for n, entry in enumerate(seq.entries):
            weights = entry.word_weights()
            report.record(entry.mass() == 1, (sys.state_names[x], n, "mass"), 1, entry.mass())
            stray = [u for u in weights if len(u) != n]
            report.record(not stray, (sys.state_names[x], n, "support"), f"length {n}", stray)
            for v in all_words(k, n):
                expected = cylinder_probability(sys, x, v)
                actual = weights.get(v, Fraction(0))
                if expected or actual:
                    report.record(expected == actual, (sys.state_names[x], render_word(v, sys.alphabet)),
                                  expected, actual)
    return report
