from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from alphatrace import kernel
from alphatrace.em_extension import (
    accepted_paths,
    bar_gamma,
    collapse_leaves,
    make_em_instance,
    verify_theorem_jss,
)
from alphatrace.freemonad import SigCoalgebra, Signature, make_term_instance, truncate, verify_factorization
from alphatrace.nondet import (
    LtsSystem,
    NonBlockingNfa,
    TerminatingLts,
    language_collapse,
    live_words,
    make_lts_instance,
    make_terminating_instance,
    stage_components,
    tilde_gamma,
)
from alphatrace.oracles import oracle_language, oracle_traces
from alphatrace.prob import GpsSystem, cylinder_probability, make_gps_instance
from alphatrace.sysfile import SystemDescription, parse_system, render_system

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def lts_systems(draw, max_states=4, max_letters=2, accepting=False):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, max_letters))
    triples = st.tuples(st.integers(0, n - 1), st.integers(0, k - 1), st.integers(0, n - 1))
    trans = frozenset(draw(st.lists(triples, max_size=3 * n)))
    alphabet = tuple("ab"[:k])
    if not accepting:
        return LtsSystem(alphabet, n, trans)
    acc = frozenset(draw(st.sets(st.integers(0, n - 1))))
    return TerminatingLts(alphabet, n, trans, (), acc)


@st.composite
def gps_systems(draw, max_states=3, max_letters=2):
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, max_letters))
    rows = []
    for _ in range(n):
        keys = draw(st.sets(st.tuples(st.integers(0, k - 1), st.integers(0, n - 1)), min_size=1, max_size=3))
        raw = [draw(st.integers(1, 5)) for _ in keys]
        rows.append({key: Fraction(w, sum(raw)) for key, w in zip(sorted(keys), raw)})
    return GpsSystem(tuple("ab"[:k]), n, tuple(rows))


@st.composite
def sig_coalgebras(draw, max_states=4):
    arities = draw(st.lists(st.integers(0, 2), min_size=1, max_size=3))
    sig = Signature(tuple(zip("fgh", arities)))
    n = draw(st.integers(1, max_states))
    rules = []
    for _ in range(n):
        op, arity = draw(st.sampled_from(sig.operations))
        rules.append((op, tuple(draw(st.integers(0, n - 1)) for _ in range(arity))))
    return SigCoalgebra(sig, n, tuple(rules))


@given(lts_systems(), st.integers(0, 4))
def test_lts_stage_n_holds_words_of_length_n(sys, n):
    inst = make_lts_instance(sys)
    for x in range(sys.n_states):
        entry = kernel.trace_sequence(inst, x, n).entries[n]
        assert live_words(entry) == oracle_traces(sys, x, n)


@given(lts_systems(accepting=True), st.integers(1, 4))
def test_termination_components(sys, depth):
    inst = make_terminating_instance(sys)
    for x in range(sys.n_states):
        seq = kernel.trace_sequence(inst, x, depth)
        comps = [stage_components(e) for e in seq.entries]
        accepted = [a for a, _ in comps]
        assert all(a <= b for a, b in zip(accepted, accepted[1:]))
        executable = set()
        for n, (acc, live) in enumerate(comps):
            executable |= live
            assert acc <= executable
        assert language_collapse(seq) == tilde_gamma(inst, x, depth)


@given(lts_systems())
def test_alpha_equivalence_is_an_equivalence(sys):
    inst = make_lts_instance(sys)
    n = sys.n_states
    eq = [[kernel.alpha_trace_equivalent(inst, x, y, 3) for y in range(n)] for x in range(n)]
    for x in range(n):
        assert eq[x][x]
        for y in range(n):
            assert eq[x][y] == eq[y][x]
            for z in range(n):
                if eq[x][y] and eq[y][z]:
                    assert eq[x][z]


@given(lts_systems(accepting=True))
def test_partitions_refine_monotonically(sys):
    parts = kernel.finite_depth_partitions(make_terminating_instance(sys), 5)
    for fine, coarse in zip(parts[1:], parts):
        assert fine.refines(coarse)


@given(st.one_of(lts_systems().map(make_lts_instance),
                 lts_systems(accepting=True).map(make_terminating_instance),
                 gps_systems().map(make_gps_instance),
                 sig_coalgebras().map(make_term_instance)))
def test_behavioural_implies_alpha(inst):
    assert kernel.verify_corollary(inst, 4).passed


@given(gps_systems(), st.integers(0, 3))
def test_gps_stage_mass_and_cylinders(sys, n):
    inst = make_gps_instance(sys)
    for x in range(sys.n_states):
        entry = kernel.trace_sequence(inst, x, n).entries[n]
        assert entry.mass() == 1
        for v, w in entry.word_weights().items():
            assert len(v) == n
            assert cylinder_probability(sys, x, v) == w


@given(sig_coalgebras())
def test_sig_factorization(c):
    assert verify_factorization(c, 4).passed


@given(sig_coalgebras(), st.integers(0, 4))
def test_sig_alpha_iff_behavioural(c, depth):
    inst = make_term_instance(c)
    for x in range(c.n_states):
        for y in range(c.n_states):
            assert (kernel.alpha_trace_equivalent(inst, x, y, depth)
                    == kernel.finite_depth_equivalent(inst, x, y, depth))


@given(sig_coalgebras(), st.integers(0, 4))
def test_sig_truncation_recovers_earlier_stages(c, n):
    seq = kernel.trace_sequence(make_term_instance(c), 0, n)
    for m in range(n + 1):
        assert truncate(seq.entries[n], m) == seq.entries[m]


@st.composite
def nonblocking_nfas(draw, max_states=4):
    n = draw(st.integers(1, max_states))
    trans = set()
    for x in range(n):
        for a in range(2):
            targets = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=2))
            trans |= {(x, a, y) for y in targets}
    acc = frozenset(draw(st.sets(st.integers(0, n - 1))))
    return NonBlockingNfa(("0", "1"), n, frozenset(trans), (), acc)


@given(nonblocking_nfas())
def test_nonblocking_collapse_loses_nothing(nfa):
    inst = make_em_instance(nfa)
    trees = [inst.forget(kernel.iterate(inst, x, 3)) for x in range(nfa.n_states)]
    for s in trees:
        for t in trees:
            assert (s == t) == (collapse_leaves(s) == collapse_leaves(t))


@given(lts_systems(accepting=True))
def test_jss_and_em_language(sys):
    assert verify_theorem_jss(sys, 3).passed
    for x in range(sys.n_states):
        assert accepted_paths(bar_gamma(sys, {x}, 3)) == oracle_language(sys, x, 2)


names = st.text("pqrs", min_size=1, max_size=3)


@st.composite
def descriptions(draw):
    kind = draw(st.sampled_from(["lts", "lts-term", "nfa", "gps"]))
    alphabet = tuple(draw(st.lists(st.text("abc", min_size=1, max_size=2), min_size=1, max_size=3, unique=True)))
    states = tuple(draw(st.lists(names, min_size=1, max_size=4, unique=True)))
    if kind == "gps":
        trans = []
        for s in states:
            a = draw(st.sampled_from(alphabet))
            targets = draw(st.lists(st.sampled_from(states), min_size=1, max_size=2, unique=True))
            trans += [(s, a, t, Fraction(1, len(targets))) for t in targets]
        return SystemDescription(kind, alphabet, states, tuple(trans))
    triples = st.tuples(st.sampled_from(states), st.sampled_from(alphabet), st.sampled_from(states))
    trans = tuple((s, a, t, None) for s, a, t in draw(st.lists(triples, max_size=6)))
    acc = ()
    if kind != "lts":
        acc = tuple(draw(st.lists(st.sampled_from(states), unique=True)))
    return SystemDescription(kind, alphabet, states, trans, acc)


@given(descriptions())
def test_render_parse_round_trip(desc):
    assert parse_system(render_system(desc)) == desc
