import random

from alphatrace import kernel
from alphatrace.generators import random_lts, random_sparse_lts
from alphatrace.nondet import live_words, lts_from_names, make_lts_instance, names_to_words
from alphatrace.oracles import (
    oracle_bisim_stable,
    oracle_exact_trace_equiv,
    oracle_language,
    oracle_traces,
    product_size,
)

from conftest import BRANCHING_STATES


def test_branching_traces(branching):
    assert oracle_traces(branching, 0, 2) == set(names_to_words(["ab", "ac"], "abc"))
    assert oracle_traces(branching, 5, 2) == set(names_to_words(["ab", "ac"], "abc"))
    assert oracle_traces(branching, 0, 3) == set()
    assert oracle_exact_trace_equiv(branching, 0, 5)
    assert not oracle_exact_trace_equiv(branching, 0, 1)


def test_branching_stable_partition(branching):
    part = oracle_bisim_stable(make_lts_instance(branching))
    s0, t0 = BRANCHING_STATES.index("s0"), BRANCHING_STATES.index("t0")
    assert not part.same_block(s0, t0)
    assert part.same_block(BRANCHING_STATES.index("s20"), BRANCHING_STATES.index("t21"))


def test_language_oracle():
    sys = lts_from_names("ab", ["p", "q"], [("p", "a", "q"), ("q", "b", "p")], accepting=["q"])
    assert oracle_language(sys, 0, 4) == set(names_to_words(["a", "aba"], "ab"))
    assert oracle_language(sys, 1, 0) == {()}


def test_traces_agree_with_kernel():
    rng = random.Random(1)
    for _ in range(20):
        sys = random_lts(rng, 4)
        inst = make_lts_instance(sys)
        for x in range(sys.n_states):
            seq = kernel.trace_sequence(inst, x, 4)
            for n, e in enumerate(seq.entries):
                assert live_words(e) == oracle_traces(sys, x, n)


def test_exact_decision_matches_bounded_alpha():
    rng = random.Random(3)
    for _ in range(20):
        sys = random_sparse_lts(rng, 4)
        inst = make_lts_instance(sys)
        for x in range(sys.n_states):
            for y in range(sys.n_states):
                bound = product_size(sys, x, y)
                assert oracle_exact_trace_equiv(sys, x, y) == kernel.alpha_trace_equivalent(inst, x, y, bound)


def test_product_size_counts_pairs(branching):
    # {s0},{t0} -> {s10,s11},{t1} -> ({s20},{t20}), ({s21},{t21}), (∅,∅)
    assert product_size(branching, 0, 5) == 5
