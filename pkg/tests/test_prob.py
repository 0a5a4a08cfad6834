import random
from fractions import Fraction as F

import pytest

from alphatrace import kernel
from alphatrace.generators import random_gps
from alphatrace.kernel import ConstructionError, InputError
from alphatrace.prob import (
    GpsSystem,
    WeightedPretraces,
    cylinder_probability,
    make_gps_instance,
    render_weighted,
    verify_prob_trace_match,
)


def test_two_state_iterates(two_state_gps):
    inst = make_gps_instance(two_state_gps)
    assert kernel.iterate(inst, 0, 1).as_dict() == {((0,), 0): F(1, 2), ((1,), 1): F(1, 2)}
    seq = kernel.trace_sequence(inst, 0, 2)
    assert [render_weighted(e, "ab") for e in seq.entries] == ["{ε: 1}", "{a: 1/2, b: 1/2}",
                                                               "{aa: 1/4, ab: 1/4, ba: 1/2}"]
    assert seq.entries[2].word_weights()[(0, 1)] == F(1, 4)  # x -a-> x -b-> y: 1/2 * 1/2


def test_two_state_cylinders(two_state_gps):
    assert cylinder_probability(two_state_gps, 0, ()) == 1
    assert cylinder_probability(two_state_gps, 0, (0, 0)) == F(1, 4)
    assert cylinder_probability(two_state_gps, 0, (0, 1)) == F(1, 4)
    assert cylinder_probability(two_state_gps, 0, (1, 0)) == F(1, 2)
    assert cylinder_probability(two_state_gps, 0, (1, 1)) == 0
    assert cylinder_probability(two_state_gps, 1, (0, 0, 0)) == 1
    assert verify_prob_trace_match(two_state_gps, 4).passed
    with pytest.raises(InputError):
        cylinder_probability(two_state_gps, 5, ())


def test_biased_weights():
    from alphatrace.sysfile import load_system
    from conftest import SYSTEMS

    sys = load_system(SYSTEMS / "biased.gps")[1]
    weights = kernel.trace_sequence(make_gps_instance(sys), 0, 3).entries[3].word_weights()
    assert weights[(1, 0, 0)] == F(1, 18)  # 1/2 * 1/3 * 1/3
    assert weights[(1, 0, 1)] == F(1, 9)
    assert sum(weights.values()) == 1
    assert cylinder_probability(sys, 1, (1, 1)) == F(1, 3)


def test_row_validation_names_state():
    with pytest.raises(ConstructionError, match="state y: weights sum to 3/4, expected 1"):
        GpsSystem(("a",), 2, ({(0, 0): 1}, {(0, 0): F(3, 4)}), ("x", "y"))
    with pytest.raises(ConstructionError, match="non-positive"):
        GpsSystem(("a",), 1, ({(0, 0): 0},))
    with pytest.raises(ConstructionError, match="out of range"):
        GpsSystem(("a",), 1, ({(1, 0): 1},))
    with pytest.raises(ConstructionError):
        GpsSystem((), 1, ({},))


def test_weighted_pretraces_canonical():
    a = WeightedPretraces.from_dict({((0,), 1): F(1, 3), ((), 0): F(2, 3)})
    b = WeightedPretraces.from_dict({((), 0): F(4, 6), ((0,), 1): F(1, 3)})
    assert a == b and hash(a) == hash(b)
    assert a.word_weights() == {(0,): F(1, 3), (): F(2, 3)}


def test_prob_match_random():
    rng = random.Random(2)
    for _ in range(10):
        assert verify_prob_trace_match(random_gps(rng, 4), 3).passed


def test_equivalent_distributions():
    # both states emit a forever with probability 1
    sys = GpsSystem(("a",), 2, ({(0, 1): 1}, {(0, 0): F(1, 2), (0, 1): F(1, 2)}))
    inst = make_gps_instance(sys)
    assert kernel.alpha_trace_equivalent(inst, 0, 1, 6)
    assert kernel.finite_depth_equivalent(inst, 0, 1, 6)
