from fractions import Fraction

import pytest

from alphatrace.em_extension import EmInstance
from alphatrace.freemonad import SigCoalgebra
from alphatrace.kernel import ConstructionError
from alphatrace.nondet import LtsSystem, NfaInstance, NonBlockingNfa, TerminatingInstance, TerminatingLts
from alphatrace.prob import GpsSystem
from alphatrace.sysfile import (
    ParseError,
    SystemDescription,
    build_system,
    load_system,
    make_instance,
    parse_system,
    render_system,
)

from conftest import SYSTEMS

LEFT_PROCESS = """\
type: lts
alphabet: a b c
states: s0 s10 s11 s20 s21
trans: s0 a s10
trans: s0 a s11
trans: s10 b s20
trans: s11 c s21
"""


def test_left_process_file():
    desc = parse_system(LEFT_PROCESS)
    sys = build_system(desc)
    assert type(sys) is LtsSystem
    assert sys.n_states == 5 and len(sys.transitions) == 4
    assert sys.state_names == ("s0", "s10", "s11", "s20", "s21")


def test_shipped_left_file_matches():
    assert load_system(SYSTEMS / "fig1_left.sys")[0] == parse_system(LEFT_PROCESS)


def test_comments_blank_lines_and_key_order():
    text = "# header\n\ntype: lts   # kind\ntrans: p a q\nstates: p q\n\nalphabet: a\n"
    desc = parse_system(text)
    assert desc.transitions == (("p", "a", "q", None),)


@pytest.mark.parametrize("text, message", [
    ("type: lts\nalphabet: a b c\nstates: s0 s1\ntrans: s0 d s1\n", "symbol d not declared, line 4"),
    ("type: lts\nalphabet: a\nstates: p\ntrans: p a q\n", "state q not declared, line 4"),
    ("type: gps\nalphabet: a\nstates: x y\ntrans: x a y 1/2\ntrans: x a x 1/4\ntrans: y a y 1\n",
     "row of state x sums to 3/4, expected 1, line 4"),
    ("type: gps\nalphabet: a\nstates: x\ntrans: x a x 0\n", "weight 0 must be positive, line 4"),
    ("type: gps\nalphabet: a\nstates: x\ntrans: x a x half\n", "bad weight 'half', line 4"),
    ("type: gps\nalphabet: a\nstates: x\ntrans: x a x\n", "expected 'trans: src sym dst weight', line 4"),
    ("type: gps\nalphabet: a\nstates: x\ntrans: x a x 1/2\ntrans: x a x 1/2\n", "duplicate transition x a x, line 5"),
    ("type: lts\nalphabet: a\nstates: x\ntrans: x a x 1\n", "expected 'trans: src sym dst', line 4"),
    ("type: widget\n", "unknown kind 'widget', line 1"),
    ("# nothing\n", "missing 'type:' line"),
    ("alphabet: a\ntype: lts\n", "the first entry must be 'type: <kind>', line 1"),
    ("type: lts\ntype: lts\n", "duplicate type line, line 2"),
    ("type: lts\nstates: p\naccept: p\n", "key 'accept' not allowed for kind lts, line 3"),
    ("type: lts\nbogus line\n", "expected 'key: value', got 'bogus line', line 2"),
    ("type: lts\nalphabet: a a\n", "symbol a declared twice, line 2"),
    ("type: lts\nstates: p\nstates: p\n", "state p declared twice, line 3"),
    ("type: lts\nalphabet: a\n", "no states declared"),
    ("type: sig\nstates: x\nop: f 2\nrule: x f x\n", "operation f has arity 2, got 1 arguments, line 4"),
    ("type: sig\nstates: x\nop: f 1\nrule: x g x\n", "operation g not declared, line 4"),
    ("type: sig\nstates: x\nop: f one\n", "arity 'one' is not a non-negative integer, line 3"),
    ("type: sig\nstates: x\nop: f 1\nop: f 2\n", "operation f declared twice, line 4"),
    ("type: sig\nstates: x y\nop: c 0\nrule: x c\n", "state y has no rule, line 2"),
    ("type: sig\nstates: x\nop: c 0\nrule: x c\nrule: x c\n", "second rule for state x, line 5"),
    ("type: sig\nstates: x\n", "a signature needs at least one 'op:' line"),
    ("type: lts-term\nalphabet: a\nstates: p\naccept: q\n", "state q not declared, line 4"),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError) as err:
        parse_system(text)
    assert str(err.value) == message


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as err:
        parse_system("type: lts\nalphabet: a\n\nstates: p\ntrans: p b p\n")
    assert err.value.line == 5


@pytest.mark.parametrize("name", ["fig1.sys", "fig1_left.sys", "fig1_right.sys", "nfa_tree.sys",
                                  "two_state.gps", "fsig.sys", "termination.sys", "nonblocking.sys"])
def test_round_trip_shipped_files(name):
    desc = load_system(SYSTEMS / name)[0]
    again = parse_system(render_system(desc))
    assert again == desc
    assert render_system(again) == render_system(desc)


def test_render_format():
    desc = SystemDescription("gps", ("a",), ("x",), (("x", "a", "x", Fraction(1)),))
    assert render_system(desc) == "type: gps\nalphabet: a\nstates: x\ntrans: x a x 1\n"


def test_build_kinds():
    assert isinstance(load_system(SYSTEMS / "two_state.gps")[1], GpsSystem)
    assert isinstance(load_system(SYSTEMS / "fsig.sys")[1], SigCoalgebra)
    term = load_system(SYSTEMS / "termination.sys")[1]
    assert type(term) is TerminatingLts and term.accepting == frozenset({2})
    assert type(load_system(SYSTEMS / "nonblocking.sys")[1]) is NonBlockingNfa


def test_instances_per_kind():
    assert type(make_instance(load_system(SYSTEMS / "termination.sys")[1])) is TerminatingInstance
    assert type(make_instance(load_system(SYSTEMS / "nonblocking.sys")[1])) is NfaInstance
    assert isinstance(make_instance(load_system(SYSTEMS / "nfa_tree.sys")[1], kind="em"), EmInstance)
    with pytest.raises(TypeError):
        make_instance(object())


def test_nfa_blocking_and_completion():
    desc = parse_system("type: nfa\nalphabet: a\nstates: p q\ntrans: p a q\naccept: q\n")
    with pytest.raises(ConstructionError, match="state q has no successor on letter a"):
        build_system(desc)
    done = build_system(desc, complete=True)
    assert done.state_names == ("p", "q", "sink")
