"""Command line front end: ``alphatrace {trace,equiv,check,compare} FILE ...``.

Exit codes: 0 equivalent / all checks pass, 1 inequivalent / some check
failed, 2 usage, parse or construction error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass

from . import kernel
from .em_extension import bar_gamma, render_tree, tree_to_data, verify_theorem_jss
from .freemonad import SigCoalgebra, render_term, verify_factorization, verify_strong_bisim
from .kernel import ConstructionError, InputError, render_word_set
from .nondet import TerminatingLts, language_collapse, live_words, render_stage
from .prob import GpsSystem, render_weighted, verify_prob_trace_match
from .report import LawReport
from .sysfile import ParseError, load_system, make_instance

SEMANTICS = ("alpha", "behavioural", "language", "em")
TRACE_SEMANTICS = ("alpha", "language", "em")
SUITES = ("laws", "corollary", "factorization", "strong-bisim", "prob-match", "jss", "consistency")

DEPTH_HELP = ("observation depth; defaults to 2 x (number of states), which covers the "
              "synchronized subset-product bound used by the oracles; required for gps")


class UsageError(Exception):
    pass


@dataclass
class Outcome:
    code: int
    out: str = ""
    err: str = ""


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="system description file")
    common.add_argument("--depth", type=int, help=DEPTH_HELP)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--complete", action="store_true",
                        help="for nfa files: send blocked moves to a fresh sink instead of rejecting")

    p = argparse.ArgumentParser(prog="alphatrace", description="alpha-trace semantics of finite coalgebras")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trace", parents=[common], help="print the trace sequence of one state")
    t.add_argument("--state", required=True)
    t.add_argument("--semantics", choices=TRACE_SEMANTICS, default="alpha")

    e = sub.add_parser("equiv", parents=[common], help="decide depth-bounded equivalence of two states")
    e.add_argument("--left", required=True)
    e.add_argument("--right", required=True)
    e.add_argument("--semantics", choices=SEMANTICS, default="alpha")

    c = sub.add_parser("check", parents=[common], help="run a verification suite")
    c.add_argument("--suite", choices=SUITES, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=200)

    sub.add_parser("compare", parents=[common], help="pairwise table of all semantics")
    return p


# -- helpers -------------------------------------------------------------------

def _state(system, name: str) -> int:
    try:
        return list(system.state_names).index(name)
    except ValueError:
        raise UsageError(f"unknown state {name!r}") from None


def _depth(args, desc, system) -> int:
    if args.depth is None:
        if desc.kind == "gps":
            raise UsageError("--depth is required for gps systems")
        return 2 * _carrier(system)
    if args.depth < 0:
        raise UsageError("--depth must be non-negative")
    return args.depth


def _carrier(system) -> int:
    return system.n_states


def _needs_acceptance(system, what: str) -> None:
    if not isinstance(system, TerminatingLts):
        raise UsageError(f"{what} needs accepting states (kind lts-term or nfa)")


def _render_entry(inst, entry) -> str:
    family = inst.family
    if family == "lts":
        return render_word_set(live_words(entry), inst.alphabet)
    if family in ("lts-term", "nfa"):
        return render_stage(entry, inst.alphabet, terminating=True)
    if family == "gps":
        return render_weighted(entry, inst.alphabet)
    if family == "sig":
        return render_term(entry, terminal=True)
    raise InputError(f"no renderer for family {family!r}")


def _em_stages(system, x: int, depth: int) -> list:
    return [bar_gamma(system, {x}, n) for n in range(depth + 1)]


def _language_stages(inst, x: int, depth: int) -> list:
    return language_collapse(kernel.trace_sequence(inst, x, depth))


def _first_diff(a, b) -> int | None:
    for n, (u, v) in enumerate(zip(a, b)):
        if u != v:
            return n
    return None


def _difference(semantics: str, system, x: int, y: int, depth: int) -> int | None:
    if semantics == "alpha":
        inst = make_instance(system)
        return kernel.first_difference(kernel.trace_sequence(inst, x, depth),
                                       kernel.trace_sequence(inst, y, depth))
    if semantics == "behavioural":
        return kernel.first_split(make_instance(system), x, y, depth)
    if semantics == "language":
        _needs_acceptance(system, "language semantics")
        inst = make_instance(system)
        return _first_diff(_language_stages(inst, x, depth), _language_stages(inst, y, depth))
    _needs_acceptance(system, "em semantics")
    return _first_diff(_em_stages(system, x, depth), _em_stages(system, y, depth))


def _emit(args, text: str, data: dict, code: int) -> Outcome:
    if args.json:
        return Outcome(code, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return Outcome(code, text + "\n")


# -- commands ------------------------------------------------------------------

def cmd_trace(args, desc, system) -> Outcome:
    x = _state(system, args.state)
    depth = _depth(args, desc, system)
    lines = [f"trace {args.state} kind={desc.kind} semantics={args.semantics} depth={depth}"]
    stages: list = []
    if args.semantics == "em":
        _needs_acceptance(system, "em semantics")
        for n, tree in enumerate(_em_stages(system, x, depth)):
            lines.append(f"stage {n}:")
            lines.extend("  " + row for row in render_tree(tree, desc.alphabet).splitlines())
            stages.append(tree_to_data(tree))
    else:
        inst = make_instance(system)
        if args.semantics == "language":
            _needs_acceptance(system, "language semantics")
            rendered = [render_word_set(ws, desc.alphabet) for ws in _language_stages(inst, x, depth)]
        else:
            seq = kernel.trace_sequence(inst, x, depth)
            rendered = [_render_entry(inst, e) for e in seq.entries]
        for n, text in enumerate(rendered):
            lines.append(f"stage {n}: {text}")
        stages = rendered
    data = {"command": "trace", "state": args.state, "kind": desc.kind,
            "semantics": args.semantics, "depth": depth, "stages": stages}
    return _emit(args, "\n".join(lines), data, 0)


def cmd_equiv(args, desc, system) -> Outcome:
    x, y = _state(system, args.left), _state(system, args.right)
    depth = _depth(args, desc, system)
    diff = _difference(args.semantics, system, x, y, depth)
    text = "EQUIVALENT" if diff is None else f"INEQUIVALENT at depth {diff}"
    data = {"command": "equiv", "left": args.left, "right": args.right, "semantics": args.semantics,
            "depth": depth, "equivalent": diff is None, "first_difference": diff}
    return _emit(args, text, data, 0 if diff is None else 1)


def _suite_reports(args, desc, system, depth: int) -> list[LawReport]:
    suite = args.suite
    if suite == "laws":
        inst = make_instance(system)
        return [kernel.verify_monad_laws(inst, trials=args.trials, seed=args.seed),
                kernel.verify_alpha_naturality(inst, trials=args.trials, seed=args.seed),
                kernel.verify_iteration_identity(inst, depth)]
    if suite == "corollary":
        return [kernel.verify_corollary(make_instance(system), depth)]
    if suite in ("factorization", "strong-bisim"):
        if not isinstance(system, SigCoalgebra):
            raise UsageError(f"suite {suite} needs a sig file")
        fn = verify_factorization if suite == "factorization" else verify_strong_bisim
        return [fn(system, depth)]
    if suite == "prob-match":
        if not isinstance(system, GpsSystem):
            raise UsageError("suite prob-match needs a gps file")
        return [verify_prob_trace_match(system, depth)]
    if suite == "jss":
        _needs_acceptance(system, "suite jss")
        return [verify_theorem_jss(system, depth)]
    # consistency
    if desc.kind not in ("lts", "lts-term", "nfa"):
        raise UsageError("suite consistency needs an lts, lts-term or nfa file")
    inst = make_instance(system)
    total = LawReport(f"{inst.family}/consistency")
    for seq in kernel.all_trace_sequences(inst, depth):
        total.absorb(kernel.verify_trace_sequence_consistency(seq, nonblocking=desc.kind == "nfa"))
    return [total]


def cmd_check(args, desc, system) -> Outcome:
    depth = _depth(args, desc, system)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    reports = _suite_reports(args, desc, system, depth)
    ok = all(r.passed for r in reports)
    lines = [f"check {args.suite} kind={desc.kind} depth={depth} seed={args.seed}"]
    lines += [r.render() for r in reports]
    lines.append("ALL PASS" if ok else "SOME FAILED")
    data = {"command": "check", "suite": args.suite, "kind": desc.kind, "depth": depth,
            "seed": args.seed, "passed": ok, "reports": [r.to_dict() for r in reports]}
    return _emit(args, "\n".join(lines), data, 0 if ok else 1)


def cmd_compare(args, desc, system) -> Outcome:
    depth = _depth(args, desc, system)
    columns = ["alpha", "behavioural"]
    if isinstance(system, TerminatingLts):
        columns += ["language", "em"]
    diffs = {}
    names = system.state_names
    for x, y in itertools.combinations(range(len(names)), 2):
        diffs[(x, y)] = [_difference(sem, system, x, y, depth) for sem in columns]

    def cell(d):
        return "=" if d is None else str(d)

    width = max([len("pair")] + [len(f"{names[x]} {names[y]}") for x, y in diffs])
    header = "pair".ljust(width) + "".join(f"  {c:>11}" for c in columns)
    lines = [f"compare kind={desc.kind} depth={depth} ('=' equivalent, N first difference)", header]
    for (x, y), row in diffs.items():
        lines.append(f"{names[x]} {names[y]}".ljust(width) + "".join(f"  {cell(d):>11}" for d in row))
    data = {"command": "compare", "kind": desc.kind, "depth": depth, "columns": columns,
            "pairs": [{"left": names[x], "right": names[y], **dict(zip(columns, row))}
                      for (x, y), row in diffs.items()]}
    return _emit(args, "\n".join(lines), data, 0)


COMMANDS = {"trace": cmd_trace, "equiv": cmd_equiv, "check": cmd_check, "compare": cmd_compare}


def run(argv: list[str]) -> Outcome:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already wrote its message to stderr
        return Outcome(2 if exc.code else 0)
    try:
        desc, system = load_system(args.file, complete=args.complete)
        return COMMANDS[args.command](args, desc, system)
    except (ParseError, ConstructionError, InputError, UsageError) as exc:
        return Outcome(2, err=f"error: {exc}\n")
    except OSError as exc:
        return Outcome(2, err=f"error: cannot read {args.file}: {exc.strerror}\n")


def main(argv: list[str] | None = None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(outcome.out)
    sys.stderr.write(outcome.err)
    return outcome.code


if __name__ == "__main__":
    raise SystemExit(main())
