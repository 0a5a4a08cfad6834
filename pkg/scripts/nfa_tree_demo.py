"""Draw the determinization trees for a state of an automaton file.

Left: the forgotten iterate (leaves record which words are not blocked).
Right: the cone of the subset construction (leaves collapsed to *).
"""

import argparse
from pathlib import Path

from alphatrace import kernel
from alphatrace.em_extension import accepted_paths, bar_gamma, forget_leaves, make_em_instance, render_tree
from alphatrace.kernel import render_word_set
from alphatrace.sysfile import load_system

DEFAULT = Path(__file__).resolve().parent.parent / "systems" / "nfa_tree.sys"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("file", nargs="?", default=str(DEFAULT))
    ap.add_argument("--state", default=None)
    ap.add_argument("--depth", type=int, default=2)
    args = ap.parse_args()

    desc, nfa = load_system(args.file)
    x = desc.states.index(args.state) if args.state else 0
    left = forget_leaves(kernel.iterate(make_em_instance(nfa), x, args.depth))
    right = bar_gamma(nfa, {x}, args.depth)
    print(f"state {desc.states[x]}, depth {args.depth}")
    print("forgotten iterate:")
    print(render_tree(left, desc.alphabet))
    print("determinized cone:")
    print(render_tree(right, desc.alphabet))
    print("accepted " + render_word_set(accepted_paths(right), desc.alphabet))


if __name__ == "__main__":
    main()
