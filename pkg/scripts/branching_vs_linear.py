"""Print the two processes of the branching-time example side by side.

Shows the pretrace iterates of s0, the alpha-trace sequences of s0 and t0,
and the depth at which partition refinement first separates them.
"""

import argparse
from pathlib import Path

from alphatrace import kernel
from alphatrace.nondet import render_pretraces, render_stage
from alphatrace.sysfile import load_system, make_instance

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=4)
    args = ap.parse_args()

    desc, system = load_system(SYSTEMS / "fig1.sys")
    inst = make_instance(system)
    s0, t0 = desc.states.index("s0"), desc.states.index("t0")

    print("pretrace iterates of s0")
    for n in range(args.depth + 1):
        print(f"  {n}: {render_pretraces(kernel.iterate(inst, s0, n), desc.alphabet, desc.states)}")

    print("trace sequences")
    for x in (s0, t0):
        seq = kernel.trace_sequence(inst, x, args.depth)
        stages = ", ".join(render_stage(e, desc.alphabet, False) for e in seq.entries)
        print(f"  {desc.states[x]}: ({stages})")

    same = kernel.alpha_trace_equivalent(inst, s0, t0, args.depth)
    split = kernel.first_split(inst, s0, t0, args.depth)
    print(f"alpha-trace equivalent up to depth {args.depth}: {same}")
    print(f"first behavioural split: {split}")
    for part in kernel.finite_depth_partitions(inst, args.depth):
        blocks = [" ".join(desc.states[x] for x in b) for b in part.blocks()]
        print(f"  depth {part.depth}: " + " | ".join(blocks))


if __name__ == "__main__":
    main()
