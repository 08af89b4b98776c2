#!/usr/bin/env python3
"""Benchmark the fixpoint solver on seeded random bracket graphs.

Prints one row per (n, m) size: solve time, table size, worklist pops, and
whether the instance was reachable.  Sizes are given as ``n:m`` pairs.

Example:

    python3 scripts/bench_cfl.py --sizes 50:250,100:500,200:1000,400:2000
"""

import argparse
import random
import sys
import time

from lcreach import (
    Path,
    Witness,
    cfl_reach_table,
    d2_grammar,
    expand_witness,
    normalize,
    random_graph,
)


def parse_sizes(text: str) -> list:
    sizes = []
    for part in text.split(","):
        n_text, _, m_text = part.partition(":")
        sizes.append((int(n_text), int(m_text)))
    return sizes


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=2)
    parser.add_argument("--sizes", default="50:250,100:500,200:1000,400:2000")
    parser.add_argument("--alphabet", default="()[]")
    parser.add_argument("--order", choices=("fifo", "lifo"), default="fifo")
    parser.add_argument(
        "--repeats", type=int, default=3, help="draws per size (fresh graph each time)"
    )
    args = parser.parse_args()

    nf = normalize(d2_grammar())
    rng = random.Random(args.seed)
    print(f"{'n':>6} {'m':>6} {'seconds':>8} {'facts':>8} {'pops':>9} {'reachable':>9} {'walk':>6}")
    for n, m in parse_sizes(args.sizes):
        for _ in range(args.repeats):
            g = random_graph(rng, n, m, args.alphabet)
            started = time.perf_counter()
            table = cfl_reach_table(g, nf, order=args.order)
            elapsed = time.perf_counter() - started
            facts = len(table.facts)
            pops = table.pops
            root = (g.source, nf.start, g.target)
            if root not in table.facts:
                walk = "-"
                reachable = "no"
            else:
                reachable = "yes"
                expanded = expand_witness(Witness(root=root, table=table))
                walk = str(len(expanded.steps)) if isinstance(expanded, Path) else ">limit"
            print(
                f"{n:>6} {m:>6} {elapsed:>8.3f} {facts:>8} {pops:>9} {reachable:>9} {walk:>6}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
