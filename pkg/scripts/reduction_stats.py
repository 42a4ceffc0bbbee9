#!/usr/bin/env python3
"""Statistics of certified reductions on random primitive even-rank vectors.

Prints the exhaustion count, step counts, the distribution of final ranks
and how often each kind of move appears in the certificates.
"""

import argparse
import collections
import json
import random
import time

from mukai_enriques import reduction as rd
from mukai_enriques import suite
from mukai_enriques.mukai import ReBase, Switch, Twist


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="emit a JSON summary instead of text")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    finals = collections.Counter()
    moves = collections.Counter()
    lengths = []
    exhausted = 0
    t0 = time.perf_counter()
    for _ in range(args.samples):
        v = suite.random_primitive_even(rng)
        try:
            cert = rd.reduce_even(v)
        except rd.SearchExhausted:
            exhausted += 1
            continue
        finals[cert.final.r] += 1
        lengths.append(len(cert.steps))
        for step in cert.steps:
            kind = {Twist: "twist", Switch: "switch", ReBase: "rebase"}[type(step.move)]
            moves[kind] += 1
    elapsed = time.perf_counter() - t0

    summary = {
        "samples": args.samples, "exhausted": exhausted,
        "final_ranks": dict(sorted(finals.items())), "moves": dict(sorted(moves.items())),
        "steps_mean": sum(lengths) / len(lengths) if lengths else 0.0,
        "steps_max": max(lengths, default=0), "seconds": round(elapsed, 2),
    }
    if args.json:
        print(json.dumps(summary, sort_keys=True))
        return
    for key, value in summary.items():
        print(f"{key:>12}: {value}")


if __name__ == "__main__":
    main()
