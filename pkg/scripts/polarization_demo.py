#!/usr/bin/env python3
"""Build off-wall polarizations L0 + n FA for a list of L1 and report the path taken."""

import argparse
import random
import time

from mukai_enriques import lattice as lt
from mukai_enriques import oracles
from mukai_enriques import suite
from mukai_enriques import walls as wl


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=5, help="extra random L1 with -E8 parts")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--type", default="2,4")
    args = ap.parse_args()
    spec = wl.WallSpec.parse(args.type)
    rng = random.Random(args.seed)
    inputs = [lt.SIGMA + 2 * lt.F] + [suite.random_ample(rng) for _ in range(args.random)]
    for l1 in inputs:
        t0 = time.perf_counter()
        p = wl.construct_polarization(l1, lt.F, spec)
        dt = time.perf_counter() - t0
        clean = not oracles.walls_oracle(p.H, spec.r, spec.Delta)
        print(f"L1={lt.format_vector(l1)} path={p.report['path']} n={p.n} H^2={lt.norm(p.H)} "
              f"off-wall={clean} ({dt:.2f}s)")


if __name__ == "__main__":
    main()
