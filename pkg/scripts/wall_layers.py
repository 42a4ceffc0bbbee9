#!/usr/bin/env python3
"""Count walls of a given type through a few classes, layer by layer.

Cross-checks every count against the standard-model oracle.
"""

import argparse
import collections

from mukai_enriques import lattice as lt
from mukai_enriques import oracles
from mukai_enriques import walls as wl

DEFAULT_H = ["[1,1,0,0,0,0,0,0,0,0]", "[1,2,0,0,0,0,0,0,0,0]", "[2,3,1,0,0,0,0,0,0,0]"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--type", default="2,4", help="r,Delta")
    ap.add_argument("H", nargs="*", default=DEFAULT_H)
    args = ap.parse_args()
    spec = wl.WallSpec.parse(args.type)
    for text in args.H:
        h = lt.parse_vector(text)
        found = [w.xi for w in wl.walls_through(h, spec)]
        layers = collections.Counter(lt.norm(x) for x in found)
        agree = found == oracles.walls_oracle(h, spec.r, spec.Delta)
        print(f"H={lt.format_vector(h)} H^2={lt.norm(h)} walls={len(found)} "
              f"layers={dict(sorted(layers.items()))} oracle={'agrees' if agree else 'DISAGREES'}")


if __name__ == "__main__":
    main()
