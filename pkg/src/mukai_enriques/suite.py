"""Invariant suite: each property returns pass/fail counts plus a JSON payload.

Shared by ``mukai verify`` and the acceptance tests. Randomized properties
draw from a ``random.Random`` seeded by the caller, so identical seeds give
identical payloads.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from . import intlinalg as il
from . import lattice as lt
from . import mukai as mk
from . import oracles
from . import reduction as rd
from . import walls as wl
from .lattice import ClassVector


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    examples: List = field(default_factory=list)  # first few failures
    payload: Dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, good: bool, example=None) -> None:
        if good:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.examples) < 5:
                self.examples.append(example)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "failed": self.failed,
                "examples": self.examples, "payload": self.payload}


ACTIVE = (0, 1, 2)  # sigma, f, e1: the "3 active coordinates" of the sweeps


def _small_c1(lo: int = -3, hi: int = 3):
    for a, b, c in itertools.product(range(lo, hi + 1), repeat=3):
        coords = [0] * lt.RANK
        coords[ACTIVE[0]], coords[ACTIVE[1]], coords[ACTIVE[2]] = a, b, c
        yield ClassVector(coords)


def random_vector(rng: random.Random, lo: int = -3, hi: int = 3) -> ClassVector:
    return ClassVector(rng.randint(lo, hi) for _ in range(lt.RANK))


def random_mukai(rng: random.Random, lo: int = -3, hi: int = 3) -> mk.MukaiVector:
    r = rng.randint(-6, 6)
    s = rng.randint(-12, 12)
    if (r - s) % 2:
        s += 1
    return mk.MukaiVector(r, random_vector(rng, lo, hi), s)


# ---------------------------------------------------------------- properties


def lattice_identities(rng: random.Random, samples: int = 10_000) -> PropertyResult:
    res = PropertyResult("lattice_identities")
    res.record(il.det(lt.GRAM) == -1, "det(Gram) != -1")
    res.record(il.det(lt.E8_GRAM) == 1, "det(E8 block) != 1")
    for _ in range(samples):
        x = random_vector(rng, -50, 50)
        res.record(lt.norm(x) % 2 == 0, list(x))
    return res


def root_counts() -> PropertyResult:
    res = PropertyResult("root_counts")
    for n, expected in ((-2, 240), (-4, 2160)):
        fast = set(lt.short_vectors(lt.E8_BLOCK, n, n))
        slow = {v for v in oracles.e8_vectors(-n) if lt.norm(v) == n}
        res.record(len(fast) == expected and fast == slow,
                   {"norm": n, "fast": len(fast), "oracle": len(slow)})
        res.payload[str(n)] = len(fast)
    return res


def wall_layer(h=None, spec=wl.WallSpec(2, 4)) -> PropertyResult:
    res = PropertyResult("wall_layer")
    h = lt.SIGMA + lt.F if h is None else ClassVector(h)
    fast = [w.xi for w in wl.walls_through(h, spec)]
    slow = oracles.walls_oracle(h, spec.r, spec.Delta)
    layers = {}
    for x in fast:
        layers[lt.norm(x)] = layers.get(lt.norm(x), 0) + 1
    res.record(fast == slow, {"fast": len(fast), "oracle": len(slow)})
    if h == lt.SIGMA + lt.F and spec == wl.WallSpec(2, 4):
        res.record(len(fast) == 1441 and layers == {-2: 121, -4: 1320},
                   {"count": len(fast), "layers": layers})
    res.payload = {"count": len(fast), "layers": {str(k): v for k, v in sorted(layers.items())},
                   "witnesses": [list(x) for x in fast]}
    return res


def twist_isometry(rng: random.Random, samples: int = 10_000) -> PropertyResult:
    res = PropertyResult("twist_isometry")
    for _ in range(samples):
        v, w, d = random_mukai(rng), random_mukai(rng), random_vector(rng)
        before = mk.mukai_pairing(v, w)
        after = mk.mukai_pairing(mk.twist(v, d), mk.twist(w, d))
        res.record(before == after, {"v": v.to_json(), "w": w.to_json(), "D": list(d)})
    return res


def pairing_oracle(rng: random.Random, samples: int = 2_000) -> PropertyResult:
    res = PropertyResult("pairing_oracle")
    for _ in range(samples):
        v, w = random_mukai(rng), random_mukai(rng)
        res.record(mk.mukai_pairing(v, w) == oracles.chern_pairing(v, w),
                   {"v": v.to_json(), "w": w.to_json()})
    return res


def gcd_sweep() -> PropertyResult:
    """Primitive v: gcd(r, c1, s) in {1, 2}; if 2 then c2 odd and r + s = 2 mod 4."""
    res = PropertyResult("gcd_sweep")
    primitive = 0
    for r in range(-6, 7):
        for c1 in _small_c1():
            for s in range(-12, 13):
                if (r - s) % 2:
                    continue
                v = mk.MukaiVector(r, c1, s)
                if not mk.is_primitive(v):
                    continue
                primitive += 1
                g = mk.gcd_rcs(v)
                good = g in (1, 2)
                if g == 2:
                    good = good and mk.to_chern(v).c2 % 2 == 1 and (r + s) % 4 == 2
                res.record(good, v.to_json())
    res.payload = {"primitive": primitive}
    return res


def rank2_primitivity_sweep(t_bound: int = 20) -> PropertyResult:
    """is_primitive(2 + c1 + t rho) is false exactly when 2 | c1 and t is odd."""
    res = PropertyResult("rank2_primitivity_sweep")
    for c1 in _small_c1():
        even = all(a % 2 == 0 for a in c1)
        for t in range(-t_bound, t_bound + 1):
            v = mk.MukaiVector.rank2(c1, t)
            remark = not (even and t % 2 == 1)
            coords = [v.r, *v.c1, -(v.r + v.s) // 2]
            res.record(mk.is_primitive(v) == remark == oracles.in_span_primitive(coords),
                       v.to_json())
    return res


def random_primitive_even(rng: random.Random) -> mk.MukaiVector:
    while True:
        r = rng.choice(range(6, 21, 2))
        c1 = random_vector(rng, -5, 5)
        s = rng.choice(range(-40, 41, 2))
        v = mk.MukaiVector(r, c1, s)
        if mk.is_primitive(v):
            return v


def reductions(rng: random.Random, samples: int = 1_000,
               budget: rd.ReductionBudget = rd.ReductionBudget()) -> PropertyResult:
    """Success = a certificate that verifies; exhaustion is counted separately."""
    res = PropertyResult("reductions")
    exhausted = []
    certs = []
    for _ in range(samples):
        v = random_primitive_even(rng)
        try:
            cert = rd.reduce_even(v, budget)
        except rd.SearchExhausted as exc:
            exhausted.append({"v": v.to_json(), "report": exc.report})
            continue
        report = rd.verify_certificate(cert)
        good = (report.ok and cert.final.r in (2, 4)
                and all(mk.v_square(s.result) == mk.v_square(v) for s in cert.steps)
                and all(mk.is_primitive(s.result) for s in cert.steps))
        res.record(good, {"v": v.to_json(), "verification": report.to_json()})
        certs.append(cert.to_json())
    res.payload = {"samples": samples, "exhausted": len(exhausted),
                   "exhausted_examples": exhausted[:5],
                   "success_rate": res.passed / samples if samples else 1.0,
                   "certificates": certs}
    return res


def kim_sweep(t_bound: int = 20) -> PropertyResult:
    res = PropertyResult("kim_sweep")
    for c1 in _small_c1():
        for t in range(-t_bound, t_bound + 1):
            v = mk.MukaiVector.rank2(c1, t)
            try:
                move, w = rd.kim_normalize(v)
                good = w.t in (0, 1) and w == mk.apply_move(v, move)
            except rd.SearchExhausted:
                good = False
            res.record(good, v.to_json())
    return res


def random_ample(rng: random.Random) -> ClassVector:
    """a sigma + b f + eta with a >= 1 (so f.L1 > 0) and positive square."""
    while True:
        a = rng.randint(1, 3)
        b = rng.randint(2, 8)
        eta = [rng.randint(-1, 1) for _ in range(8)]
        x = ClassVector((a, b, *eta))
        if any(eta) and lt.norm(x) > 0:
            return x


def polarizations(rng: random.Random, count: int = 20,
                  spec: wl.WallSpec = wl.WallSpec(2, 4)) -> PropertyResult:
    res = PropertyResult("polarizations")
    inputs = [lt.SIGMA + 2 * lt.F] + [random_ample(rng) for _ in range(count)]
    out = []
    for l1 in inputs:
        try:
            p = wl.construct_polarization(l1, lt.F, spec)
        except wl.PolarizationExhausted as exc:
            res.record(False, {"L1": list(l1), "report": exc.report})
            continue
        fa_l0 = lt.inner(lt.F, p.L0)
        good = (p.n > fa_l0 and lt.norm(p.H) > 0
                and oracles.walls_oracle(p.H, spec.r, spec.Delta) == [])
        res.record(good, {"L1": list(l1), "H": list(p.H)})
        out.append(dict(p.to_json(), L1=list(l1)))
    # sigma + 2f has no E8 part, so every L1 + n f lies on a root wall
    res.record(bool(out) and out[0]["report"]["path"] == "perturbed", "sigma+2f not perturbed")
    res.payload = {"polarizations": out}
    return res


def shift_and_solve(rng: random.Random, samples: int = 1_000) -> PropertyResult:
    res = PropertyResult("shift_and_solve")
    for _ in range(samples):
        x = ClassVector((0, 0, *(rng.randint(-6, 6) for _ in range(8))))
        r = rng.randint(1, 24)
        xi = lt.primitive_shift(x, r)
        shifted = x + r * xi
        l = il.content([il.content(x), r])
        res.record(lt.content(shifted) == l and il.content([a // l for a in shifted]) == 1,
                   {"x": list(x), "r": r})
    for _ in range(samples):
        y = random_vector(rng, -6, 6)
        g = lt.content(y)
        y = ClassVector(a // g for a in y) if g else lt.SIGMA
        m = rng.randint(-50, 50)
        eta = lt.solve_pairing(y, m)
        res.record(lt.inner(eta, y) == m, {"y": list(y), "m": m})
    return res


REGISTRY: Dict[str, Callable[..., PropertyResult]] = {
    "lattice_identities": lattice_identities,
    "root_counts": root_counts,
    "wall_layer": wall_layer,
    "twist_isometry": twist_isometry,
    "pairing_oracle": pairing_oracle,
    "gcd_sweep": gcd_sweep,
    "rank2_primitivity_sweep": rank2_primitivity_sweep,
    "reductions": reductions,
    "kim_sweep": kim_sweep,
    "polarizations": polarizations,
    "shift_and_solve": shift_and_solve,
}

RANDOMIZED = {"lattice_identities", "twist_isometry", "pairing_oracle", "reductions",
              "polarizations", "shift_and_solve"}


def run(names=None, seed: int = 0, scale: float = 1.0) -> List[PropertyResult]:
    """Run the named properties (all by default); ``scale`` shrinks sample sizes."""
    results = []
    for name in names or REGISTRY:
        fn = REGISTRY[name]
        if name in RANDOMIZED:
            rng = random.Random(f"{seed}:{name}")
            defaults = {"lattice_identities": 10_000, "twist_isometry": 10_000,
                        "pairing_oracle": 2_000, "reductions": 1_000,
                        "polarizations": 20, "shift_and_solve": 1_000}
            size = max(1, int(defaults[name] * scale))
            key = "count" if name == "polarizations" else "samples"
            results.append(fn(rng, **{key: size}))
        else:
            results.append(fn())
    return results
