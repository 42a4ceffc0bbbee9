"""Acceptance criteria 1-11, each at its stated tolerance and runtime budget.

Every criterion records one PASS/FAIL line; conftest prints them in the
terminal summary. Run standalone with ``python3 tests/test_acceptance.py``.
"""

import json
import random
import sys
import time

import pytest

from mukai_enriques import suite

pytestmark = pytest.mark.slow

LINES = []
_FIRST_RUN = {}  # criterion -> JSON text, reused by the determinism check

SEED = 20240601


def _rng(name):
    return random.Random(f"{SEED}:{name}")


def _dump(payload):
    return json.dumps(payload, sort_keys=True)


def _record(num, title, ok, elapsed, limit, detail=""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"[{status}] criterion {num:>2}: {title} - {elapsed:.2f}s{budget}"
    if detail:
        line += f" - {detail}"
    LINES.append(line)
    print(line)
    return ok and within


def _timed(fn):
    t0 = time.perf_counter()
    res = fn()
    return res, time.perf_counter() - t0


def test_c01_lattice_identities():
    res, dt = _timed(lambda: suite.lattice_identities(_rng("c1"), 10_000))
    assert _record(1, "lattice identities", res.ok, dt, 1.0, f"{res.passed} checks"), res.examples


def test_c02_root_counts():
    res, dt = _timed(suite.root_counts)
    assert _record(2, "E8 roots 240 / norm -4 2160 vs oracle", res.ok, dt, 10.0,
                   f"counts {res.payload}"), res.examples


def run_c03():
    return suite.wall_layer()


def test_c03_wall_layer():
    res, dt = _timed(run_c03)
    _FIRST_RUN[3] = _dump(res.payload)
    assert _record(3, "walls through sigma+f, type (2,4), vs oracle", res.ok, dt, 30.0,
                   f"count {res.payload['count']}, layers {res.payload['layers']}"), res.examples


def test_c04_twist_isometry():
    res, dt = _timed(lambda: suite.twist_isometry(_rng("c4"), 10_000))
    assert _record(4, "twist isometry on 10k triples", res.ok, dt, 5.0), res.examples


def test_c05_gcd_sweep():
    res, dt = _timed(suite.gcd_sweep)
    assert _record(5, "gcd sweep", res.ok, dt, 120.0,
                   f"{res.payload['primitive']} primitive vectors, {res.failed} counterexamples"), res.examples


def test_c06_rank2_primitivity():
    res, dt = _timed(suite.rank2_primitivity_sweep)
    assert _record(6, "rank-2 primitivity sweep", res.ok, dt, 60.0, f"{res.passed} instances"), res.examples


def run_c07():
    return suite.reductions(_rng("c7"), 1_000)


def test_c07_reductions():
    res, dt = _timed(run_c07)
    _FIRST_RUN[7] = _dump(res.payload)
    rate = res.payload["success_rate"]
    ok = res.ok and rate >= 0.99
    assert _record(7, "1000 random reductions", ok, dt, 300.0,
                   f"success {rate:.1%}, exhausted {res.payload['exhausted']}, bad certificates {res.failed}"), \
        res.examples


def test_c08_kim_sweep():
    res, dt = _timed(suite.kim_sweep)
    assert _record(8, "rank-2 normalization sweep", res.ok, dt, 60.0, f"{res.passed} instances"), res.examples


def run_c09():
    return suite.polarizations(_rng("c9"), 20)


def test_c09_polarizations():
    res, dt = _timed(run_c09)
    _FIRST_RUN[9] = _dump(res.payload)
    paths = [p["report"]["path"] for p in res.payload["polarizations"]]
    assert _record(9, "off-wall polarizations (sigma+2f and 20 random)", res.ok, dt, 120.0,
                   f"{paths.count('direct')} direct, {paths.count('perturbed')} perturbed"), res.examples


def test_c10_shift_and_solve():
    res, dt = _timed(lambda: suite.shift_and_solve(_rng("c10"), 1_000))
    assert _record(10, "primitive_shift / solve_pairing postconditions", res.ok, dt, 10.0,
                   f"{res.passed} instances"), res.examples


def test_c11_determinism():
    t0 = time.perf_counter()
    mismatched = []
    for num, fn in ((3, run_c03), (7, run_c07), (9, run_c09)):
        first = _FIRST_RUN.get(num) or _dump(fn().payload)
        if _dump(fn().payload) != first:
            mismatched.append(num)
    dt = time.perf_counter() - t0
    assert _record(11, "byte-identical JSON for criteria 3, 7, 9", not mismatched, dt, None,
                   f"mismatched {mismatched}" if mismatched else ""), mismatched


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
