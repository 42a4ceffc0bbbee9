"""Certified rank reduction of even-rank primitive Mukai vectors.

Every reduction is recorded as a chain of moves (twists, switches and
changes of orthogonal decomposition) together with the hypotheses that were
checked before each move. ``verify_certificate`` replays a chain from scratch,
so the correctness of a result never depends on the search that produced it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from . import lattice as lt
from .lattice import E8_BLOCK, F, SIGMA, ClassVector
from .mukai import (
    Move,
    MovePreconditionError,
    MukaiVector,
    ReBase,
    Switch,
    Twist,
    apply_move,
    is_primitive,
    move_checks,
    move_from_json,
    move_to_json,
    v_square,
)

log = logging.getLogger(__name__)


class ReductionError(ValueError):
    """Input outside the domain of the reduction (bad rank, not primitive, wrong shape)."""


class SearchExhausted(RuntimeError):
    """A bounded search found nothing; ``report`` says what was tried."""

    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


class InvariantViolation(AssertionError):
    """An invariant that the construction guarantees did not hold (a bug)."""


@dataclass(frozen=True)
class ReductionBudget:
    ab: int = 64  # |m|, |n| for hyperbolic twist coefficients
    eta: int = 4  # coordinate bound for -E8 twist components


@dataclass(frozen=True)
class Step:
    move: Move
    result: MukaiVector
    checks: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"move": move_to_json(self.move), "result": self.result.to_json(),
                "checks": list(self.checks)}

    @classmethod
    def from_json(cls, data: dict) -> "Step":
        return cls(move_from_json(data["move"]), MukaiVector.from_json(data["result"]),
                   tuple(data.get("checks", ())))


@dataclass(frozen=True)
class ReductionCertificate:
    initial: MukaiVector
    steps: Tuple[Step, ...]
    final: MukaiVector

    def to_json(self) -> dict:
        return {"initial": self.initial.to_json(),
                "steps": [s.to_json() for s in self.steps],
                "final": self.final.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "ReductionCertificate":
        return cls(MukaiVector.from_json(data["initial"]),
                   tuple(Step.from_json(s) for s in data["steps"]),
                   MukaiVector.from_json(data["final"]))

    @property
    def ranks(self) -> List[int]:
        return [self.initial.r] + [s.result.r for s in self.steps]


class _Chain:
    """Accumulates checked steps starting from a vector."""

    def __init__(self, v: MukaiVector):
        self.initial = v
        self.current = v
        self.steps: List[Step] = []

    def apply(self, move: Move, *extra_checks: str) -> MukaiVector:
        try:
            checks = move_checks(self.current, move)
        except MovePreconditionError as exc:
            raise InvariantViolation(f"move hypothesis failed during construction: {exc}") from exc
        self.current = apply_move(self.current, move)
        self.steps.append(Step(move, self.current, tuple(checks) + extra_checks))
        return self.current

    def extend(self, steps: Sequence[Step]) -> None:
        for st in steps:
            move_checks(self.current, st.move)
            if apply_move(self.current, st.move) != st.result:
                raise InvariantViolation("sub-certificate does not chain")
            self.current = st.result
            self.steps.append(st)

    def certificate(self) -> ReductionCertificate:
        return ReductionCertificate(self.initial, tuple(self.steps), self.current)


# ---------------------------------------------------------------- helpers


def _e8_part(c1: Sequence[int]) -> ClassVector:
    return ClassVector((0, 0, *c1[2:]))


def _in_open_half_window(d: int, r: int) -> bool:
    """0 < |d| < r/2."""
    return d != 0 and 2 * abs(d) < r


def _check_even_primitive(v: MukaiVector) -> None:
    if v.r <= 0:
        raise ReductionError(f"rank must be positive, got r={v.r}")
    if v.r % 2:
        raise ReductionError("odd rank is out of scope")
    if not is_primitive(v):
        raise ReductionError("primitive Mukai vector required")


def _signed_range(bound: int, start: int = 0):
    """start, then +-1, +-2, ... up to bound, negative first at each size."""
    if start == 0:
        yield 0
    for k in range(max(start, 1), bound + 1):
        yield -k
        yield k


# ---------------------------------------------------------------- window


def window_shift(d: int, r: int) -> int:
    """The unique k with d + r*k in (-r/2, r/2]."""
    return (r - 2 * d) // (2 * r)


def normalize_window(v: MukaiVector) -> Tuple[MukaiVector, Twist]:
    """Twist by k*sigma + l*f so both hyperbolic coefficients land in (-r/2, r/2]."""
    if v.r <= 0:
        raise ReductionError("window normalization needs r > 0")
    k = window_shift(v.d1, v.r)
    l = window_shift(v.d2, v.r)
    move = Twist(k * SIGMA + l * F)
    out = apply_move(v, move)
    assert -v.r < 2 * out.d1 <= v.r and -v.r < 2 * out.d2 <= v.r
    return out, move


# ---------------------------------------------------------------- special case


def _special_shape(v: MukaiVector) -> Optional[str]:
    """'f' if c1 = (r/2) b f + xi, 'sigma' for the mirrored shape, else None."""
    r = v.r
    if v.d1 == 0 and 2 * v.d2 in (0, r, -r):
        return "f"
    if v.d2 == 0 and 2 * v.d1 in (r, -r):
        return "sigma"
    return None


def special_case(v: MukaiVector) -> ReductionCertificate:
    """Reduce c1 = (r/2) b f + xi (b in {0, 1, -1}, xi in -E8) to rank 2 or 4.

    The mirrored shape (r/2) a sigma + xi is conjugated by the sigma <-> f swap.
    """
    _check_even_primitive(v)
    chain = _Chain(v)
    if v.r in (2, 4):
        return chain.certificate()
    shape = _special_shape(v)
    if shape is None:
        raise ReductionError("not in special-case form")
    if shape == "sigma":
        chain.apply(ReBase(lt.swap_decomposition()))
    vsq = v_square(v)

    # (1) make xi/l primitive and s > max(<v^2>, 0)
    cur = chain.current
    xi = _e8_part(cur.c1)
    bound = cur.s - max(vsq, 0)
    xi1 = lt.primitive_shift(xi, cur.r, bound)
    cur = chain.apply(Twist(xi1), "xi/l primitive", "s>max(v^2,0)")
    if not cur.s > max(vsq, 0):
        raise InvariantViolation("first twist did not raise s above <v^2>")

    # (2) switch: rank becomes s > <v^2>
    cur = chain.apply(Switch())

    # (3) l = gcd(r, xi) in {1, 2}; restore primitivity of xi/l if needed
    xi = _e8_part(cur.c1)
    l = gcd(cur.r, lt.content(xi))
    if l not in (1, 2):
        raise InvariantViolation(f"gcd(r, xi) = {l}, expected 1 or 2")
    if lt.content(xi) != l:
        xi2 = lt.primitive_shift(xi, cur.r)
        cur = chain.apply(Twist(xi2), "xi/l primitive")
        xi = _e8_part(cur.c1)
        if lt.content(xi) != l:
            raise InvariantViolation("xi/l still not primitive")

    # (4) eta with 2<eta, xi> = s - 2 d2 - eps, eps in {2, 4}
    if cur.d1 != 0:
        raise InvariantViolation("sigma-coefficient should vanish here")
    base = cur.s - 2 * cur.d2
    eps = 2 if (l == 1 or (base - 2) % 4 == 0) else 4
    target = base - eps
    if target % (2 * l):
        raise InvariantViolation(f"linear condition not solvable: {target} mod {2 * l}")
    y = ClassVector(c // l for c in xi)
    eta = lt.solve_pairing(y, target // (2 * l), E8_BLOCK)

    # (5) isotropic twist D = sigma - (eta^2/2) f + eta sets s to eps
    d = SIGMA - (lt.norm(eta) // 2) * F + eta
    if lt.norm(d) != 0:
        raise InvariantViolation("D is not isotropic")
    cur = chain.apply(Twist(d), "D^2=0", f"l={l}")
    if cur.s != eps:
        raise InvariantViolation(f"expected s = {eps}, got {cur.s}")

    # (6) switch down to rank eps
    chain.apply(Switch())
    if shape == "sigma":
        chain.apply(ReBase(lt.swap_decomposition()))
    return chain.certificate()


# ---------------------------------------------------------------- induction step


def induction_step(v: MukaiVector, budget: ReductionBudget = ReductionBudget()) -> Tuple[List[Move], MukaiVector]:
    """Moves ending in a Switch that bring v to a strictly smaller even rank.

    Needs a hyperbolic coefficient with 0 < |d| < r/2. Tried in order:
    twists D = m g (g = f pairs to d1, g = sigma to d2), then D = m g + k e_i,
    accepting the first with 0 < s' < r and r s' > <v^2>; failing that, a
    lift through a large rank (twist by b e_j, switch, twist by m g, switch).
    """
    _check_even_primitive(v)
    r, vsq = v.r, v_square(v)
    dirs = []
    if _in_open_half_window(v.d1, r):
        dirs.append(F)
    if _in_open_half_window(v.d2, r):
        dirs.append(SIGMA)
    if not dirs:
        raise ReductionError("induction step needs 0 < |d_i| < r/2")
    report = {"v": v.to_json(), "budget": {"ab": budget.ab, "eta": budget.eta}, "near_miss": None}
    if budget.ab <= 0:
        raise SearchExhausted("empty search budget", report)

    best = None

    def consider(d: ClassVector):
        nonlocal best
        s2 = v.s - 2 * lt.inner(v.c1, d) - r * lt.norm(d)
        if 0 < s2 < r and r * s2 > vsq:
            return True
        miss = (0 if 0 < s2 < r else min(abs(s2), abs(s2 - r)),
                max(0, vsq - r * s2 + 1))
        if best is None or miss < best[0]:
            best = (miss, list(d), s2)
        return False

    for g in dirs:
        for m in _signed_range(budget.ab, 1):
            d = m * g
            if consider(d):
                return _twist_switch(v, d)
    etas = [k * ei for ei in lt.E for k in _signed_range(budget.eta, 1)]
    for g in dirs:
        for m in _signed_range(budget.ab):
            for eta in etas:
                d = m * g + eta
                if consider(d):
                    return _twist_switch(v, d)

    lifted = _lift_route(v, dirs[0], budget)
    if lifted is not None:
        return lifted
    report["near_miss"] = None if best is None else {"D": best[1], "s_prime": best[2]}
    raise SearchExhausted("induction step: no admissible twist within budget", report)


def _twist_switch(v: MukaiVector, d: ClassVector) -> Tuple[List[Move], MukaiVector]:
    moves: List[Move] = [Twist(d), Switch()]
    w = v
    for mv in moves:
        w = apply_move(w, mv)
    if not 0 < w.r < v.r:
        raise InvariantViolation("induction step did not lower the rank")
    return moves, w


def _lift_route(v: MukaiVector, g: ClassVector, budget: ReductionBudget):
    r, vsq = v.r, v_square(v)
    dg = lt.inner(v.c1, g)
    up = None
    for b in range(1, budget.ab + 1):
        for ej in lt.E:
            s_up = v.s - 2 * b * lt.inner(v.c1, ej) + 2 * r * b * b
            if s_up > max(vsq, 0):
                up = b * ej
                break
        if up is not None:
            break
    if up is None:
        return None
    # after the switch (c1, g) = -dg, so twisting by m g moves s = r by 2 m dg
    j = min((r - 1) // (2 * abs(dg)), budget.ab)
    if j < 1:
        return None
    m = -j if dg > 0 else j
    moves: List[Move] = [Twist(up), Switch(), Twist(m * g), Switch()]
    w = v
    for mv in moves:
        move_checks(w, mv)
        w = apply_move(w, mv)
    if not 0 < w.r < r:
        raise InvariantViolation("lift route did not lower the rank")
    return moves, w


# ---------------------------------------------------------------- driver


def _alternate_root(v: MukaiVector) -> ClassVector:
    """A root alpha with <xi, alpha> != r/2 mod r (e1 when possible)."""
    xi = _e8_part(v.c1)
    half = v.r // 2
    candidates = list(lt.E) + [x for x in lt.e8_roots() if x not in lt.E]
    for alpha in candidates:
        if lt.inner(xi, alpha) % v.r != half:
            return alpha
    raise InvariantViolation("no root separates xi from r/2 mod r")


def reduce_even(v: MukaiVector, budget: ReductionBudget = ReductionBudget()) -> ReductionCertificate:
    """Certified chain taking a primitive even-rank v to rank 2 or 4."""
    _check_even_primitive(v)
    chain = _Chain(v)
    alternate_at: Optional[int] = None
    rank_seen = v.r
    for _ in range(8 * v.r + 16):
        cur = chain.current
        if cur.r in (2, 4):
            break
        if cur.r > rank_seen:
            raise InvariantViolation("rank increased between loop iterations")
        rank_seen = cur.r
        _, tw = normalize_window(cur)
        if any(tw.d):
            cur = chain.apply(tw, "window")
        r = cur.r
        if _in_open_half_window(cur.d1, r) or _in_open_half_window(cur.d2, r):
            moves, _ = induction_step(cur, budget)
            for mv in moves:
                chain.apply(mv)
            if not chain.current.r < r:
                raise InvariantViolation("induction step did not lower the rank")
            log.debug("induction step: rank %d -> %d", r, chain.current.r)
        elif _special_shape(cur) is not None:
            chain.extend(special_case(cur).steps)
        else:
            # (d1, d2) = (r/2, r/2)
            if alternate_at == r:
                raise InvariantViolation("second alternate decomposition at the same rank")
            alternate_at = r
            change = lt.alternate_decomposition(_alternate_root(cur))
            chain.apply(ReBase(change), "d1=d2=r/2")
    else:
        raise InvariantViolation("reduction loop did not terminate")
    cert = chain.certificate()
    report = verify_certificate(cert)
    if not report.ok:
        raise InvariantViolation(f"produced certificate fails verification: {report.message}")
    return cert


# ---------------------------------------------------------------- rank 2


def kim_normalize(v: MukaiVector, budget: ReductionBudget = ReductionBudget()) -> Tuple[Twist, MukaiVector]:
    """Twist a rank-2 vector so that t = -s/2 becomes 0 or 1.

    Searches D = a sigma + b f with a = 0, 1, -1, 2, -2, ...; for fixed a,
    t' = t + a d2 + b (d1 + 2a) is linear in b, so b is solved for directly.
    Some |a| <= |d1|/2 + 1 makes d1 + 2a equal to +-1 or +-2, which always
    reaches {0, 1}.
    """
    if v.r != 2:
        raise ReductionError("rank 2 required")
    t = v.t
    for a in _signed_range_pos_first(budget.ab):
        step = v.d1 + 2 * a
        base = t + a * v.d2
        options = []
        for target in (0, 1):
            if step == 0:
                if base == target:
                    options.append(0)
            elif (target - base) % step == 0:
                options.append((target - base) // step)
        if options:
            b = min(options, key=lambda x: (abs(x), x))
            move = Twist(a * SIGMA + b * F)
            w = apply_move(v, move)
            if w.t not in (0, 1):
                raise InvariantViolation("kim normalization missed {0, 1}")
            return move, w
    raise SearchExhausted("no rank-2 normalizing twist within budget",
                          {"v": v.to_json(), "budget": {"ab": budget.ab}})


def _signed_range_pos_first(bound: int):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    steps_checked: int
    failed_check: Optional[str] = None
    step_index: Optional[int] = None
    message: str = ""
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"ok": self.ok, "steps_checked": self.steps_checked,
                "failed_check": self.failed_check, "step_index": self.step_index,
                "message": self.message}


def verify_certificate(cert: ReductionCertificate, require_final_rank: bool = True) -> VerificationReport:
    """Replay every move with its hypotheses and re-check the chain invariants."""

    def fail(check, i, msg):
        return VerificationReport(False, i, check, i, msg)

    cur = cert.initial
    vsq = v_square(cur)
    prim = is_primitive(cur)
    if not prim:
        return fail("primitivity", None, "initial vector is not primitive")
    for i, step in enumerate(cert.steps):
        try:
            move_checks(cur, step.move)
            nxt = apply_move(cur, step.move)
        except MovePreconditionError as exc:
            return fail(exc.check, i, str(exc))
        except (ValueError, TypeError) as exc:
            return fail("move", i, str(exc))
        if nxt != step.result:
            return fail("replay", i, f"step {i}: recorded {step.result}, replay gives {nxt}")
        if v_square(nxt) != vsq:
            return fail("conservation", i, f"step {i}: <v^2> changed")
        if is_primitive(nxt) != prim:
            return fail("primitivity", i, f"step {i}: primitivity changed")
        cur = nxt
    if cur != cert.final:
        return fail("replay", len(cert.steps), "final vector does not match replay")
    if require_final_rank and cert.initial.r % 2 == 0 and cert.initial.r > 0 and cur.r not in (2, 4):
        return fail("final-rank", len(cert.steps), f"final rank {cur.r} not in {{2, 4}}")
    return VerificationReport(True, len(cert.steps))
