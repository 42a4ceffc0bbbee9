"""Command-line front end: ``mukai <command> [options]``.

Exit codes: 0 success, 1 input or precondition error, 2 search exhaustion,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import intlinalg as il
from . import lattice as lt
from . import mukai as mk
from . import reduction as rd
from . import suite
from . import walls as wl

SCHEMA = 1
COMMANDS = ("reduce", "kim", "walls", "polarize", "pair", "gram", "verify")

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED, EXIT_INVARIANT = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    v: Optional[str] = None
    w: Optional[str] = None
    H: Optional[str] = None
    L1: Optional[str] = None
    FA: Optional[str] = None
    wall_type: Optional[str] = None
    budget_ab: int = 64
    budget_eta: int = 4
    budget_n: int = 16
    budget_q: int = 64
    budget_directions: int = 4
    fmt: str = "json"
    seed: int = 0
    scale: float = 1.0
    properties: list = field(default_factory=list)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        for name in ("budget_ab", "budget_eta", "budget_n", "budget_q", "budget_directions"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.fmt not in ("text", "json"):
            raise ValueError("format must be text or json")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- input parsing


def _load_json(text: Optional[str], what: str):
    """Inline JSON, or the path of a JSON file."""
    if text is None:
        raise InputError(f"--{what} is required")
    stripped = text.strip()
    if stripped[:1] in "[{" or stripped.lstrip("-").isdigit():
        source = stripped
    else:
        path = Path(text)
        if not path.is_file():
            raise InputError(f"--{what}: not JSON and no such file: {text}")
        source = path.read_text(encoding="utf-8")
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise InputError(f"--{what}: invalid JSON ({exc.msg})") from None


def _vector(text, what) -> lt.ClassVector:
    data = _load_json(text, what)
    if not (isinstance(data, list) and len(data) == lt.RANK and all(isinstance(a, int) for a in data)):
        raise InputError(f"--{what} must be a list of {lt.RANK} integers")
    return lt.ClassVector(data)


def _mukai(text, what) -> mk.MukaiVector:
    data = _load_json(text, what)
    try:
        v = mk.MukaiVector.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"--{what} must look like {{\"r\":..,\"c1\":[..],\"s\":..}}: {exc}") from None
    if len(v.c1) != lt.RANK:
        raise InputError(f"--{what}: c1 needs {lt.RANK} coordinates")
    return v


def _spec(text) -> wl.WallSpec:
    if text is None:
        raise InputError("--type r,Delta is required")
    try:
        return wl.WallSpec.parse(text)
    except ValueError as exc:
        raise InputError(f"--type: {exc}") from None


# ---------------------------------------------------------------- commands


def _cmd_reduce(cfg: RunConfig) -> dict:
    v = _mukai(cfg.v, "v")
    budget = rd.ReductionBudget(ab=cfg.budget_ab, eta=cfg.budget_eta)
    cert = rd.reduce_even(v, budget)
    report = rd.verify_certificate(cert)
    if not report.ok:
        raise rd.InvariantViolation(f"certificate failed verification: {report.message}")
    return {"certificate": cert.to_json(), "verification": report.to_json(), "ranks": cert.ranks}


def _cmd_kim(cfg: RunConfig) -> dict:
    v = _mukai(cfg.v, "v")
    move, w = rd.kim_normalize(v, rd.ReductionBudget(ab=cfg.budget_ab, eta=cfg.budget_eta))
    return {"D": list(move.d), "result": w.to_json(), "t": w.t}


def _cmd_walls(cfg: RunConfig) -> dict:
    h = _vector(cfg.H, "H")
    spec = _spec(cfg.wall_type)
    if lt.norm(h) <= 0:
        raise InputError("--H must have positive square")
    found = wl.walls_through(h, spec)
    return {"count": len(found), "witnesses": [list(w.xi) for w in found]}


def _cmd_polarize(cfg: RunConfig) -> dict:
    budget = wl.PolarizationBudget(n=cfg.budget_n, q=cfg.budget_q, directions=cfg.budget_directions)
    p = wl.construct_polarization(_vector(cfg.L1, "L1"), _vector(cfg.FA, "FA"),
                                  _spec(cfg.wall_type), budget)
    return p.to_json()


def _cmd_pair(cfg: RunConfig) -> dict:
    v = _mukai(cfg.v, "v")
    w = _mukai(cfg.w, "w") if cfg.w is not None else v
    return {"pairing": mk.mukai_pairing(v, w), "v_square": mk.v_square(v),
            "primitive": mk.is_primitive(v), "gcd_rcs": mk.gcd_rcs(v)}


def _cmd_gram(cfg: RunConfig) -> dict:
    return {"basis": ["sigma", "f"] + [f"e{i}" for i in range(1, 9)],
            "gram": [list(row) for row in lt.GRAM], "det": il.det(lt.GRAM)}


def _cmd_verify(cfg: RunConfig) -> dict:
    names = cfg.properties or None
    unknown = [n for n in names or () if n not in suite.REGISTRY]
    if unknown:
        raise InputError(f"unknown properties: {', '.join(unknown)}")
    results = suite.run(names, seed=cfg.seed, scale=cfg.scale)
    return {"seed": cfg.seed, "ok": all(r.ok for r in results),
            "properties": [{"name": r.name, "passed": r.passed, "failed": r.failed,
                            "examples": r.examples} for r in results]}


_DISPATCH = {
    "reduce": _cmd_reduce, "kim": _cmd_kim, "walls": _cmd_walls, "polarize": _cmd_polarize,
    "pair": _cmd_pair, "gram": _cmd_gram, "verify": _cmd_verify,
}


def run(cfg: RunConfig):
    """Dispatch one command; returns (exit code, report dict)."""
    base = {"schema": SCHEMA, "command": cfg.command}
    try:
        body = _DISPATCH[cfg.command](cfg)
    except (rd.SearchExhausted, wl.PolarizationExhausted) as exc:
        return EXIT_EXHAUSTED, dict(base, status="exhausted", error=str(exc), report=exc.report)
    except (rd.InvariantViolation, AssertionError) as exc:
        return EXIT_INVARIANT, dict(base, status="invariant_violation", error=str(exc))
    except (ValueError, mk.MovePreconditionError) as exc:
        return EXIT_INPUT, dict(base, status="error", error=str(exc))
    except Exception as exc:  # anything else is a bug
        return EXIT_INVARIANT, dict(base, status="internal_error", error=f"{type(exc).__name__}: {exc}")
    code = EXIT_OK
    if cfg.command == "verify" and not body["ok"]:
        code = EXIT_INVARIANT
    return code, dict(base, status="ok", **body)


# ---------------------------------------------------------------- rendering


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True)
    lines = []
    for key in sorted(report):
        value = report[key]
        if key == "properties":
            for p in value:
                status = "PASS" if p["failed"] == 0 else "FAIL"
                lines.append(f"{status} {p['name']}: {p['passed']} passed, {p['failed']} failed")
        elif isinstance(value, (dict, list)):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


# ---------------------------------------------------------------- argv


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"MUKAI_BUDGET_{name}")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"MUKAI_BUDGET_{name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mukai", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budgets=()):
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="json")
        for b in budgets:
            p.add_argument(f"--budget-{b}", dest=f"budget_{b}", type=int, default=None)
        return p

    p = common(sub.add_parser("reduce", help="certified reduction to rank 2 or 4"), ("ab", "eta"))
    p.add_argument("--v", required=True, help="Mukai vector as inline JSON or a JSON file")
    p = common(sub.add_parser("kim", help="rank-2 twist to t in {0, 1}"), ("ab",))
    p.add_argument("--v", required=True)
    p = common(sub.add_parser("walls", help="walls of a type through H"))
    p.add_argument("--H", required=True)
    p.add_argument("--type", dest="wall_type", required=True, help="r,Delta")
    p = common(sub.add_parser("polarize", help="off-wall H = L0 + n FA"), ("n", "q", "directions"))
    p.add_argument("--L1", required=True)
    p.add_argument("--FA", required=True)
    p.add_argument("--type", dest="wall_type", required=True)
    p = common(sub.add_parser("pair", help="Mukai pairing and invariants"))
    p.add_argument("--v", required=True)
    p.add_argument("--w")
    common(sub.add_parser("gram", help="print the Gram matrix"))
    p = common(sub.add_parser("verify", help="run the invariant suite"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="shrink random sample sizes")
    p.add_argument("properties", nargs="*", help=f"subset of: {', '.join(suite.REGISTRY)}")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kwargs = {k: v for k, v in vars(ns).items() if v is not None}
    defaults = RunConfig.__dataclass_fields__
    for b in ("ab", "eta", "n", "q", "directions"):
        key = f"budget_{b}"
        if key not in kwargs:
            kwargs[key] = _env_int(b.upper(), defaults[key].default)
    return RunConfig(**kwargs)


def main(argv=None) -> int:
    try:
        sys.stdout.reconfigure(encoding="utf-8", line_buffering=True)
    except AttributeError:  # replaced stream, e.g. under capture
        pass
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        report = {"schema": SCHEMA, "command": ns.command, "status": "error", "error": str(exc)}
        print(render(report, getattr(ns, "fmt", "json")))
        return EXIT_INPUT
    code, report = run(cfg)
    try:
        print(render(report, cfg.fmt))
    except BrokenPipeError:  # reader closed early, e.g. `| head`
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


if __name__ == "__main__":
    sys.exit(main())
