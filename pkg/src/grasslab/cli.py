"""Command line harness: ``grasslab partition | verify | witness``.

Exit codes: 0 every check passed, 1 some check failed, 2 domain or class
error, 64 bad usage or unparsable input.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import qalg
from .errors import BudgetExceeded, ClassMismatchError, DomainError, ParseError
from .euclid import IdentityId, gram_brute, named_vectors, verify_identity
from .gflinalg import parse_subspace
from .grassmann import (
    VERTEX_BUDGET,
    adjacency_lists,
    all_vertices,
    bfs_distances,
    brute_intersection_numbers,
    choose_pair,
    distance,
    make_context,
)
from .orbits import ORDER, classify, structure_matrix_brute, witness_pair, y_partition
from .qmatrix import QMatrix, render
from .spectra import LOCAL_BUDGET, verify_local_spectrum, verify_structure_eigen

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 64
SKIPPABLE = ("local-spectrum", "witnesses", "distance-bfs")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(v):
    if isinstance(v, QMatrix):
        return v.to_json()
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return render(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skipped
    expected: object = None
    actual: object = None
    detail: Optional[str] = None
    seconds: float = 0.0

    def to_json(self, timing: bool) -> dict:
        out = {"name": self.name, "status": self.status,
               "expected": _jsonable(self.expected), "actual": _jsonable(self.actual)}
        if self.detail:
            out["detail"] = self.detail
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _cmp(name, expected, actual) -> CheckResult:
    return CheckResult(name, "pass" if expected == actual else "fail", expected, actual)


@dataclass
class RunConfig:
    q: int
    n: int
    k: int
    i: int
    seed: int = 0
    fmt: str = "json"
    skip: tuple = ()
    witness_samples: int = 25
    threads: int = 1
    vertex_budget: int = VERTEX_BUDGET
    local_budget: int = LOCAL_BUDGET
    timing: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def params(self) -> qalg.Params:
        return qalg.Params(self.q, self.n, self.k, self.i)

    def header(self) -> dict:
        return {"q": self.q, "n": self.n, "k": self.k, "i": self.i, "seed": self.seed}


# ---------------------------------------------------------------------------
# the verification suite

class _Fixture:
    """Everything shared by the checks, built once before they fan out."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.p = cfg.params
        self.ctx = make_context(cfg.q, cfg.n, cfg.k)
        self.x, self.y = choose_pair(self.ctx, cfg.i, cfg.seed)
        self.part = y_partition(self.ctx, self.x, self.y)
        self.vecs = named_vectors(self.ctx, self.x, self.y, self.part)


def _check_orbit_sizes(fx: _Fixture):
    return [_cmp("orbit_sizes", list(qalg.class_sizes(fx.p)), list(fx.part.sizes()))]


def _check_intersection_numbers(fx: _Fixture):
    nb = [z for _, z in fx.part.members()]
    return [_cmp("intersection_numbers", list(qalg.intersection_numbers(fx.p)),
                 list(brute_intersection_numbers(fx.ctx, fx.x, fx.y, nb)))]


def _check_structure(fx: _Fixture):
    rows, equitable = structure_matrix_brute(fx.ctx, fx.part)
    closed = qalg.closed_table(qalg.TableId.STRUCTURE, fx.p)
    return [
        CheckResult("equitable", "pass" if equitable else "fail", True, equitable),
        _cmp("table:STRUCTURE", closed, QMatrix.of(rows)),
    ]


def _check_gram(tid):
    def run(fx: _Fixture):
        return [_cmp(f"table:{tid.value}", qalg.closed_table(tid, fx.p),
                     gram_brute(fx.ctx, tid, fx.x, fx.y, vectors=fx.vecs))]
    return run


def _check_identity(ident):
    def run(fx: _Fixture):
        rep = verify_identity(fx.ctx, ident, fx.x, fx.y, fx.part, fx.vecs)
        return [CheckResult(f"identity:{c.name}", "pass" if c.passed else "fail", 0, c.residual)
                for c in rep.checks]
    return run


def _check_gram_inverse(fx: _Fixture):
    G = qalg.closed_table(qalg.TableId.GEOM_GRAM, fx.p)
    prod = G @ qalg.geometric_gram_inverse(fx.p)
    return [_cmp("geometric_gram_inverse", QMatrix.identity(4), prod)]


def _check_eigen(fx: _Fixture):
    rep = verify_structure_eigen(fx.p)
    return [CheckResult(f"eigen:{name}", "pass" if ok else "fail", 0, res)
            for name, (ok, res) in rep.checks.items()]


def _check_local_spectrum(fx: _Fixture):
    name = "local_spectrum"
    if "local-spectrum" in fx.cfg.skip:
        return [CheckResult(name, "skipped", detail="skipped on request")]
    rep = verify_local_spectrum(fx.ctx, fx.x, budget=fx.cfg.local_budget)
    if rep.declined:
        return [CheckResult(name, "skipped", detail=rep.declined)]
    out = [CheckResult(f"{name}:{k}", "pass" if ok else "fail", 0, res) for k, (ok, res) in rep.checks.items()]
    out.append(_cmp(f"{name}:spectrum", qalg.local_spectrum_closed(fx.p),
                    list(zip(rep.eigenvalues, rep.multiplicities))))
    return out


def _check_distance_bfs(fx: _Fixture):
    name = "distance_bfs"
    if "distance-bfs" in fx.cfg.skip:
        return [CheckResult(name, "skipped", detail="skipped on request")]
    try:
        verts = all_vertices(fx.ctx, fx.cfg.vertex_budget)
    except BudgetExceeded as exc:
        return [CheckResult(name, "skipped", detail=str(exc))]
    adj = adjacency_lists(fx.ctx, verts)
    rng = random.Random(fx.cfg.seed)
    sources = sorted(rng.sample(range(len(verts)), min(3, len(verts))))
    bad = 0
    for s in sources:
        d = bfs_distances(adj, s)
        bad += sum(1 for j, v in enumerate(verts) if d[j] != distance(fx.ctx, verts[s], v))
    return [CheckResult(name, "pass" if bad == 0 else "fail", 0, bad,
                        detail=f"{len(verts)} vertices, {len(sources)} sources")]


def _check_witnesses(fx: _Fixture):
    if "witnesses" in fx.cfg.skip:
        return [CheckResult("witnesses", "skipped", detail="skipped on request")]
    rng = random.Random(fx.cfg.seed)
    N = fx.cfg.witness_samples
    out = []
    for c in ORDER:
        members = fx.part.classes[c]
        ok = 0
        for _ in range(N):
            z, z2 = rng.choice(members), rng.choice(members)
            witness_pair(fx.ctx, fx.x, fx.y, z, z2)  # raises unless verified
            ok += 1
        out.append(_cmp(f"witness:{c.value}", N, ok))
    pool = fx.part.members()
    refused = tried = 0
    while tried < N:
        (c1, z), (c2, z2) = rng.choice(pool), rng.choice(pool)
        if c1 == c2:
            continue
        tried += 1
        try:
            witness_pair(fx.ctx, fx.x, fx.y, z, z2)
        except ClassMismatchError:
            refused += 1
    out.append(_cmp("witness:cross_class_refused", N, refused))
    return out


def suite() -> list[tuple[str, Callable]]:
    jobs = [
        ("orbit_sizes", _check_orbit_sizes),
        ("intersection_numbers", _check_intersection_numbers),
        ("structure", _check_structure),
        ("gram_inverse", _check_gram_inverse),
        ("eigen", _check_eigen),
        ("local_spectrum", _check_local_spectrum),
        ("distance_bfs", _check_distance_bfs),
        ("witnesses", _check_witnesses),
    ]
    jobs += [(f"table:{t.value}", _check_gram(t)) for t in qalg.TableId if t is not qalg.TableId.STRUCTURE]
    jobs += [(f"identity:{d.value}", _check_identity(d)) for d in IdentityId]
    return jobs


def _run_job(fx, name, fn) -> list[CheckResult]:
    t0 = time.perf_counter()
    try:
        res = fn(fx)
    except Exception as exc:  # a crashing check is a failed check, named
        res = [CheckResult(name, "fail", detail=f"{type(exc).__name__}: {exc}")]
    dt = time.perf_counter() - t0
    for r in res:
        r.seconds = dt
    return res


def run_verify(cfg: RunConfig) -> dict:
    fx = _Fixture(cfg)
    jobs = suite()
    with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as pool:
        futures = [pool.submit(_run_job, fx, name, fn) for name, fn in jobs]
        results = [r for f in futures for r in f.result()]
    results.sort(key=lambda r: r.name)
    failed = [r.name for r in results if r.status == "fail"]
    return {
        "schema": SCHEMA,
        "command": "verify",
        "config": cfg.header(),
        "x": fx.x.to_text(),
        "y": fx.y.to_text(),
        "status": "fail" if failed else "pass",
        "failed": failed,
        "checks": [r.to_json(cfg.timing) for r in results],
    }


def run_partition(cfg: RunConfig) -> dict:
    ctx = make_context(cfg.q, cfg.n, cfg.k)
    x, y = choose_pair(ctx, cfg.i, cfg.seed)
    part = y_partition(ctx, x, y)
    want = dict(zip((c.value for c in ORDER), qalg.class_sizes(cfg.params)))
    got = dict(zip((c.value for c in ORDER), part.sizes()))
    return {
        "schema": SCHEMA,
        "command": "partition",
        "config": cfg.header(),
        "status": "pass" if want == got else "fail",
        "expected_sizes": want,
        "sizes": got,
        "partition": part.to_dict(),
    }


def run_witness(cfg: RunConfig, z_text: str, z2_text: str) -> dict:
    z, z2 = parse_subspace(z_text), parse_subspace(z2_text)
    ctx = make_context(cfg.q, cfg.n, cfg.k)
    x, y = choose_pair(ctx, cfg.i, cfg.seed)
    c1, c2 = classify(ctx, x, y, z), classify(ctx, x, y, z2)
    sigma = witness_pair(ctx, x, y, z, z2)
    return {
        "schema": SCHEMA,
        "command": "witness",
        "config": cfg.header(),
        "status": "pass",
        "x": x.to_text(),
        "y": y.to_text(),
        "z": z.to_text(),
        "z2": z2.to_text(),
        "class": c1.value,
        "class2": c2.value,
        "matrix": sigma.to_text(),
        "checks": {"fixes_x": True, "fixes_y": True, "maps_z": True, "invertible": True},
    }


# ---------------------------------------------------------------------------
# rendering and argument handling

def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    lines = [f"# grasslab {report['command']}", ""]
    cfg = report["config"]
    lines.append("q={q} n={n} k={k} i={i} seed={seed}".format(**cfg))
    lines.append("")
    lines.append(f"**status: {report['status']}**")
    lines.append("")
    if report["command"] == "verify":
        lines += ["| check | status | detail |", "|---|---|---|"]
        for c in report["checks"]:
            detail = c.get("detail") or ("" if c["status"] == "pass" else f"expected {c['expected']}, got {c['actual']}")
            lines.append(f"| {c['name']} | {c['status']} | {detail} |")
    elif report["command"] == "partition":
        lines += ["| class | size | expected |", "|---|---|---|"]
        for name, size in report["sizes"].items():
            lines.append(f"| {name} | {size} | {report['expected_sizes'][name]} |")
    else:
        lines.append(f"class {report['class']}; sigma (rows):")
        lines.append("")
        lines += ["    " + r for r in report["matrix"]]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grasslab", description="Exact checks on the y-partition of a Grassmann local graph.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        sp.add_argument("--i", type=int, required=True)
        sp.add_argument("--seed", type=int, default=0, help="0 = coordinate fixture pair")
        sp.add_argument("--format", choices=("json", "markdown"), default="json")
        sp.add_argument("--output", help="write the report here instead of stdout")

    sp = sub.add_parser("partition", help="class sizes and serialized y-partition")
    common(sp)

    sp = sub.add_parser("verify", help="run the full exact suite")
    common(sp)
    sp.add_argument("--skip", action="append", default=[], choices=SKIPPABLE)
    sp.add_argument("--witness-samples", type=int, default=25)
    sp.add_argument("--threads", type=int, default=None, help="default: $GRASSLAB_THREADS or CPU count")
    sp.add_argument("--vertex-budget", type=int, default=VERTEX_BUDGET)
    sp.add_argument("--local-budget", type=int, default=LOCAL_BUDGET)
    sp.add_argument("--timing", action="store_true", help="include per-check wall time (breaks byte-identity)")

    sp = sub.add_parser("witness", help="stabilizer element mapping Z to Z2")
    common(sp)
    sp.add_argument("z")
    sp.add_argument("z2")
    return parser


def _threads(arg: Optional[int]) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("GRASSLAB_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"GRASSLAB_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def parse_config(argv) -> tuple[RunConfig, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    try:
        qalg.Params(args.q, args.n, args.k, args.i)
    except DomainError as exc:
        raise UsageError(str(exc))
    if not 1 < args.i < args.k:
        raise UsageError(f"--i must satisfy 1 < i < k, got i={args.i}, k={args.k}")
    cfg = RunConfig(args.q, args.n, args.k, args.i, seed=args.seed, fmt=args.format)
    if args.command == "verify":
        cfg.skip = tuple(sorted(set(args.skip)))
        cfg.witness_samples = args.witness_samples
        cfg.threads = _threads(args.threads)
        cfg.vertex_budget = args.vertex_budget
        cfg.local_budget = args.local_budget
        cfg.timing = args.timing
        for name in ("witness_samples", "threads", "vertex_budget", "local_budget"):
            if getattr(cfg, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return cfg, args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg, args = parse_config(argv)
        if args.command == "partition":
            report = run_partition(cfg)
        elif args.command == "verify":
            report = run_verify(cfg)
        else:
            report = run_witness(cfg, args.z, args.z2)
    except (UsageError, ParseError) as exc:
        print(f"grasslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClassMismatchError as exc:
        print(f"grasslab: class mismatch: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DomainError as exc:
        print(f"grasslab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    text = render_report(report, cfg.fmt) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report["status"] != "pass":
        failed = report.get("failed")
        if failed:
            print("grasslab: failed checks: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS
