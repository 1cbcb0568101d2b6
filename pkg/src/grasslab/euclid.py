"""Exact model of the Euclidean representation attached to θ_1.

Coordinates are indexed by the lines of V in canonical order. A line s maps
to the unit vector e_s and the form is ``<a, b> = [n] (a . b) - (sum a)(sum b)``,
i.e. the Gram matrix ``[n] I - J``. Its kernel is the all-ones direction, so
two coordinate vectors represent the same element exactly when their
difference is constant.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from . import qalg
from .errors import BudgetExceeded, DomainError
from .gflinalg import Subspace, intersect, subspace_sum
from .grassmann import GraphContext, distance
from .orbits import OrbitClass, YPartition, y_partition
from .qmatrix import QMatrix


@dataclass(frozen=True)
class EVector:
    ctx: GraphContext = field(repr=False)
    coords: tuple[Fraction, ...]

    def _same(self, other: "EVector") -> None:
        if self.ctx is not other.ctx and (self.ctx.q, self.ctx.n) != (other.ctx.q, other.ctx.n):
            raise DomainError("vectors come from different contexts")

    def __add__(self, other: "EVector") -> "EVector":
        self._same(other)
        return EVector(self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "EVector") -> "EVector":
        self._same(other)
        return EVector(self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, c) -> "EVector":
        c = Fraction(c)
        return EVector(self.ctx, tuple(c * a for a in self.coords))

    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    def to_json(self) -> list:
        from .qmatrix import render

        return [render(v) for v in self.coords]


def zero(ctx: GraphContext) -> EVector:
    return EVector(ctx, (Fraction(0),) * ctx.num_points)


def ones(ctx: GraphContext) -> EVector:
    return EVector(ctx, (Fraction(1),) * ctx.num_points)


def _from_counts(ctx: GraphContext, counts: Counter) -> EVector:
    return EVector(ctx, tuple(Fraction(counts.get(j, 0)) for j in range(ctx.num_points)))


def hat(ctx: GraphContext, u: Subspace) -> EVector:
    """0/1 incidence vector of the lines inside u."""
    return _from_counts(ctx, Counter(ctx.point_ids(u)))


def vector_sum(ctx: GraphContext, subspaces: Iterable[Subspace]) -> EVector:
    counts: Counter = Counter()
    for u in subspaces:
        counts.update(ctx.point_ids(u))
    return _from_counts(ctx, counts)


def form(a: EVector, b: EVector) -> Fraction:
    a._same(b)
    nb = qalg.bracket(a.ctx.n, a.ctx.q)
    dot = sum((u * v for u, v in zip(a.coords, b.coords) if u and v), Fraction(0))
    return nb * dot - a.total() * b.total()


def e_equal(a: EVector, b: EVector) -> bool:
    a._same(b)
    d = a - b
    return all(v == d.coords[0] for v in d.coords)


_CLASS_LABEL = {
    OrbitClass.B: qalg.BV,
    OrbitClass.C: qalg.CV,
    OrbitClass.A_PLUS: qalg.AP,
    OrbitClass.A_ZERO: qalg.A0,
    OrbitClass.A_MINUS: qalg.AM,
}


def orbit_vector(ctx: GraphContext, part: YPartition, c: OrbitClass) -> EVector:
    return vector_sum(ctx, part.classes.get(c, ()))


def named_vectors(ctx: GraphContext, x: Subspace, y: Subspace,
                  part: Optional[YPartition] = None) -> dict[str, EVector]:
    """Every vector the tables talk about, keyed by the registry labels."""
    part = part or y_partition(ctx, x, y)
    out = {
        qalg.X: hat(ctx, x),
        qalg.Y: hat(ctx, y),
        qalg.XCAP: hat(ctx, intersect(x, y)),
        qalg.XPLUS: hat(ctx, subspace_sum(x, y)),
    }
    for c, label in _CLASS_LABEL.items():
        out[label] = orbit_vector(ctx, part, c)
    return out


def gram_brute(ctx: GraphContext, table: qalg.TableId, x: Subspace, y: Subspace,
               part: Optional[YPartition] = None, vectors: Optional[dict] = None) -> QMatrix:
    """A table of inner products computed from explicit vectors."""
    if table is qalg.TableId.STRUCTURE:
        raise DomainError("STRUCTURE is a neighbor-count table, not a Gram table")
    if not isinstance(table, qalg.TableId):
        raise DomainError(f"unknown table {table!r}")
    i = distance(ctx, x, y)
    if not 1 < i < ctx.k:
        raise DomainError(f"need 1 < d(x,y) < k, got {i}")
    vecs = vectors or named_vectors(ctx, x, y, part)
    rows, cols = qalg.table_labels(table)
    cache: dict = {}

    def ip(a, b):
        key = (a, b) if a <= b else (b, a)
        if key not in cache:
            cache[key] = form(vecs[a], vecs[b])
        return cache[key]

    return QMatrix.of([[ip(r, c) for c in cols] for r in rows])


# ---------------------------------------------------------------------------
# identity verification

class IdentityId(enum.Enum):
    ALIN = "ALIN"
    ALIN2 = "ALIN2"
    XCAP_XPLUS = "XCAP_XPLUS"
    THETA1_LOCAL = "THETA1_LOCAL"
    C_CONDITIONS = "C_CONDITIONS"
    GRAM_RANK = "GRAM_RANK"


@dataclass
class Check:
    name: str
    passed: bool
    residual: object = 0


@dataclass
class IdentityReport:
    identity: IdentityId
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _residual(lhs: EVector, rhs: EVector) -> Fraction:
    d = lhs - rhs
    # zero exactly when d is constant, since [n] I - J is positive semidefinite with kernel 1
    return form(d, d)


def _combination(vecs: dict, labels, coeffs) -> EVector:
    ctx = next(iter(vecs.values())).ctx
    acc = zero(ctx)
    for lab, c in zip(labels, coeffs):
        if c:
            acc = acc + c * vecs[lab]
    return acc


def _transition_checks(ctx, tid: qalg.TransitionId, p: qalg.Params, vecs: dict) -> list[Check]:
    coeffs = qalg.basis_transition(tid, p)
    rows, cols = qalg.table_labels(tid)
    out = []
    for j, target in enumerate(cols):
        rhs = _combination(vecs, rows, coeffs.col(j))
        res = _residual(vecs[target], rhs)
        out.append(Check(f"{tid.value}:{target}", res == 0, res))
    return out


def form_projector_certificate(ctx: GraphContext) -> tuple[bool, int]:
    """Check G @ G == [n] G for the Gram matrix G of the line vectors; return (ok, rank).

    G/[n] is then an orthogonal projector, so rank G = trace G / [n].
    """
    nb = qalg.bracket(ctx.n, ctx.q)
    N = ctx.num_points
    # float64 BLAS is exact while every partial sum of G @ G stays below 2**53
    if N * nb * nb >= 2**53:
        raise BudgetExceeded("Gram matrix too large for an exact float64 product")
    eye = np.eye(N)  # line s is the unit vector e_s
    G = nb * (eye @ eye.T) - np.outer(eye.sum(axis=1), eye.sum(axis=1))
    ok = bool(((G @ G) == nb * G).all())
    tr = int(round(np.trace(G)))
    if tr % nb:
        return False, -1
    return ok, tr // nb


def verify_identity(ctx: GraphContext, ident: IdentityId, x: Subspace, y: Subspace,
                    part: Optional[YPartition] = None, vectors: Optional[dict] = None) -> IdentityReport:
    if not isinstance(ident, IdentityId):
        raise DomainError(f"unknown identity {ident!r}")
    i = distance(ctx, x, y)
    if not 1 < i < ctx.k:
        raise DomainError(f"need 1 < d(x,y) < k, got {i}")
    p = qalg.Params(ctx.q, ctx.n, ctx.k, i)

    if ident is IdentityId.C_CONDITIONS:
        nb = qalg.bracket(ctx.n, ctx.q)
        lines = [Subspace(ctx.q, ctx.n, (v,)) for v in ctx.points[:2]]
        s, t = hat(ctx, lines[0]), hat(ctx, lines[1])
        ok, rk = form_projector_certificate(ctx)
        all_lines = vector_sum(ctx, (Subspace(ctx.q, ctx.n, (v,)) for v in ctx.points))
        return IdentityReport(ident, [
            Check("C_CONDITIONS:rank", ok and rk == nb - 1, rk),
            Check("C_CONDITIONS:norm", form(s, s) == nb - 1, form(s, s)),
            Check("C_CONDITIONS:distinct", form(s, t) == -1, form(s, t)),
            Check("C_CONDITIONS:sum", e_equal(all_lines, zero(ctx)), form(all_lines, all_lines)),
        ])

    part = part or y_partition(ctx, x, y)
    vecs = vectors or named_vectors(ctx, x, y, part)

    if ident is IdentityId.ALIN:
        checks = _transition_checks(ctx, qalg.TransitionId.ALIN, p, vecs)
    elif ident is IdentityId.ALIN2:
        checks = _transition_checks(ctx, qalg.TransitionId.ALIN2, p, vecs)
    elif ident is IdentityId.XCAP_XPLUS:
        checks = _transition_checks(ctx, qalg.TransitionId.XCAP_XPLUS, p, vecs)
    elif ident is IdentityId.THETA1_LOCAL:
        total = vector_sum(ctx, (z for _, z in part.members()))
        theta = qalg.eigenvalue_theta(p.with_i(1))
        res = _residual(total, theta * vecs[qalg.X])
        checks = [Check("THETA1_LOCAL", res == 0, res)]
    else:  # GRAM_RANK
        checks = []
        for tid in (qalg.TableId.GEOM_GRAM, qalg.TableId.COMB_GRAM):
            det = gram_brute(ctx, tid, x, y, vectors=vecs).det()
            checks.append(Check(f"GRAM_RANK:{tid.value}", det != 0, det))
    return IdentityReport(ident, checks)
