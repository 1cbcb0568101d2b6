"""Spectral checks: the 5x5 structure matrix and the local graph Γ(x).

The local graph's eigenvalues are known in advance, so its spectrum is
certified by an annihilating polynomial and the multiplicities come out of
traces of A^m by a 5x5 Vandermonde solve. No eigensolver is involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import qalg
from .gflinalg import Subspace
from .grassmann import GraphContext, local_neighbors
from .qmatrix import QMatrix, poly_from_roots, render

LOCAL_BUDGET = 1500
_EXACT_FLOAT = 2**53


@dataclass
class SpectrumReport:
    eigenvalues: list[int]
    multiplicities: list[int]
    checks: dict = field(default_factory=dict)  # name -> (passed, residual)
    declined: Optional[str] = None

    @property
    def passed(self) -> bool:
        if self.declined:
            return False
        ok = all(p for p, _ in self.checks.values())
        ok = ok and all(m > 0 for m in self.multiplicities)
        return ok

    def to_json(self) -> dict:
        return {
            "eigenvalues": [render(v) for v in self.eigenvalues],
            "multiplicities": [render(v) for v in self.multiplicities],
            "checks": {k: {"passed": p, "residual": render(r) if isinstance(r, (int, Fraction)) else r}
                       for k, (p, r) in sorted(self.checks.items())},
            "declined": self.declined,
        }


def verify_structure_eigen(p: qalg.Params) -> SpectrumReport:
    qalg._need_i(p)
    M = qalg.closed_table(qalg.TableId.STRUCTURE, p)
    ev = list(qalg.structure_eigenvalues(p))
    checks = {}

    cp = M.charpoly()
    want = poly_from_roots(ev)
    diff = [a - b for a, b in zip(cp, want)]
    checks["charpoly_splits"] = (cp == want, max(abs(d) for d in diff))

    for j, (lam, row, col) in enumerate(qalg.eigen_data(p)):
        r = row @ M - row.scale(lam)
        c = M @ col - col.scale(lam)
        rr = max(abs(v) for v in r.rows[0])
        cr = max(abs(v[0]) for v in c.rows)
        nonzero = any(row.rows[0]) and any(v[0] for v in col.rows)
        checks[f"row_vector_{j}"] = (rr == 0 and nonzero, rr)
        checks[f"column_vector_{j}"] = (cr == 0 and nonzero, cr)

    # class sizes weight the counts symmetrically: |O_a| M_ab = |O_b| M_ba
    D = QMatrix.diag(qalg.class_sizes(p))
    T = D @ M - M.T @ D
    tr = max(abs(v) for r in T.rows for v in r)
    checks["transpose_relation"] = (tr == 0, tr)

    mult = [sum(1 for r in ev if r == lam) for lam in ev]
    return SpectrumReport(ev, mult, checks)


def local_adjacency(ctx: GraphContext, x: Subspace, neighbors=None) -> np.ndarray:
    """0/1 adjacency matrix of Γ(x) in canonical vertex order, as float64."""
    verts = local_neighbors(ctx, x) if neighbors is None else neighbors
    inc = ctx.incidence(verts)
    A = (inc @ inc.T == qalg.bracket(ctx.k - 1, ctx.q)).astype(np.float64)
    np.fill_diagonal(A, 0)
    return A


def _annihilator_residual(A: np.ndarray, eigenvalues, strategy: str) -> int:
    """max |entry| of prod (A - lam I); exact in float64 under the bound, else in Python ints."""
    N = A.shape[0]
    rowsum = int(A.sum(axis=1).max()) if N else 0
    bound = 1
    for lam in eigenvalues:
        bound *= rowsum + abs(lam)
    if bound >= _EXACT_FLOAT:
        A = A.astype(np.int64).astype(object)
        eye = np.eye(N, dtype=np.int64).astype(object)
    else:
        eye = np.eye(N)

    def factor(lam):
        return A - lam * eye

    if strategy == "full":
        P = eye.copy()
        for lam in eigenvalues:
            P = P @ factor(lam)
        return int(abs(P).max()) if N else 0
    if strategy == "blocked":
        worst = 0
        for s in range(0, N, 128):
            X = eye[:, s:s + 128].copy()
            for lam in eigenvalues:
                X = A @ X - lam * X
            worst = max(worst, int(abs(X).max()))
        return worst
    raise ValueError(f"unknown strategy {strategy!r}")


def verify_local_spectrum(ctx: GraphContext, x: Subspace, budget: int = LOCAL_BUDGET,
                          strategy: str = "full") -> SpectrumReport:
    p = ctx.params
    closed = qalg.local_spectrum_closed(p)
    ev = [lam for lam, _ in closed]
    N = qalg.valency(p)
    if N > budget:
        return SpectrumReport(ev, [], {}, declined=f"valency {N} exceeds budget {budget}")

    A = local_adjacency(ctx, x)
    checks = {}
    checks["order"] = (A.shape[0] == N, A.shape[0] - N)
    checks["symmetric"] = (bool((A == A.T).all()), int(abs(A - A.T).max()))
    degree = A.sum(axis=1)
    a1 = qalg.local_a1(p)
    checks["regular"] = (bool((degree == a1).all()), int(abs(degree - a1).max()))

    res = _annihilator_residual(A, ev, strategy)
    checks["annihilator"] = (res == 0, res)

    # traces of A^0..A^4; entries of A^2 are at most N, so float64 stays exact
    A2 = A @ A
    traces = [N, int(np.trace(A)), int(np.trace(A2)), int((A2 * A).sum()), int((A2 * A2).sum())]
    V = QMatrix.of([[Fraction(lam) ** m for lam in ev] for m in range(5)])
    mult = list(V.solve(traces))
    integral = all(m.denominator == 1 and m >= 0 for m in mult)
    checks["multiplicities_integral"] = (integral, 0 if integral else 1)
    mult = [int(m) if m.denominator == 1 else m for m in mult]
    want = [m for _, m in closed]
    gap = max(abs(a - b) for a, b in zip(mult, want))
    checks["multiplicities_closed_form"] = (gap == 0, gap)
    checks["multiplicity_total"] = (sum(mult) == N, sum(mult) - N)

    # the quotient eigenvalues do not depend on i and must all show up here
    missing = set(qalg.structure_eigenvalues(p.with_i(2))) - set(ev)
    checks["quotient_subset"] = (not missing, len(missing))
    return SpectrumReport(ev, mult, checks)
