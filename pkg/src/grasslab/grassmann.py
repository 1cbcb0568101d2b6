"""The Grassmann graph J_q(n, k) seen locally around a vertex.

Nothing here materializes the full vertex set unless asked to (and only under
a size budget); the local graph and distances to a second vertex are all the
verification needs.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import qalg
from .errors import BudgetExceeded, DomainError
from .field import FieldSpec, as_field
from .gflinalg import (
    Subspace,
    Vector,
    apply_map,
    combine,
    complement_basis,
    dim_intersection,
    enumerate_subspaces,
    point_vectors,
    random_invertible,
    rref,
    rref_rows,
    standard,
)

VERTEX_BUDGET = 20_000


@dataclass(frozen=True)
class GraphContext:
    spec: FieldSpec
    n: int
    k: int
    points: tuple[Vector, ...] = field(repr=False, compare=False)
    point_index: dict = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def params(self) -> qalg.Params:
        return qalg.Params(self.q, self.n, self.k)

    @property
    def num_points(self) -> int:
        return len(self.points)

    def point_ids(self, u: Subspace) -> list[int]:
        """Indices (canonical P_1 order) of the lines contained in u."""
        idx = self.point_index
        return sorted(idx[v] for v in point_vectors(u))

    def point_mask(self, u: Subspace) -> int:
        m = 0
        for j in self.point_ids(u):
            m |= 1 << j
        return m

    def incidence(self, subspaces: Sequence[Subspace], dtype=np.float32) -> np.ndarray:
        """0/1 matrix with one row per subspace and one column per point."""
        out = np.zeros((len(subspaces), self.num_points), dtype=dtype)
        for r, u in enumerate(subspaces):
            out[r, self.point_ids(u)] = 1
        return out


def make_context(q, n: int, k: int) -> GraphContext:
    spec = as_field(q)
    qalg.Params(spec.q, n, k)  # validates n > 2k >= 6
    lines = enumerate_subspaces(spec, n, 1)
    points = tuple(u.rows[0] for u in lines)
    if len(points) != qalg.bracket(n, spec.q):
        raise AssertionError("line enumeration does not match [n]")
    return GraphContext(spec, n, k, points, {v: j for j, v in enumerate(points)})


def _check_vertex(ctx: GraphContext, u: Subspace) -> None:
    if u.dim != ctx.k or u.n != ctx.n or u.q != ctx.q:
        raise DomainError(f"{u} is not a vertex of J_{ctx.q}({ctx.n},{ctx.k})")


def distance(ctx: GraphContext, x: Subspace, y: Subspace) -> int:
    _check_vertex(ctx, x)
    _check_vertex(ctx, y)
    return ctx.k - dim_intersection(x, y)


def hyperplanes(ctx: GraphContext, x: Subspace) -> list[tuple[Subspace, Vector]]:
    """Each hyperplane H of x with a vector of x outside H.

    H runs over kernels of the [k] nonzero functionals on x taken up to scalar.
    """
    F = ctx.spec
    k = x.dim
    out = []
    for lead in range(k):
        for tail in itertools.product(range(F.q), repeat=k - lead - 1):
            c = (0,) * lead + (1,) + tail
            # kernel of a -> sum a_j c_j: e_j for j < lead, and e_j - c_j e_lead for j > lead
            ker = []
            for j in range(k):
                if j == lead:
                    continue
                a = [0] * k
                a[j] = 1
                if j > lead:
                    a[lead] = F.neg[c[j]]
                ker.append(combine(F, a, x.rows, x.n))
            out.append((rref(ker, F, x.n), x.rows[lead]))
    return out


def local_neighbors(ctx: GraphContext, x: Subspace) -> list[Subspace]:
    """Γ(x) in canonical order, generated as H + <w + t r> without a global scan.

    w runs over normalized vectors of the coordinate complement of x and
    t over the field, which hits every neighbor through H exactly once.
    """
    _check_vertex(ctx, x)
    F = ctx.spec
    comp = Subspace(F.q, ctx.n, tuple(complement_basis(x)))
    ws = list(point_vectors(comp))
    out = []
    for H, r in hyperplanes(ctx, x):
        for w in ws:
            for t in range(F.q):
                v = tuple(F.add[a][F.mul[t][b]] for a, b in zip(w, r))
                out.append(Subspace(F.q, ctx.n, rref_rows(F, H.rows + (v,), ctx.n)))
    out.sort(key=Subspace.sort_key)
    return out


def brute_intersection_numbers(ctx: GraphContext, x: Subspace, y: Subspace,
                               neighbors: Sequence[Subspace] | None = None) -> tuple[int, int, int]:
    """Count z in Γ(x) by distance to y: (further, closer, same)."""
    i = distance(ctx, x, y)
    nb = local_neighbors(ctx, x) if neighbors is None else neighbors
    b = c = a = 0
    for z in nb:
        d = ctx.k - dim_intersection(z, y)
        if d == i + 1:
            b += 1
        elif d == i - 1:
            c += 1
        elif d == i:
            a += 1
        else:
            raise AssertionError("neighbor of x at distance outside i-1..i+1 from y")
    return b, c, a


def choose_pair(ctx: GraphContext, i: int, seed: int = 0) -> tuple[Subspace, Subspace]:
    """A pair at distance i; seed 0 gives the coordinate fixture, other seeds a GL(V) image of it."""
    if not 1 < i < ctx.k:
        raise DomainError(f"need 1 < i < k, got i={i}, k={ctx.k}")
    k = ctx.k
    x = standard(ctx.spec, ctx.n, range(k))
    y = standard(ctx.spec, ctx.n, list(range(k - i)) + list(range(k, k + i)))
    if seed:
        sigma = random_invertible(ctx.spec, ctx.n, seed)
        x, y = apply_map(sigma, x), apply_map(sigma, y)
    assert distance(ctx, x, y) == i
    return x, y


def random_vertex(ctx: GraphContext, rng: random.Random) -> Subspace:
    sigma = random_invertible(ctx.spec, ctx.n, rng.getrandbits(64))
    return apply_map(sigma, standard(ctx.spec, ctx.n, range(ctx.k)))


# ---------------------------------------------------------------------------
# whole-graph helpers for small instances

def all_vertices(ctx: GraphContext, budget: int = VERTEX_BUDGET) -> list[Subspace]:
    total = qalg.gauss_binom(ctx.n, ctx.k, ctx.q)
    if total > budget:
        raise BudgetExceeded(f"J_{ctx.q}({ctx.n},{ctx.k}) has {total} vertices, budget is {budget}")
    return list(enumerate_subspaces(ctx.spec, ctx.n, ctx.k))


def adjacency_lists(ctx: GraphContext, vertices: Sequence[Subspace], block: int = 2048) -> list[np.ndarray]:
    """Neighbor index arrays, from |Ω(u) ∩ Ω(v)| = [k-1] computed by blocked products.

    The products are over 0/1 matrices with at most [n] terms per entry, so the
    float32 results are exact integers.
    """
    if ctx.num_points >= 2**24:
        raise BudgetExceeded("point count too large for exact float32 accumulation")
    inc = ctx.incidence(vertices)
    target = qalg.bracket(ctx.k - 1, ctx.q)
    out = []
    for s in range(0, len(vertices), block):
        g = inc[s:s + block] @ inc.T
        for row in g:
            out.append(np.flatnonzero(row == target))
    return out


def bfs_distances(adj: Sequence[np.ndarray], source: int) -> np.ndarray:
    dist = np.full(len(adj), -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist
