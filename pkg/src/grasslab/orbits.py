"""The y-partition of the local graph Γ(x) and stabilizer witnesses.

For x, y at distance i with 1 < i < k, the neighbors z of x fall into five
classes: B (z moves away from y), C (z moves closer), and three classes at
the same distance split by how z sits against x + y and x ∩ y. Each class is
a single orbit of the stabilizer of x and y; :func:`witness_pair` produces an
explicit group element for any two members of one class.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import qalg
from .errors import ClassMismatchError, DomainError, WitnessError
from .field import FieldSpec
from .gflinalg import (
    LinearMap,
    Subspace,
    Vector,
    apply_map,
    contains_vector,
    dim_intersection,
    extend_basis,
    full_space,
    intersect,
    map_from_bases,
    point_vectors,
    rref_rows,
    subspace_sum,
)
from .grassmann import GraphContext, distance, local_neighbors


class OrbitClass(enum.Enum):
    B = "B"
    C = "C"
    A_PLUS = "A+"
    A_ZERO = "A0"
    A_MINUS = "A-"


ORDER = tuple(OrbitClass)


def _check_pair(ctx: GraphContext, x: Subspace, y: Subspace) -> int:
    i = distance(ctx, x, y)
    if not 1 < i < ctx.k:
        raise DomainError(f"need 1 < d(x,y) < k, got {i}")
    return i


def classify(ctx: GraphContext, x: Subspace, y: Subspace, z: Subspace) -> OrbitClass:
    i = _check_pair(ctx, x, y)
    k = ctx.k
    if distance(ctx, x, z) != 1:
        raise DomainError(f"{z} is not adjacent to x")
    d = k - dim_intersection(z, y)
    if d == i + 1:
        return OrbitClass.B
    if d == i - 1:
        return OrbitClass.C
    grows = subspace_sum(subspace_sum(z, x), y).dim > k + i
    shrinks = dim_intersection(z, intersect(x, y)) < k - i
    if grows and shrinks:
        raise AssertionError("z both leaves x + y and cuts x ∩ y; impossible for a neighbor of x")
    if grows:
        return OrbitClass.A_PLUS
    if shrinks:
        return OrbitClass.A_MINUS
    return OrbitClass.A_ZERO


@dataclass(frozen=True)
class YPartition:
    x: Subspace
    y: Subspace
    i: int
    classes: dict  # OrbitClass -> tuple[Subspace, ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.classes[c]) for c in ORDER)

    def members(self) -> list[tuple[OrbitClass, Subspace]]:
        return [(c, z) for c in ORDER for z in self.classes[c]]

    def to_dict(self) -> dict:
        return {
            "x": self.x.to_text(),
            "y": self.y.to_text(),
            "i": self.i,
            "classes": {
                c.value: {"count": len(self.classes[c]), "members": [z.to_text() for z in self.classes[c]]}
                for c in ORDER
            },
        }


def y_partition(ctx: GraphContext, x: Subspace, y: Subspace) -> YPartition:
    i = _check_pair(ctx, x, y)
    buckets = {c: [] for c in ORDER}
    for z in local_neighbors(ctx, x):
        buckets[classify(ctx, x, y, z)].append(z)
    return YPartition(x, y, i, {c: tuple(v) for c, v in buckets.items()})


def neighbor_profile(ctx: GraphContext, part: YPartition, block: int = 2048) -> tuple[list[OrbitClass], np.ndarray]:
    """Per-vertex counts of neighbors inside Γ(x), split by class.

    Adjacency between members comes from |Ω(z) ∩ Ω(w)| = [k-1]; the blocked
    float32 products only ever hold small integers and stay exact.
    """
    labels = [c for c, _ in part.members()]
    verts = [z for _, z in part.members()]
    inc = ctx.incidence(verts)
    onehot = np.zeros((len(verts), len(ORDER)), dtype=np.float32)
    for r, c in enumerate(labels):
        onehot[r, ORDER.index(c)] = 1
    target = qalg.bracket(ctx.k - 1, ctx.q)
    counts = np.zeros((len(verts), len(ORDER)), dtype=np.int64)
    for s in range(0, len(verts), block):
        adj = (inc[s:s + block] @ inc.T == target).astype(np.float32)
        counts[s:s + block] = np.rint(adj @ onehot).astype(np.int64)
    return labels, counts


def structure_matrix_brute(ctx: GraphContext, part: YPartition) -> tuple[tuple[tuple[int, ...], ...], bool]:
    """The class-to-class neighbor count table and whether it is well defined.

    Row O lists, for a vertex of class O, how many of its neighbors in Γ(x)
    lie in each class. ``equitable`` is False when the count vector varies
    inside some class; the returned row is then that of the first member.
    Empty classes get a zero row.
    """
    labels, counts = neighbor_profile(ctx, part)
    equitable = True
    rows = []
    for c in ORDER:
        sel = counts[[r for r, lab in enumerate(labels) if lab == c]]
        if len(sel) == 0:
            rows.append((0,) * len(ORDER))
            continue
        if not (sel == sel[0]).all():
            equitable = False
        rows.append(tuple(int(v) for v in sel[0]))
    return tuple(rows), equitable


# ---------------------------------------------------------------------------
# witnesses

def _stage_subsets(m: int) -> list[tuple[int, ...]]:
    import itertools

    out = []
    for size in range(m, 0, -1):
        out.extend(itertools.combinations(range(m), size))
    return out


def adapted_blocks(F: FieldSpec, n: int, subspaces: Sequence[Subspace]) -> list[list[Vector]]:
    """A basis of V split into blocks, each intersection of the inputs spanned by some blocks.

    Stages run over the intersections of subsets of the inputs, largest
    subsets first, each extending the blocks already placed inside it. This
    only succeeds when the inputs generate a distributive lattice; otherwise
    the blocks collected for a stage turn out dependent and DomainError is
    raised.
    """
    m = len(subspaces)
    stages = _stage_subsets(m)
    blocks: dict[tuple[int, ...], list[Vector]] = {}
    for S in stages:
        U = subspaces[S[0]]
        for j in S[1:]:
            U = intersect(U, subspaces[j])
        base = [v for T, blk in blocks.items() if set(S) < set(T) for v in blk]
        if len(rref_rows(F, base, n)) != len(base):
            raise DomainError("subspaces do not admit a common adapted basis")
        blocks[S] = extend_basis(F, base, U)
    placed = [v for S in stages for v in blocks[S]]
    if len(rref_rows(F, placed, n)) != len(placed):
        raise DomainError("subspaces do not admit a common adapted basis")
    rest = extend_basis(F, placed, full_space(F, n))
    return [blocks[S] for S in stages] + [rest]


def _match(F: FieldSpec, n: int, src: list[list[Vector]], dst: list[list[Vector]]) -> LinearMap:
    if [len(b) for b in src] != [len(b) for b in dst]:
        raise WitnessError(f"adapted block sizes differ: {[len(b) for b in src]} vs {[len(b) for b in dst]}")
    a = [v for b in src for v in b]
    b = [v for blk in dst for v in blk]
    return map_from_bases(F, a, b)


def witness_single(ctx: GraphContext, x: Subspace, v: Subspace, v2: Subspace) -> LinearMap:
    """sigma with sigma(x) = x and sigma(v) = v2, from matched adapted bases."""
    if v.dim != v2.dim or dim_intersection(v, x) != dim_intersection(v2, x):
        raise ClassMismatchError(
            f"(dim v, dim v∩x) = ({v.dim}, {dim_intersection(v, x)}) differs from "
            f"({v2.dim}, {dim_intersection(v2, x)})"
        )
    F, n = ctx.spec, ctx.n
    sigma = _match(F, n, adapted_blocks(F, n, [x, v]), adapted_blocks(F, n, [x, v2]))
    if apply_map(sigma, x) != x or apply_map(sigma, v) != v2:
        raise WitnessError("constructed map does not send (x, v) to (x, v2)")
    return sigma


def _solve(F: FieldSpec, basis: Sequence[Vector], target: Vector) -> list[int]:
    """Coefficients c with sum c_j basis_j = target (basis independent, target in span)."""
    m = len(basis)
    n = len(target)
    aug = [[basis[j][t] for j in range(m)] + [target[t]] for t in range(n)]
    red = rref_rows(F, aug, m + 1, fast=False)
    coeffs = [0] * m
    for row in red:
        p = next(j for j, v in enumerate(row) if v)
        if p == m:
            raise DomainError("target not in span")
        coeffs[p] = row[m]
    return coeffs


def zero_class_frame(ctx: GraphContext, x: Subspace, y: Subspace, z: Subspace) -> list[list[Vector]]:
    """Ordered basis blocks R, S, Q, W, (psi), (rho) for a z of class A0.

    psi is the first line (canonical order) of (z + x) ∩ y outside x ∩ y;
    psi = eta + rho with eta in z and rho a multiple of the first row of x
    outside z. R is the RREF basis of x ∩ y and is shared by every z.
    """
    F, n = ctx.spec, ctx.n
    xy = intersect(x, y)
    zxy = intersect(subspace_sum(z, x), y)
    if zxy.dim != xy.dim + 1:
        raise WitnessError("(z + x) ∩ y should exceed x ∩ y by one dimension")
    lines = sorted((Subspace(F.q, n, (v,)) for v in point_vectors(zxy)), key=Subspace.sort_key)
    psi = next(s.rows[0] for s in lines if not contains_vector(xy, s.rows[0]))
    u = next(r for r in x.rows if not contains_vector(z, r))
    coeffs = _solve(F, list(z.rows) + [u], psi)
    rho = tuple(F.mul[coeffs[-1]][a] for a in u)
    eta = tuple(F.add[a][F.neg[b]] for a, b in zip(psi, rho))
    if not contains_vector(z, eta) or contains_vector(x, eta):
        raise WitnessError("bad split of psi")

    R = list(xy.rows)
    S = extend_basis(F, R, intersect(z, x))
    Q = extend_basis(F, R + [psi], y)
    head = R + S + Q + [psi, rho]
    if len(rref_rows(F, head, n)) != len(head):
        raise WitnessError("frame vectors are dependent")
    W = extend_basis(F, head, full_space(F, n))
    return [R, S, Q, W, [psi], [rho]]


def witness_pair(ctx: GraphContext, x: Subspace, y: Subspace, z: Subspace, z2: Subspace) -> LinearMap:
    """sigma fixing x and y with sigma(z) = z2, for z, z2 in the same class.

    The A0 class follows the explicit psi = eta + rho frame; the other four
    classes are distributive configurations and use :func:`adapted_blocks`
    on (x, y, z). The result is always checked before it is returned.
    """
    c1 = classify(ctx, x, y, z)
    c2 = classify(ctx, x, y, z2)
    if c1 != c2:
        raise ClassMismatchError(f"z is in class {c1.value} but z' is in class {c2.value}")
    F, n = ctx.spec, ctx.n
    if c1 is OrbitClass.A_ZERO:
        src = zero_class_frame(ctx, x, y, z)
        dst = zero_class_frame(ctx, x, y, z2)
    else:
        try:
            src = adapted_blocks(F, n, [x, y, z])
            dst = adapted_blocks(F, n, [x, y, z2])
        except DomainError as exc:
            raise WitnessError(f"class {c1.value} configuration is not distributive") from exc
    sigma = _match(F, n, src, dst)
    verify_witness(sigma, x, y, z, z2)
    return sigma


def verify_witness(sigma: LinearMap, x: Subspace, y: Subspace, z: Subspace, z2: Subspace) -> None:
    if apply_map(sigma, x) != x:
        raise WitnessError("witness does not fix x")
    if apply_map(sigma, y) != y:
        raise WitnessError("witness does not fix y")
    if apply_map(sigma, z) != z2:
        raise WitnessError("witness does not send z to z'")
