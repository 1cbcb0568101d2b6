"""Subspaces of GF(q)^n in reduced row echelon form.

A :class:`Subspace` is stored as its RREF basis, which makes equality of
subspaces plain tuple equality. Over GF(2) elimination runs on rows packed
into Python ints; the generic path works for any supported q and the two are
required to agree exactly.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, ParseError
from .field import FieldSpec, as_field, gf

Vector = tuple[int, ...]

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# elimination kernels

def _rref_generic(F: FieldSpec, rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    a = [list(r) for r in rows if any(r)]
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    r = 0
    m = len(a)
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        s = inv[a[r][c]]
        if s != 1:
            a[r] = [mul[s][v] for v in a[r]]
        pr = a[r]
        for i in range(m):
            f = a[i][c]
            if i != r and f:
                nf = neg[f]
                row = a[i]
                mrow = mul[nf]
                a[i] = [add[u][mrow[v]] for u, v in zip(row, pr)]
        r += 1
    return a[:r]


def _pack(row: Sequence[int], n: int) -> int:
    # column 0 is the most significant bit so that pivots come out leftmost first
    v = 0
    for x in row:
        v = (v << 1) | (x & 1)
    return v


def _unpack(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> (n - 1 - j)) & 1 for j in range(n))


def _rref_gf2(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    packed = [_pack(r, n) for r in rows]
    basis: list[int] = []
    for v in packed:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            # reduce existing rows by the new pivot, keep rows sorted by pivot (high bit first)
            top = v.bit_length()
            basis = [b ^ v if (b >> (top - 1)) & 1 else b for b in basis]
            basis.append(v)
            basis.sort(reverse=True)
    return [list(_unpack(b, n)) for b in basis]


def rref_rows(F: FieldSpec, rows: Sequence[Sequence[int]], n: int, fast: bool = True) -> tuple[Vector, ...]:
    if fast and F.q == 2:
        out = _rref_gf2(rows, n)
    else:
        out = _rref_generic(F, rows, n)
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    q: int
    n: int
    rows: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def field(self) -> FieldSpec:
        return gf(self.q)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(r) if v) for r in self.rows)

    def sort_key(self):
        """Global canonical order: pivot set, then free entries row-major as base-q digits."""
        piv = self.pivots
        ps = set(piv)
        free = tuple(r[j] for r, p in zip(self.rows, piv) for j in range(p + 1, self.n) if j not in ps)
        return (piv, free)

    def to_text(self) -> str:
        body = ",".join("".join(_DIGITS[v] for v in r) for r in self.rows)
        return f"{self.q}:{self.n}:{self.dim}:{body}"

    def __str__(self) -> str:
        return self.to_text()

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)


def rref(rows: Sequence[Sequence[int]], spec, n: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``rows``."""
    F = as_field(spec)
    if n is None:
        if not rows:
            raise DomainError("ambient dimension needed for an empty row list")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DomainError("all rows must have length n")
    return Subspace(F.q, n, rref_rows(F, rows, n))


def rref_generic(rows: Sequence[Sequence[int]], spec, n: int) -> Subspace:
    """Same as :func:`rref` but never takes the packed GF(2) path."""
    F = as_field(spec)
    return Subspace(F.q, n, rref_rows(F, rows, n, fast=False))


def zero_space(spec, n: int) -> Subspace:
    return Subspace(as_field(spec).q, n, ())


def full_space(spec, n: int) -> Subspace:
    return Subspace(as_field(spec).q, n, tuple(unit(n, j) for j in range(n)))


def unit(n: int, j: int) -> Vector:
    return tuple(int(t == j) for t in range(n))


def span(spec, n: int, *vectors: Sequence[int]) -> Subspace:
    return rref(list(vectors), spec, n)


def standard(spec, n: int, indices: Sequence[int]) -> Subspace:
    """Span of the standard basis vectors e_j (0-based j)."""
    return rref([unit(n, j) for j in indices], spec, n)


def _check_pair(u: Subspace, v: Subspace) -> None:
    if u.n != v.n or u.q != v.q:
        raise DomainError(f"ambient mismatch: GF({u.q})^{u.n} vs GF({v.q})^{v.n}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_pair(u, v)
    return Subspace(u.q, u.n, rref_rows(u.field, u.rows + v.rows, u.n))


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """u ∩ v by the Zassenhaus construction on [u|u] / [v|0]."""
    _check_pair(u, v)
    n = u.n
    if not u.rows or not v.rows:
        return Subspace(u.q, n, ())
    zero = (0,) * n
    stacked = [r + r for r in u.rows] + [r + zero for r in v.rows]
    red = rref_rows(u.field, stacked, 2 * n)
    meet = [r[n:] for r in red if not any(r[:n])]
    return Subspace(u.q, n, rref_rows(u.field, meet, n))


def dim_sum(u: Subspace, v: Subspace) -> int:
    return subspace_sum(u, v).dim


def dim_intersection(u: Subspace, v: Subspace) -> int:
    # modularity: dim(u ∩ v) = dim u + dim v - dim(u + v)
    return u.dim + v.dim - dim_sum(u, v)


def contains(u: Subspace, v: Subspace) -> bool:
    """True when v is a subspace of u."""
    return dim_sum(u, v) == u.dim


def contains_vector(u: Subspace, vec: Sequence[int]) -> bool:
    return len(rref_rows(u.field, u.rows + (tuple(vec),), u.n)) == u.dim


def rank(spec, rows: Sequence[Sequence[int]], n: int) -> int:
    return len(rref_rows(as_field(spec), rows, n))


# ---------------------------------------------------------------------------
# vectors

def vadd(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(F.add[x][y] for x, y in zip(a, b))


def vscale(F: FieldSpec, c: int, a: Sequence[int]) -> Vector:
    m = F.mul[c]
    return tuple(m[x] for x in a)


def vsub(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(F.add[x][F.neg[y]] for x, y in zip(a, b))


def combine(F: FieldSpec, coeffs: Sequence[int], rows: Sequence[Sequence[int]], n: int) -> Vector:
    acc = (0,) * n
    for c, r in zip(coeffs, rows):
        if c:
            acc = vadd(F, acc, vscale(F, c, r))
    return acc


def normalize(F: FieldSpec, v: Sequence[int]) -> Vector:
    """Scale a nonzero vector so that its first nonzero entry is 1."""
    lead = next(x for x in v if x)
    return vscale(F, F.inv[lead], v)


def point_vectors(u: Subspace) -> Iterator[Vector]:
    """Normalized spanning vectors of every line in u (one per line).

    Combinations of the RREF rows whose first nonzero coefficient is 1 are
    already normalized, so there are exactly [dim u] of them.
    """
    F = u.field
    d = u.dim
    for lead in range(d):
        rest = d - lead - 1
        for tail in itertools.product(range(F.q), repeat=rest):
            coeffs = (0,) * lead + (1,) + tail
            yield combine(F, coeffs, u.rows, u.n)


def nonzero_vectors(u: Subspace) -> Iterator[Vector]:
    F = u.field
    for coeffs in itertools.product(range(F.q), repeat=u.dim):
        if any(coeffs):
            yield combine(F, coeffs, u.rows, u.n)


def omega(u: Subspace) -> list[Subspace]:
    """All lines of u, in the global canonical order."""
    lines = [Subspace(u.q, u.n, (v,)) for v in point_vectors(u)]
    return sorted(lines, key=Subspace.sort_key)


def enumerate_subspaces(spec, n: int, ell: int) -> Iterator[Subspace]:
    """Every ell-dimensional subspace of GF(q)^n exactly once, in canonical order."""
    F = as_field(spec)
    if not 0 <= ell <= n:
        raise DomainError(f"need 0 <= ell <= n, got ell={ell}, n={n}")
    for piv in itertools.combinations(range(n), ell):
        ps = set(piv)
        slots = [(r, j) for r, p in enumerate(piv) for j in range(p + 1, n) if j not in ps]
        base = [[0] * n for _ in piv]
        for r, p in enumerate(piv):
            base[r][p] = 1
        for digits in itertools.product(range(F.q), repeat=len(slots)):
            rows = [list(b) for b in base]
            for (r, j), d in zip(slots, digits):
                rows[r][j] = d
            yield Subspace(F.q, n, tuple(tuple(r) for r in rows))


def complement_basis(u: Subspace) -> list[Vector]:
    """Standard basis vectors on the non-pivot columns: a complement of u."""
    piv = set(u.pivots)
    return [unit(u.n, j) for j in range(u.n) if j not in piv]


def extend_basis(F: FieldSpec, current: Sequence[Vector], target: Subspace) -> list[Vector]:
    """Vectors from the target's RREF rows (then standard vectors) extending ``current``.

    Returns only the added vectors; ``current`` must lie inside ``target``.
    """
    n = target.n
    added: list[Vector] = []
    r = len(rref_rows(F, list(current), n))
    candidates = list(target.rows)
    for v in candidates:
        if r == target.dim:
            break
        nr = len(rref_rows(F, list(current) + added + [v], n))
        if nr > r:
            added.append(v)
            r = nr
    if r != target.dim:
        raise DomainError("current vectors do not lie in the target subspace")
    return added


# ---------------------------------------------------------------------------
# GL(V)

@dataclass(frozen=True)
class LinearMap:
    """An invertible n x n matrix; acts on column vectors, v -> M v."""

    q: int
    matrix: tuple[Vector, ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(r) != n for r in self.matrix):
            raise DomainError("LinearMap needs a square matrix")
        if len(rref_rows(gf(self.q), self.matrix, n)) != n:
            raise DomainError("LinearMap matrix is singular")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, spec, n: int) -> "LinearMap":
        return cls(as_field(spec).q, tuple(unit(n, j) for j in range(n)))

    def apply_vector(self, v: Sequence[int]) -> Vector:
        F = gf(self.q)
        out = []
        for row in self.matrix:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = F.add[acc][F.mul[a][b]]
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        F = gf(self.q)
        cols = list(zip(*other.matrix))
        prod = tuple(tuple(_dot(F, r, c) for c in cols) for r in self.matrix)
        return LinearMap(self.q, prod)

    def to_text(self) -> list[str]:
        return ["".join(_DIGITS[v] for v in r) for r in self.matrix]


def _dot(F: FieldSpec, a, b) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add[acc][F.mul[x][y]]
    return acc


def apply_map(sigma: LinearMap, u: Subspace) -> Subspace:
    if sigma.n != u.n or sigma.q != u.q:
        raise DomainError("ambient mismatch between map and subspace")
    return rref([sigma.apply_vector(r) for r in u.rows], u.q, u.n)


def matrix_inverse(F: FieldSpec, rows: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    n = len(rows)
    aug = [list(r) + list(unit(n, i)) for i, r in enumerate(rows)]
    red = rref_rows(F, aug, 2 * n, fast=False)
    if len(red) != n or any(red[i][:n] != unit(n, i) for i in range(n)):
        raise DomainError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def map_from_bases(F: FieldSpec, src: Sequence[Vector], dst: Sequence[Vector]) -> LinearMap:
    """The unique M with M src[j] = dst[j]; both lists must be bases of V."""
    n = len(src)
    # columns of S are src vectors; M = D S^{-1}
    s_cols = tuple(zip(*src))
    d_cols = tuple(zip(*dst))
    s_inv = matrix_inverse(F, s_cols)
    inv_cols = list(zip(*s_inv))
    prod = tuple(tuple(_dot(F, d_cols[i], inv_cols[j]) for j in range(n)) for i in range(n))
    return LinearMap(F.q, prod)


def random_vector(F: FieldSpec, n: int, rng: random.Random) -> Vector:
    return tuple(rng.randrange(F.q) for _ in range(n))


def random_invertible(spec, n: int, seed) -> LinearMap:
    F = as_field(spec)
    rng = random.Random(seed)
    rows: list[Vector] = []
    while len(rows) < n:
        v = random_vector(F, n, rng)
        if len(rref_rows(F, rows + [v], n)) > len(rows):
            rows.append(v)
    return LinearMap(F.q, tuple(rows))


def random_subspace(spec, n: int, ell: int, seed) -> Subspace:
    F = as_field(spec)
    if not 0 <= ell <= n:
        raise DomainError(f"need 0 <= ell <= n, got ell={ell}")
    rng = random.Random(seed)
    rows: list[Vector] = []
    while len(rows) < ell:
        v = random_vector(F, n, rng)
        if len(rref_rows(F, rows + [v], n)) > len(rows):
            rows.append(v)
    return rref(rows, F, n)


# ---------------------------------------------------------------------------
# text interchange: "q:n:d:" then d comma-separated rows of n base-q digits

def parse_subspace(text: str) -> Subspace:
    parts = text.strip().split(":")
    if len(parts) != 4:
        raise ParseError(f"expected 'q:n:d:rows', got {text!r}")
    try:
        q, n, d = (int(s) for s in parts[:3])
    except ValueError as exc:
        raise ParseError(f"bad header in {text!r}") from exc
    try:
        F = gf(q)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    body = parts[3]
    raw_rows = body.split(",") if body else []
    if len(raw_rows) != d:
        raise ParseError(f"header says {d} rows, found {len(raw_rows)}")
    rows = []
    for r in raw_rows:
        if len(r) != n:
            raise ParseError(f"row {r!r} does not have {n} digits")
        try:
            vals = tuple(_DIGITS.index(ch) for ch in r.lower())
        except ValueError as exc:
            raise ParseError(f"bad digit in row {r!r}") from exc
        if any(v >= q for v in vals):
            raise ParseError(f"digit out of range for q={q} in row {r!r}")
        rows.append(vals)
    u = rref(rows, F, n)
    if u.dim != d:
        raise ParseError(f"rows of {text!r} are linearly dependent")
    return u
