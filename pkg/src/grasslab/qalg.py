"""Closed-form q-analog formulas for the Grassmann graph J_q(n, k).

Every formula is evaluated with Python integers and :class:`Fraction`, never
floats. The inner-product tables, the structure matrix and the basis
transition coefficients live in a registry keyed by ``(table, row, col)`` so
that brute-force comparators can walk entries uniformly.
"""
from __future__ import annotations

import contextlib
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError
from .qmatrix import QMatrix


def bracket(m: int, q: int) -> int:
    """Gaussian bracket [m] = (q^m - 1)/(q - 1), the number of lines in GF(q)^m."""
    if m < 0:
        raise DomainError(f"bracket undefined for negative m={m}")
    if q < 2:
        raise DomainError(f"q must be at least 2, got {q}")
    return (q**m - 1) // (q - 1)


def gauss_binom(m: int, r: int, q: int) -> int:
    if r < 0 or r > m:
        raise DomainError(f"gauss_binom needs 0 <= r <= m, got m={m}, r={r}")
    num = 1
    den = 1
    for j in range(1, r + 1):
        num *= bracket(m - j + 1, q)
        den *= bracket(j, q)
    return num // den


@dataclass(frozen=True)
class Params:
    q: int
    n: int
    k: int
    i: Optional[int] = None

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"q must be a prime power >= 2, got {self.q}")
        if not (self.n > 2 * self.k >= 6):
            raise DomainError(f"need n > 2k >= 6, got n={self.n}, k={self.k}")
        if self.i is not None and not (0 <= self.i <= self.k):
            raise DomainError(f"distance i={self.i} outside 0..k")

    def with_i(self, i: int) -> "Params":
        return Params(self.q, self.n, self.k, i)

    def b(self, m: int) -> int:
        return bracket(m, self.q)

    def pw(self, e: int) -> Fraction:
        # negative exponents occur when i = k - 1 (e.g. q^{k-i-2})
        return Fraction(self.q) ** e


def _need_i(p: Params, strict: bool = True) -> int:
    if p.i is None:
        raise DomainError("these parameters carry no distance i")
    if strict and not (1 < p.i < p.k):
        raise DomainError(f"need 1 < i < k, got i={p.i}, k={p.k}")
    return p.i


def valency(p: Params) -> int:
    return p.q * p.b(p.k) * p.b(p.n - p.k)


def local_a1(p: Params) -> int:
    q, n, k = p.q, p.n, p.k
    return q * p.b(k) + q * p.b(n - k) - q - 1


def intersection_numbers(p: Params) -> tuple[int, int, int]:
    """(b_i, c_i, a_i) for the distance carried by ``p``."""
    i = _need_i(p, strict=False)
    q, n, k, B = p.q, p.n, p.k, p.b
    b = q ** (2 * i + 1) * B(k - i) * B(n - k - i)
    c = B(i) ** 2
    return b, c, valency(p) - b - c


def orbit_sizes(p: Params) -> tuple[int, int, int]:
    """Sizes of the three pieces (plus, zero, minus) of the same-distance class."""
    i = _need_i(p)
    q, n, k, B = p.q, p.n, p.k, p.b
    return (
        q ** (i + 1) * B(i) * B(n - k - i),
        (q - 1) * B(i) ** 2,
        q ** (i + 1) * B(i) * B(k - i),
    )


def class_sizes(p: Params) -> tuple[int, int, int, int, int]:
    """All five class sizes in the order B, C, A+, A0, A-."""
    b, c, _ = intersection_numbers(p)
    ap, a0, am = orbit_sizes(p)
    return b, c, ap, a0, am


def eigenvalue_theta(p: Params) -> int:
    i = _need_i(p, strict=False)
    q, n, k, B = p.q, p.n, p.k, p.b
    return q ** (i + 1) * B(k - i) * B(n - k - i) - B(i)


# ---------------------------------------------------------------------------
# formula registry

class TableId(enum.Enum):
    GEOM_GRAM = "GEOM_GRAM"
    COMB_GRAM = "COMB_GRAM"
    CROSS_GRAM = "CROSS_GRAM"
    A_GEOM = "A_GEOM"
    A_COMB = "A_COMB"
    A_A = "A_A"
    STRUCTURE = "STRUCTURE"


class TransitionId(enum.Enum):
    ALIN = "ALIN"
    ALIN2 = "ALIN2"
    XCAP_XPLUS = "XCAP_XPLUS"


# Vector labels shared with the brute-force side (euclid) and orbit classes.
X, Y, XCAP, XPLUS, BV, CV, AP, A0, AM = "x", "y", "xcap", "xplus", "B", "C", "A+", "A0", "A-"

GEOM = (X, Y, XCAP, XPLUS)
COMB = (X, Y, BV, CV)
AVEC = (AP, A0, AM)
ORBITS = (BV, CV, AP, A0, AM)

Entry = Callable[[Params], "int | Fraction"]


@dataclass
class Table:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: dict[tuple[str, str], Entry]


def _symmetric(entries: dict) -> dict:
    out = dict(entries)
    for (r, c), f in entries.items():
        out.setdefault((c, r), f)
    return out


def _dk(p):
    """Common factor [n][k-2] - [k]^2 (inner product at distance two)."""
    return p.b(p.n) * p.b(p.k - 2) - p.b(p.k) ** 2


def _pb(p):
    """b_i = q^{2i+1}[k-i][n-k-i]."""
    q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
    return q ** (2 * i + 1) * B(k - i) * B(n - k - i)


def _geom_entries() -> dict:
    def norm_x(p):
        return p.q**p.k * p.b(p.k) * p.b(p.n - p.k)

    def x_y(p):
        return p.b(p.n) * p.b(p.k - p.i) - p.b(p.k) ** 2

    def x_cap(p):
        return p.q**p.k * p.b(p.k - p.i) * p.b(p.n - p.k)

    def x_plus(p):
        return p.q ** (p.k + p.i) * p.b(p.k) * p.b(p.n - p.k - p.i)

    return {
        (X, X): norm_x,
        (X, Y): x_y,
        (X, XCAP): x_cap,
        (X, XPLUS): x_plus,
        (Y, Y): norm_x,
        (Y, XCAP): x_cap,
        (Y, XPLUS): x_plus,
        (XCAP, XCAP): lambda p: p.q ** (p.k - p.i) * p.b(p.k - p.i) * p.b(p.n - p.k + p.i),
        (XCAP, XPLUS): lambda p: p.q ** (p.k + p.i) * p.b(p.k - p.i) * p.b(p.n - p.k - p.i),
        (XPLUS, XPLUS): lambda p: p.q ** (p.k + p.i) * p.b(p.k + p.i) * p.b(p.n - p.k - p.i),
    }


def _b_geom_entries() -> dict:
    # inner products of B and C with the geometric basis
    def B1(p):
        return p.b(p.n) * p.b(p.k - 1) - p.b(p.k) ** 2

    return {
        (BV, X): lambda p: _pb(p) * B1(p),
        (BV, Y): lambda p: _pb(p) * (p.b(p.n) * p.b(p.k - p.i - 1) - p.b(p.k) ** 2),
        (BV, XCAP): lambda p: _pb(p) * (p.b(p.n) * p.b(p.k - p.i - 1) - p.b(p.k - p.i) * p.b(p.k)),
        (BV, XPLUS): lambda p: _pb(p) * (p.b(p.n) * p.b(p.k - 1) - p.b(p.k) * p.b(p.k + p.i)),
        (CV, X): lambda p: p.b(p.i) ** 2 * B1(p),
        (CV, Y): lambda p: p.b(p.i) ** 2 * (p.b(p.n) * p.b(p.k - p.i + 1) - p.b(p.k) ** 2),
        (CV, XCAP): lambda p: p.q**p.k * p.b(p.i) ** 2 * p.b(p.k - p.i) * p.b(p.n - p.k),
        (CV, XPLUS): lambda p: p.q ** (p.k + p.i) * p.b(p.i) ** 2 * p.b(p.k) * p.b(p.n - p.k - p.i),
    }


def _comb_entries() -> dict:
    g = _geom_entries()
    bg = _b_geom_entries()

    def bb(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return q ** (4 * i + 2) * B(k - i) * B(n - k - i) * (
            p.pw(k - i - 2) * B(n) * (B(k - i) + B(n - k - i)) + B(k - i) * B(n - k - i) * _dk(p)
        )

    def cc(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return B(i) ** 2 * (p.pw(k - 2) * B(n) * (2 * q * B(i - 1) + q + 1) + B(i) ** 2 * _dk(p))

    return {
        (X, X): g[X, X],
        (X, Y): g[X, Y],
        (Y, Y): g[Y, Y],
        (X, BV): bg[BV, X],
        (Y, BV): bg[BV, Y],
        (X, CV): bg[CV, X],
        (Y, CV): bg[CV, Y],
        (BV, BV): bb,
        (BV, CV): lambda p: _pb(p) * p.b(p.i) ** 2 * _dk(p),
        (CV, CV): cc,
    }


def _a_xy_entries() -> dict:
    def ap(p):
        return p.q ** (p.i + 1) * p.b(p.i) * p.b(p.n - p.k - p.i)

    def a0(p):
        return (p.q - 1) * p.b(p.i) ** 2

    def am(p):
        return p.q ** (p.i + 1) * p.b(p.i) * p.b(p.k - p.i)

    def dx(p):
        return p.b(p.n) * p.b(p.k - 1) - p.b(p.k) ** 2

    def dy(p):
        return p.b(p.n) * p.b(p.k - p.i) - p.b(p.k) ** 2

    return {
        (X, AP): lambda p: ap(p) * dx(p),
        (X, A0): lambda p: a0(p) * dx(p),
        (X, AM): lambda p: am(p) * dx(p),
        (Y, AP): lambda p: ap(p) * dy(p),
        (Y, A0): lambda p: a0(p) * dy(p),
        (Y, AM): lambda p: am(p) * dy(p),
    }


def _a_geom_entries() -> dict:
    e = _a_xy_entries()

    def q_(p, m):
        return p.q**m

    e.update({
        (XCAP, AP): lambda p: q_(p, p.k + p.i + 1) * p.b(p.i) * p.b(p.n - p.k - p.i) * p.b(p.k - p.i) * p.b(p.n - p.k),
        (XCAP, A0): lambda p: q_(p, p.k) * (p.q - 1) * p.b(p.i) ** 2 * p.b(p.k - p.i) * p.b(p.n - p.k),
        (XCAP, AM): lambda p: q_(p, p.i + 1) * p.b(p.i) * p.b(p.k - p.i)
        * (p.b(p.n) * p.b(p.k - p.i - 1) - p.b(p.k - p.i) * p.b(p.k)),
        (XPLUS, AP): lambda p: q_(p, p.i + 1) * p.b(p.i) * p.b(p.n - p.k - p.i)
        * (p.b(p.n) * p.b(p.k - 1) - p.b(p.k) * p.b(p.k + p.i)),
        (XPLUS, A0): lambda p: q_(p, p.k + p.i) * (p.q - 1) * p.b(p.i) ** 2 * p.b(p.k) * p.b(p.n - p.k - p.i),
        (XPLUS, AM): lambda p: q_(p, p.k + 2 * p.i + 1) * p.b(p.i) * p.b(p.k - p.i) * p.b(p.k) * p.b(p.n - p.k - p.i),
    })
    return e


def _a_comb_entries() -> dict:
    e = _a_xy_entries()

    def d1(p):
        return p.b(p.n) * p.b(p.k - 1) - p.b(p.k) ** 2

    def c_side(p):
        # q^{k-2}[n] + [i]([n][k-2] - [k]^2)
        return p.pw(p.k - 2) * p.b(p.n) + p.b(p.i) * _dk(p)

    def b_ap(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return q ** (2 * i + 2) * B(i) * B(k - i) * B(n - k - i) * ((q**i * B(n - k - i) - 1) * _dk(p) + d1(p))

    def b_am(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return q ** (2 * i + 2) * B(i) * B(k - i) * B(n - k - i) * ((q**i * B(k - i) - 1) * _dk(p) + d1(p))

    def c_a0(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return (q - 1) * B(i) ** 2 * (p.pw(k - 2) * B(n) * (2 * B(i) - 1) + B(i) ** 2 * _dk(p))

    e.update({
        (BV, AP): b_ap,
        (BV, A0): lambda p: p.q ** (2 * p.i + 1) * (p.q - 1) * p.b(p.k - p.i) * p.b(p.n - p.k - p.i)
        * p.b(p.i) ** 2 * _dk(p),
        (BV, AM): b_am,
        (CV, AP): lambda p: p.q ** (p.i + 1) * p.b(p.n - p.k - p.i) * p.b(p.i) ** 2 * c_side(p),
        (CV, A0): c_a0,
        (CV, AM): lambda p: p.q ** (p.i + 1) * p.b(p.k - p.i) * p.b(p.i) ** 2 * c_side(p),
    })
    return e


def _a_a_entries() -> dict:
    def c_side(p):
        return p.pw(p.k - 2) * p.b(p.n) + p.b(p.i) * _dk(p)

    def pp(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return q ** (2 * i + 2) * B(i) * B(n - k - i) * (p.pw(k - i - 2) * B(n) * B(n - k) + B(i) * B(n - k - i) * _dk(p))

    def mm(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return q ** (2 * i + 2) * B(i) * B(k - i) * (p.pw(k - i - 2) * B(n) * B(k) + B(i) * B(k - i) * _dk(p))

    def zz(p):
        q, n, k, i, B = p.q, p.n, p.k, p.i, p.b
        return (q - 1) * B(i) ** 2 * (
            p.pw(k - 2) * B(n) * (2 * (q - 1) * B(i) + 1) + (q - 1) * B(i) ** 2 * _dk(p)
        )

    return {
        (AP, AP): pp,
        (AP, A0): lambda p: p.q ** (p.i + 1) * (p.q - 1) * p.b(p.n - p.k - p.i) * p.b(p.i) ** 2 * c_side(p),
        (AP, AM): lambda p: p.q ** (2 * p.i + 2) * p.b(p.k - p.i) * p.b(p.n - p.k - p.i) * p.b(p.i) ** 2 * _dk(p),
        (A0, A0): zz,
        (A0, AM): lambda p: p.q ** (p.i + 1) * (p.q - 1) * p.b(p.k - p.i) * p.b(p.i) ** 2 * c_side(p),
        (AM, AM): mm,
    }


def _structure_entries() -> dict:
    def qi1(p, m):
        return p.q ** (p.i + 1) * p.b(m)

    rows = {
        BV: (
            lambda p: qi1(p, p.k - p.i) + qi1(p, p.n - p.k - p.i) - p.q - 1,
            lambda p: 0,
            lambda p: p.q * p.b(p.i),
            lambda p: 0,
            lambda p: p.q * p.b(p.i),
        ),
        CV: (
            lambda p: 0,
            lambda p: 2 * p.q * p.b(p.i - 1),
            lambda p: qi1(p, p.n - p.k - p.i),
            lambda p: (p.q - 1) * (2 * p.b(p.i) - 1),
            lambda p: qi1(p, p.k - p.i),
        ),
        AP: (
            lambda p: qi1(p, p.k - p.i),
            lambda p: p.b(p.i),
            lambda p: p.q * p.b(p.n - p.k) - p.q - 1,
            lambda p: (p.q - 1) * p.b(p.i),
            lambda p: 0,
        ),
        A0: (
            lambda p: 0,
            lambda p: 2 * p.b(p.i) - 1,
            lambda p: qi1(p, p.n - p.k - p.i),
            lambda p: (p.q - 1) * (2 * p.b(p.i) - 1) - 1,
            lambda p: qi1(p, p.k - p.i),
        ),
        AM: (
            lambda p: qi1(p, p.n - p.k - p.i),
            lambda p: p.b(p.i),
            lambda p: 0,
            lambda p: (p.q - 1) * p.b(p.i),
            lambda p: p.q * p.b(p.k) - p.q - 1,
        ),
    }
    return {(r, c): f for r, fs in rows.items() for c, f in zip(ORBITS, fs)}


def _alin_entries() -> dict:
    def q_(p, m):
        return p.q**m

    B = lambda p, m: p.b(m)  # noqa: E731
    return {
        (X, AP): lambda p: q_(p, p.i + 1) * B(p, p.n - p.k - p.i) * B(p, p.i - 1),
        (Y, AP): lambda p: 0,
        (XCAP, AP): lambda p: q_(p, 2 * p.i) * B(p, p.n - p.k - p.i),
        (XPLUS, AP): lambda p: -B(p, p.i),
        (X, A0): lambda p: q_(p, p.i) * B(p, p.i - 1) - B(p, p.i),
        (Y, A0): lambda p: -q_(p, p.i - 1),
        (XCAP, A0): lambda p: q_(p, 2 * p.i - 1),
        (XPLUS, A0): lambda p: q_(p, p.i - 1),
        (X, AM): lambda p: q_(p, p.i + 1) * B(p, p.k - p.i) * B(p, p.i - 1),
        (Y, AM): lambda p: 0,
        (XCAP, AM): lambda p: -q_(p, p.i) * B(p, p.i),
        (XPLUS, AM): lambda p: q_(p, p.i) * B(p, p.k - p.i),
    }


def _xcap_xplus_entries() -> dict:
    def F(num, den):
        return Fraction(num) / Fraction(den)

    def d(p):
        return p.b(p.n - 2 * p.k)

    def pw(p, e):
        return p.pw(e)

    B = lambda p, m: p.b(m)  # noqa: E731
    return {
        (X, XCAP): lambda p: F(B(p, p.k - p.i) * B(p, p.n - p.k - 1), pw(p, p.k - 1) * d(p)),
        (Y, XCAP): lambda p: F(B(p, p.k - p.i), pw(p, p.k - p.i + 1) * B(p, p.i - 1) * d(p)),
        (BV, XCAP): lambda p: -F(1, pw(p, p.k + p.i) * d(p)),
        (CV, XCAP): lambda p: -F(B(p, p.k - p.i), pw(p, p.k) * B(p, p.i - 1) * d(p)),
        (X, XPLUS): lambda p: -F(B(p, p.k - 1) * B(p, p.n - p.k - p.i), pw(p, p.k - p.i - 1) * d(p)),
        (Y, XPLUS): lambda p: -F(B(p, p.n - p.k - p.i), pw(p, p.k - 2 * p.i + 1) * B(p, p.i - 1) * d(p)),
        (BV, XPLUS): lambda p: F(1, pw(p, p.k) * d(p)),
        (CV, XPLUS): lambda p: F(B(p, p.n - p.k - p.i), pw(p, p.k - p.i) * B(p, p.i - 1) * d(p)),
    }


def _alin2_entries() -> dict:
    def F(num, den):
        return Fraction(num) / Fraction(den)

    def d(p):
        return p.b(p.n - 2 * p.k)

    B = lambda p, m: p.b(m)  # noqa: E731
    return {
        (X, AP): lambda p: F(B(p, p.k - 1) * B(p, p.n - p.k - p.i) * B(p, p.n - p.k), p.pw(p.k - p.i - 1) * d(p)),
        (Y, AP): lambda p: F(B(p, p.k) * B(p, p.n - p.k - p.i), p.pw(p.k - 2 * p.i + 1) * B(p, p.i - 1) * d(p)),
        (BV, AP): lambda p: -F(B(p, p.n - p.k), p.pw(p.k) * d(p)),
        (CV, AP): lambda p: -F(B(p, p.k) * B(p, p.n - p.k - p.i), p.pw(p.k - p.i) * B(p, p.i - 1) * d(p)),
        (X, A0): lambda p: -B(p, p.i),
        (Y, A0): lambda p: -F(p.q ** (p.i - 1) * B(p, p.i), B(p, p.i - 1)),
        (BV, A0): lambda p: 0,
        (CV, A0): lambda p: F(p.q ** (p.i - 1), B(p, p.i - 1)),
        (X, AM): lambda p: -F(B(p, p.k - p.i) * B(p, p.k) * B(p, p.n - p.k - 1), p.pw(p.k - p.i - 1) * d(p)),
        (Y, AM): lambda p: -F(B(p, p.k - p.i) * B(p, p.n - p.k), p.pw(p.k - 2 * p.i + 1) * B(p, p.i - 1) * d(p)),
        (BV, AM): lambda p: F(B(p, p.k), p.pw(p.k) * d(p)),
        (CV, AM): lambda p: F(B(p, p.k - p.i) * B(p, p.n - p.k), p.pw(p.k - p.i) * B(p, p.i - 1) * d(p)),
    }


def _build_registry() -> dict:
    cross = {}
    g = _geom_entries()
    for c in GEOM:
        cross[X, c] = g.get((X, c)) or g[c, X]
        cross[Y, c] = g.get((Y, c)) or g[c, Y]
    cross.update(_b_geom_entries())
    return {
        TableId.GEOM_GRAM: Table(GEOM, GEOM, _symmetric(_geom_entries())),
        TableId.CROSS_GRAM: Table(COMB, GEOM, cross),
        TableId.COMB_GRAM: Table(COMB, COMB, _symmetric(_comb_entries())),
        TableId.A_GEOM: Table(GEOM, AVEC, _a_geom_entries()),
        TableId.A_COMB: Table(COMB, AVEC, _a_comb_entries()),
        TableId.A_A: Table(AVEC, AVEC, _symmetric(_a_a_entries())),
        TableId.STRUCTURE: Table(ORBITS, ORBITS, _structure_entries()),
        TransitionId.ALIN: Table(GEOM, AVEC, _alin_entries()),
        TransitionId.ALIN2: Table(COMB, AVEC, _alin2_entries()),
        TransitionId.XCAP_XPLUS: Table(COMB, (XCAP, XPLUS), _xcap_xplus_entries()),
    }


REGISTRY: dict = _build_registry()


def _evaluate(key, p: Params) -> QMatrix:
    if key not in REGISTRY:
        raise DomainError(f"unknown table {key!r}")
    _need_i(p)
    t = REGISTRY[key]
    return QMatrix.of([[t.entries[r, c](p) for c in t.cols] for r in t.rows])


def table_labels(key) -> tuple[tuple[str, ...], tuple[str, ...]]:
    t = REGISTRY[key]
    return t.rows, t.cols


def closed_table(table_id: TableId, p: Params) -> QMatrix:
    if not isinstance(table_id, TableId):
        raise DomainError(f"unknown table id {table_id!r}")
    return _evaluate(table_id, p)


def basis_transition(tid: TransitionId, p: Params) -> QMatrix:
    """Coefficient matrix: one column per target vector, one row per basis vector."""
    if not isinstance(tid, TransitionId):
        raise DomainError(f"unknown transition id {tid!r}")
    return _evaluate(tid, p)


@contextlib.contextmanager
def tampered(key, row: str, col: str, delta=1):
    """Temporarily shift one registry entry by ``delta`` (negative-control hook)."""
    t = REGISTRY[key]
    original = t.entries[row, col]
    t.entries[row, col] = lambda p: original(p) + delta
    try:
        yield
    finally:
        t.entries[row, col] = original


def geometric_gram_inverse(p: Params) -> QMatrix:
    i = _need_i(p)
    q, n, k, B = p.q, p.n, p.k, p.b
    qi = q**i
    m = [
        [qi, 1, -qi, -1],
        [1, qi, -qi, -1],
        [-qi, -qi, Fraction(qi * B(k) - B(i), B(k - i)), 1],
        [-1, -1, 1, Fraction(qi * B(n - k) - B(i), q ** (2 * i) * B(n - k - i))],
    ]
    pref = Fraction(1, q ** (k - i) * (q - 1) * B(i) ** 2 * B(n))
    return QMatrix.of(m).scale(pref)


def structure_eigenvalues(p: Params) -> tuple[int, ...]:
    q, n, k, B = p.q, p.n, p.k, p.b
    return (local_a1(p), q * B(n - k) - q - 1, q * B(k) - q - 1, -1, -q - 1)


def eigen_data(p: Params) -> list[tuple[int, QMatrix, QMatrix]]:
    """(eigenvalue, row eigenvector, column eigenvector) for the structure matrix."""
    _need_i(p)
    q = p.q
    b, c, ap, a0, am = class_sizes(p)
    ev = structure_eigenvalues(p)
    vecs = [
        ((b, c, ap, a0, am), (1, 1, 1, 1, 1)),
        ((ap, -c, -ap, -a0, q * c), (q * c, -am, -am, -am, q * c)),
        ((am, -c, q * c, -a0, -am), (q * c, -ap, q * c, -ap, -ap)),
        ((0, 1, 0, -1, 0), (0, q - 1, 0, -1, 0)),
        ((q, 1, -q, q - 1, -q), (q * c, b, -am, b, -ap)),
    ]
    return [(lam, QMatrix.row(r), QMatrix.column(col)) for lam, (r, col) in zip(ev, vecs)]


def local_spectrum_closed(p: Params) -> list[tuple[int, int]]:
    q, n, k, B = p.q, p.n, p.k, p.b
    ev = structure_eigenvalues(p)
    mult = (1, B(k) - 1, B(n - k) - 1, (q - 1) * B(k) * B(n - k), q * q * B(k - 1) * B(n - k - 1))
    return list(zip(ev, mult))
