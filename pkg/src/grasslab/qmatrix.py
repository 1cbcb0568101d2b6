"""Dense exact-rational matrices and a few polynomial helpers.

Everything here works on :class:`fractions.Fraction` entries. The matrices
involved are tiny (at most 5x5 for the closed-form tables), so clarity wins
over speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class QMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise DomainError("QMatrix must have positive dimensions")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise DomainError("ragged QMatrix rows")

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "QMatrix":
        return cls(tuple(tuple(_frac(v) for v in r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.of([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        return cls.of([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "QMatrix":
        return cls.of([[v] for v in values])

    @classmethod
    def row(cls, values: Sequence) -> "QMatrix":
        return cls.of([values])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    @property
    def T(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.rows)))

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "QMatrix":
        c = _frac(c)
        return QMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.shape[1] != other.shape[0]:
            raise DomainError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return QMatrix(tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols) for r in self.rows))

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for r in self.rows for v in r)

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r, Fraction(0)) for r in self.rows)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> list[list]:
        return [[render(v) for v in r] for r in self.rows]

    # -- elimination based routines -------------------------------------

    def _echelon(self):
        """Row reduce a copy; returns (reduced rows, pivot columns, det sign*product)."""
        a = [list(r) for r in self.rows]
        m, n = self.shape
        pivots = []
        det = Fraction(1)
        r = 0
        for c in range(n):
            p = next((i for i in range(r, m) if a[i][c] != 0), None)
            if p is None:
                det = Fraction(0)
                continue
            if p != r:
                a[r], a[p] = a[p], a[r]
                det = -det
            piv = a[r][c]
            det *= piv
            a[r] = [v / piv for v in a[r]]
            for i in range(m):
                if i != r and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [u - f * v for u, v in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return a, pivots, det

    def rank(self) -> int:
        return len(self._echelon()[1])

    def det(self) -> Fraction:
        m, n = self.shape
        if m != n:
            raise DomainError("determinant of a non-square matrix")
        _, pivots, det = self._echelon()
        return det if len(pivots) == n else Fraction(0)

    def inverse(self) -> "QMatrix":
        m, n = self.shape
        if m != n:
            raise DomainError("inverse of a non-square matrix")
        aug = QMatrix(tuple(r + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(self.rows)))
        red, pivots, _ = aug._echelon()
        if pivots[:n] != list(range(n)):
            raise DomainError("matrix is singular")
        return QMatrix(tuple(tuple(r[n:]) for r in red))

    def solve(self, rhs: Sequence) -> tuple[Fraction, ...]:
        """Solve ``self @ v = rhs`` for a nonsingular square matrix."""
        inv = self.inverse()
        return (inv @ QMatrix.column(rhs)).col(0)

    def charpoly(self) -> list[Fraction]:
        """Characteristic polynomial det(tI - A), coefficients from t^n down to t^0.

        Faddeev-LeVerrier recursion; exact over the rationals.
        """
        n, m = self.shape
        if n != m:
            raise DomainError("charpoly of a non-square matrix")
        coeffs = [Fraction(1)]
        ident = QMatrix.identity(n)
        mk = QMatrix.of([[0] * n for _ in range(n)])
        c = Fraction(1)
        for k in range(1, n + 1):
            mk = self @ mk + ident.scale(c)
            amk = self @ mk
            c = -sum((amk[i, i] for i in range(n)), Fraction(0)) / k
            coeffs.append(c)
        return coeffs


def poly_from_roots(roots: Iterable) -> list[Fraction]:
    """Monic polynomial with the given roots, coefficients from highest degree down."""
    coeffs = [Fraction(1)]
    for r in roots:
        r = _frac(r)
        nxt = coeffs + [Fraction(0)]
        for j in range(1, len(nxt)):
            nxt[j] -= r * coeffs[j - 1]
        coeffs = nxt
    return coeffs


def poly_eval(coeffs: Sequence, t) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * t + c
    return acc


def render(v):
    """JSON rendering of an exact value: ints stay ints, other rationals become "p/q"."""
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    return v
