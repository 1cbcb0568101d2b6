"""Finite fields GF(q) with a fixed, table-driven representation.

An element of GF(p^e) is an int in ``range(q)`` whose base-p digits are the
coefficients of a polynomial in t (least significant digit = constant term),
reduced modulo a fixed monic irreducible polynomial. For prime q this is just
arithmetic mod p.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .errors import DomainError

# Monic irreducible moduli, coefficients low degree first (leading 1 included).
# Fixed once so that canonical orders are reproducible bit for bit.
MODULI = {
    4: (1, 1, 1),        # t^2 + t + 1 over GF(2)
    8: (1, 1, 0, 1),     # t^3 + t + 1 over GF(2)
    9: (1, 0, 1),        # t^2 + 1 over GF(3)
}


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def _poly_mulmod(a, b, p, modulus):
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            prod[i + j] = (prod[i + j] + u * v) % p
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for j in range(e + 1):
                prod[d - e + j] = (prod[d - e + j] - c * modulus[j]) % p
    return prod[:e]


@dataclass(frozen=True)
class FieldSpec:
    q: int
    p: int
    e: int
    modulus: tuple[int, ...]
    add: tuple = dc_field(repr=False, compare=False)
    mul: tuple = dc_field(repr=False, compare=False)
    neg: tuple = dc_field(repr=False, compare=False)
    inv: tuple = dc_field(repr=False, compare=False)

    @property
    def elements(self) -> range:
        return range(self.q)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.q)
        return self.mul[a][self.inv[b]]


@lru_cache(maxsize=None)
def gf(q: int) -> FieldSpec:
    """The field with q elements, in this package's fixed representation."""
    if _is_prime(q):
        p, e, modulus = q, 1, ()
        add = tuple(tuple((a + b) % q for b in range(q)) for a in range(q))
        mul = tuple(tuple((a * b) % q for b in range(q)) for a in range(q))
    elif q in MODULI:
        modulus = MODULI[q]
        e = len(modulus) - 1
        p = round(q ** (1 / e))
        if p**e != q:
            raise DomainError(f"bad modulus table entry for q={q}")

        def digits(a):
            return [(a // p**j) % p for j in range(e)]

        def value(ds):
            return sum(d * p**j for j, d in enumerate(ds))

        add = tuple(
            tuple(value([(u + v) % p for u, v in zip(digits(a), digits(b))]) for b in range(q)) for a in range(q)
        )
        mul = tuple(
            tuple(value(_poly_mulmod(digits(a), digits(b), p, modulus)) for b in range(q)) for a in range(q)
        )
    else:
        raise DomainError(f"unsupported field size q={q}; supported: primes and {sorted(MODULI)}")

    neg = tuple(next(b for b in range(q) if add[a][b] == 0) for a in range(q))
    inv = (0,) + tuple(next(b for b in range(1, q) if mul[a][b] == 1) for a in range(1, q))
    f = FieldSpec(q, p, e, tuple(modulus), add, mul, neg, inv)
    _check_field_axioms(f)
    return f


def _check_field_axioms(f: FieldSpec) -> None:
    # nonzero elements must form a group under mul: every row of mul is a permutation
    for a in range(1, f.q):
        if sorted(f.mul[a][1:]) != list(range(1, f.q)):
            raise DomainError(f"modulus for q={f.q} is reducible")


def as_field(spec) -> FieldSpec:
    return spec if isinstance(spec, FieldSpec) else gf(int(spec))
