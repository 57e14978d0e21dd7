"""Exact rational helpers.

Scalars are :class:`fractions.Fraction`.  Matrices are plain lists of rows of
Fractions; anything heavier than a few hundred entries is handed to
python-flint's ``fmpq_mat`` and converted back.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

Matrix = list[list[Fraction]]
Vector = list[Fraction]


class SingularMatrix(ArithmeticError):
    pass


def rational(x) -> Fraction:
    """Coerce ints, Fractions, flint rationals and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_rational(x) -> str:
    x = rational(x)
    return f"{x.numerator}/{x.denominator}"


def to_flint(rows: Sequence[Sequence]) -> flint.fmpq_mat:
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    flat = [0] * (nr * nc)
    for i, r in enumerate(rows):
        base = i * nc
        for j, x in enumerate(r):
            if x:
                flat[base + j] = x if isinstance(x, (int, flint.fmpq)) else flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq_mat(nr, nc, flat)


def from_flint(m: flint.fmpq_mat) -> Matrix:
    nc = m.ncols()
    ents = [Fraction(int(e.p), int(e.q)) for e in m.entries()]
    return [ents[i:i + nc] for i in range(0, len(ents), nc)]


def zeros(nr: int, nc: int) -> Matrix:
    return [[Fraction(0)] * nc for _ in range(nr)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if not a or not b:
        return [[] for _ in a]
    if len(a) * len(b) * len(b[0]) > 4000:
        return from_flint(to_flint(a) * to_flint(b))
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> Vector:
    nc = len(a[0]) if a else 0
    out = [Fraction(0)] * nc
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def dot(u: Iterable, v: Iterable) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    return [x + y for x, y in zip(u, v)]


def scale(c, v: Sequence) -> Vector:
    return [c * x for x in v]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    if n == 0:
        return []
    if any(len(r) != n for r in a):
        raise SingularMatrix("matrix is not square")
    m = to_flint(a)
    if m.det() == 0:
        raise SingularMatrix("matrix is singular")
    return from_flint(m.inv())


def rank(a: Sequence[Sequence]) -> int:
    if not a or not a[0]:
        return 0
    return to_flint(a).rank()


def is_invertible(a: Sequence[Sequence]) -> bool:
    return len(a) == (len(a[0]) if a else 0) and (not a or to_flint(a).det() != 0)


def solve_affine(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    aug = to_flint([list(row) + [bi] for row, bi in zip(a, b)])
    red, rk = aug.rref()
    red = from_flint(red)
    x = [Fraction(0)] * nc
    for i in range(rk):
        row = red[i]
        lead = next(j for j, e in enumerate(row) if e != 0)
        if lead == nc:
            return None
        x[lead] = row[nc]
    return x


def kron_vec(u: Sequence, v: Sequence) -> Vector:
    return [x * y for x in u for y in v]


def is_zero(a) -> bool:
    if isinstance(a, (list, tuple)):
        return all(is_zero(x) for x in a)
    return a == 0
