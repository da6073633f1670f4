"""Exact rational linear algebra on top of python-flint's ``fmpq_mat``."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

Matrix = fmpq_mat


def to_fraction(x) -> Fraction:
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def matrix(rows: Sequence[Sequence]) -> fmpq_mat:
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return fmpq_mat(n, m, [to_fmpq(x) for r in rows for x in r])


def zeros(n: int, m: int | None = None) -> fmpq_mat:
    return fmpq_mat(n, n if m is None else m)


def identity(n: int) -> fmpq_mat:
    M = fmpq_mat(n, n)
    for i in range(n):
        M[i, i] = 1
    return M


def unit(n: int, i: int, j: int, value=1) -> fmpq_mat:
    M = fmpq_mat(n, n)
    M[i, j] = to_fmpq(value)
    return M


def diagonal(values: Sequence) -> fmpq_mat:
    n = len(values)
    M = fmpq_mat(n, n)
    for i, v in enumerate(values):
        M[i, i] = to_fmpq(v)
    return M


def diag_entries(M: fmpq_mat) -> list[Fraction]:
    return [to_fraction(M[i, i]) for i in range(M.nrows())]


def is_zero(M: fmpq_mat) -> bool:
    return all(x == 0 for x in M.entries())


def is_diagonal(M: fmpq_mat) -> bool:
    n = M.nrows()
    return all(M[i, j] == 0 for i in range(n) for j in range(n) if i != j)


def bracket(X: fmpq_mat, Y: fmpq_mat) -> fmpq_mat:
    return X * Y - Y * X


def kron(A: fmpq_mat, B: fmpq_mat) -> fmpq_mat:
    """Kronecker product; index (i, k) of A x B is i * B.nrows() + k."""
    p, q, r, s = A.nrows(), A.ncols(), B.nrows(), B.ncols()
    M = fmpq_mat(p * r, q * s)
    for i in range(p):
        for j in range(q):
            a = A[i, j]
            if a == 0:
                continue
            for k in range(r):
                for l in range(s):
                    b = B[k, l]
                    if b != 0:
                        M[i * r + k, j * s + l] = a * b
    return M


def block_diag(blocks: Sequence[fmpq_mat]) -> fmpq_mat:
    n = sum(b.nrows() for b in blocks)
    M = fmpq_mat(n, n)
    off = 0
    for b in blocks:
        k = b.nrows()
        for i in range(k):
            for j in range(k):
                if b[i, j] != 0:
                    M[off + i, off + j] = b[i, j]
        off += k
    return M


def from_columns(cols: Sequence[Sequence]) -> fmpq_mat:
    n = len(cols[0])
    M = fmpq_mat(n, len(cols))
    for j, c in enumerate(cols):
        for i, x in enumerate(c):
            if x:
                M[i, j] = to_fmpq(x)
    return M


def flatten(M: fmpq_mat) -> list:
    return list(M.entries())


def rows_matrix(vectors: Sequence[Sequence], width: int | None = None) -> fmpq_mat:
    if not vectors:
        return fmpq_mat(0, width or 0)
    width = len(vectors[0])
    M = fmpq_mat(len(vectors), width)
    for i, v in enumerate(vectors):
        for j, x in enumerate(v):
            if x:
                M[i, j] = to_fmpq(x)
    return M


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors or not len(vectors[0]):
        return 0
    return rows_matrix(vectors).rank()


def rref_rows(vectors: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of the row space and its pivot columns."""
    if not vectors:
        return [], []
    R, r = rows_matrix(vectors).rref()
    n = R.ncols()
    rows, pivots = [], []
    for i in range(r):
        row = [R[i, j] for j in range(n)]
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
        rows.append(row)
    return rows, pivots


def reduce_mod(v: Sequence, rows: Sequence[Sequence], pivots: Sequence[int]) -> list:
    """Reduce v modulo the row space given in reduced echelon form."""
    v = [to_fmpq(x) for x in v]
    for row, p in zip(rows, pivots):
        c = v[p]
        if c != 0:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def nullspace(vectors: Sequence[Sequence], width: int) -> list[list[Fraction]]:
    """Basis of {x : <v, x> = 0 for all v}, integer-scaled."""
    rows, pivots = rref_rows(vectors) if vectors else ([], [])
    free = [j for j in range(width) if j not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            x[p] = -to_fraction(row[f])
        out.append(_integer_scaled(x))
    return out


def _integer_scaled(x: list[Fraction]) -> list[Fraction]:
    from math import gcd, lcm
    den = 1
    for c in x:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in x]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    return [Fraction(c // g) for c in ints]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(list(vectors) + [list(v)]) == rank(vectors)


def exp_nilpotent(X: fmpq_mat) -> fmpq_mat:
    """exp(X) for nilpotent X; the series stops once a power vanishes."""
    n = X.nrows()
    out = identity(n)
    term = identity(n)
    k = 1
    while True:
        term = term * X * fmpq(1, k)
        if is_zero(term):
            return out
        out = out + term
        k += 1
        if k > n + 1:
            raise ValueError("matrix is not nilpotent")


def fmt_matrix(M: fmpq_mat) -> list[list[str]]:
    return [[str(M[i, j]) for j in range(M.ncols())] for i in range(M.nrows())]


def to_rows(M: fmpq_mat) -> list[list[Fraction]]:
    return [[to_fraction(M[i, j]) for j in range(M.ncols())] for i in range(M.nrows())]


def ints(it: Iterable) -> list[int]:
    return [int(to_fraction(x)) for x in it]
