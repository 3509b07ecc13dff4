"""Exact rational matrix helpers.

Matrices are tuples of row tuples of ``Fraction``.  A matrix with zero rows
still remembers its column count through :class:`Matrix`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ParseError


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix data does not match its shape")

    @classmethod
    def of(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in cols) for r in self.data)
        return Matrix(self.rows, other.cols, data)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.data]


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    try:
        return Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {value!r}") from exc


def kron(m: Matrix, n: Matrix) -> Matrix:
    """Kronecker product; row/column pair (i, j) sits at index i * size + j."""
    data = tuple(
        tuple(x * y for x in mr for y in nr)
        for mr in m.data
        for nr in n.data
    )
    return Matrix(m.rows * n.rows, m.cols * n.cols, data)


def block_diag(m: Matrix, n: Matrix) -> Matrix:
    z = Fraction(0)
    top = tuple(r + (z,) * n.cols for r in m.data)
    bottom = tuple((z,) * m.cols + r for r in n.data)
    return Matrix(m.rows + n.rows, m.cols + n.cols, top + bottom)


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for x in row.values():
        den = den * x.denominator // math.gcd(den, x.denominator)
    out = {c: int(x * den) for c, x in row.items() if x}
    g = 0
    for v in out.values():
        g = math.gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def sparse_rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    """Exact rank of a matrix given as sparse rows ``{column: value}``.

    Rows are cleared of denominators and reduced against an echelon basis
    with integer-only cross multiplication (pivot = first nonzero column);
    each reduced row is divided by its content to keep entries small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            p, r = piv[lead], row[lead]
            new = {c: p * v for c, v in row.items()}
            for c, v in piv.items():
                nv = new.get(c, 0) - r * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = math.gcd(g, v)
                if g == 1:
                    break
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return len(pivots)


def rank(m: Matrix) -> int:
    return sparse_rank({j: x for j, x in enumerate(r) if x} for r in m.data)


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n = m.rows
    if m.cols != n:
        raise ValueError("only square matrices are invertible")
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.data)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return Matrix(n, n, tuple(tuple(r[n:]) for r in aug))


def random_invertible(n: int, rng: random.Random, spread: int = 3) -> Matrix:
    """A random invertible rational matrix built as P * L * U.

    L is unit lower triangular, U upper triangular with nonzero diagonal,
    P a random permutation; entries are small rationals.
    """

    def entry() -> Fraction:
        return Fraction(rng.randint(-spread, spread), rng.randint(1, spread))

    def nonzero() -> Fraction:
        while True:
            x = entry()
            if x:
                return x

    lower = Matrix.of([[1 if i == j else (entry() if j < i else 0) for j in range(n)] for i in range(n)], n)
    upper = Matrix.of([[nonzero() if i == j else (entry() if j > i else 0) for j in range(n)] for i in range(n)], n)
    perm = list(range(n))
    rng.shuffle(perm)
    pmat = Matrix.of([[int(perm[i] == j) for j in range(n)] for i in range(n)], n)
    return pmat @ lower @ upper
