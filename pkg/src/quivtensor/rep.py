"""Explicit quiver representations over the rationals."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import ParseError, UnsupportedShapeError
from .linalg import Matrix, block_diag, inverse, kron, parse_fraction, random_invertible, sparse_rank
from .quiver import DimVector, Quiver, Root, ShapeInfo, enumerate_positive_roots


@dataclass(frozen=True)
class Representation:
    """Vector spaces ``Q^dims[i]`` at each vertex and one matrix per arrow.

    ``maps[k]`` belongs to ``quiver.arrows[k]`` and has shape
    ``dims[target] x dims[source]``.
    """

    quiver: Quiver
    dims: DimVector
    maps: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        q = self.quiver
        if len(self.dims) != q.n_vertices or any(d < 0 for d in self.dims):
            raise ValueError("dims must list one nonnegative integer per vertex")
        if len(self.maps) != len(q.arrows):
            raise ValueError("need exactly one matrix per arrow")
        for a, m in zip(q.arrows, self.maps):
            want = (self.dims[a.target], self.dims[a.source])
            if m.shape != want:
                raise ValueError(f"map on {a.name!r} has shape {m.shape}, expected {want}")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {a.name: m.to_strings() for a, m in zip(self.quiver.arrows, self.maps)},
        }

    @classmethod
    def from_dict(cls, q: Quiver, data: Mapping) -> "Representation":
        try:
            dims = tuple(int(x) for x in data["dims"])
            given = data.get("maps", {})
            unknown = set(given) - {a.name for a in q.arrows}
            if unknown:
                raise ParseError(f"maps given for unknown arrows: {sorted(unknown)}")
            maps = []
            for a in q.arrows:
                rows, cols = dims[a.target], dims[a.source]
                if a.name in given:
                    entries = [[parse_fraction(x) for x in r] for r in given[a.name]]
                    maps.append(Matrix.of(entries, cols) if entries else Matrix.zeros(0, cols))
                else:
                    maps.append(Matrix.zeros(rows, cols))
            return cls(q, dims, tuple(maps))
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"invalid representation: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"invalid representation: {exc}") from exc


def dim_vector(m: Representation) -> DimVector:
    return m.dims


def zero_rep(q: Quiver) -> Representation:
    return Representation(q, (0,) * q.n_vertices, tuple(Matrix.zeros(0, 0) for _ in q.arrows))


def unit_rep(q: Quiver) -> Representation:
    """Scalars at every vertex, identity on every arrow."""
    return thin_rep(q, (1,) * q.n_vertices)


def thin_rep(q: Quiver, vector: Sequence[int]) -> Representation:
    maps = []
    for a in q.arrows:
        rows, cols = vector[a.target], vector[a.source]
        maps.append(Matrix.identity(1) if rows and cols else Matrix.zeros(rows, cols))
    return Representation(q, tuple(vector), tuple(maps))


def _twin_rep(shape: ShapeInfo, i: int, j: int) -> Representation:
    q = shape.quiver
    dims = shape.twin_vector(i, j)
    maps = [None] * len(q.arrows)
    c1 = shape.c[0]
    out_of_c1 = {
        shape.alpha: ((0, 1),),
        shape.beta: ((1, 0),),
    }
    into_c1 = {
        shape.alpha: ((1,), (0,)),
        shape.beta: ((0,), (1,)),
    }
    for k in (shape.alpha, shape.beta):
        entries = out_of_c1[k] if q.arrows[k].source == c1 else into_c1[k]
        maps[k] = Matrix.of(entries)
    for k, g in enumerate(shape.gammas, start=1):
        arrow = q.arrows[g]
        rows, cols = dims[arrow.target], dims[arrow.source]
        if k == i:
            maps[g] = Matrix.of(((1, 1),)) if rows == 1 else Matrix.of(((1,), (1,)))
        elif rows and cols:
            maps[g] = Matrix.identity(rows)
        else:
            maps[g] = Matrix.zeros(rows, cols)
    return Representation(q, dims, tuple(maps))


@lru_cache(maxsize=None)
def indecomposable_rep(shape: ShapeInfo, root: Root) -> Representation:
    """The fixed indecomposable representative M(root)."""
    if shape.dynkin not in ("A", "D"):
        raise UnsupportedShapeError(f"no representatives for {shape.name}")
    root = _root_lookup(shape).get(root.vector)
    if root is None:
        raise ValueError(f"not a positive root of {shape.name}")
    if root.kind == "twin":
        return _twin_rep(shape, *root.twin)
    return thin_rep(shape.quiver, root.vector)


@lru_cache(maxsize=None)
def _root_lookup(shape: ShapeInfo) -> dict[DimVector, Root]:
    return {r.vector: r for r in enumerate_positive_roots(shape)}


def _check_same(m: Representation, n: Representation) -> None:
    if m.quiver != n.quiver:
        raise ValueError("representations live on different quivers")


def direct_sum(m: Representation, n: Representation) -> Representation:
    _check_same(m, n)
    dims = tuple(x + y for x, y in zip(m.dims, n.dims))
    return Representation(m.quiver, dims, tuple(block_diag(x, y) for x, y in zip(m.maps, n.maps)))


def direct_sum_of(q: Quiver, parts: Sequence[Representation]) -> Representation:
    out = zero_rep(q)
    for p in parts:
        out = direct_sum(out, p)
    return out


def pointwise_tensor(m: Representation, n: Representation) -> Representation:
    _check_same(m, n)
    dims = tuple(x * y for x, y in zip(m.dims, n.dims))
    return Representation(m.quiver, dims, tuple(kron(x, y) for x, y in zip(m.maps, n.maps)))


def hom_rows(m: Representation, n: Representation) -> tuple[int, list[dict[int, Fraction]]]:
    """Sparse linear system whose kernel is Hom(m, n).

    Unknowns are the entries of f_i (an ``n.dims[i] x m.dims[i]`` matrix)
    stacked vertex by vertex; one equation per entry of
    ``f_t m_alpha - n_alpha f_s``.
    """
    _check_same(m, n)
    offsets = []
    total = 0
    for dm, dn in zip(m.dims, n.dims):
        offsets.append(total)
        total += dm * dn

    def var(vertex: int, r: int, c: int) -> int:
        return offsets[vertex] + r * m.dims[vertex] + c

    rows = []
    for a, ma, na in zip(m.quiver.arrows, m.maps, n.maps):
        s, t = a.source, a.target
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row: dict[int, Fraction] = {}
                # (f_t m_alpha)[r, c]
                for k in range(m.dims[t]):
                    x = ma.data[k][c]
                    if x:
                        v = var(t, r, k)
                        row[v] = row.get(v, 0) + x
                # -(n_alpha f_s)[r, c]
                for k in range(n.dims[s]):
                    x = na.data[r][k]
                    if x:
                        v = var(s, k, c)
                        row[v] = row.get(v, 0) - x
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return total, rows


def hom_dimension(m: Representation, n: Representation) -> int:
    unknowns, rows = hom_rows(m, n)
    if unknowns == 0:
        return 0
    return unknowns - sparse_rank(rows)


def base_change(m: Representation, mats: Sequence[Matrix]) -> Representation:
    """Transport ``m`` along invertible ``mats[i]`` at each vertex: g_t M_a g_s^-1."""
    inverses = [inverse(g) if g.rows else g for g in mats]
    maps = []
    for a, ma in zip(m.quiver.arrows, m.maps):
        if ma.rows == 0 or ma.cols == 0:
            maps.append(ma)
        else:
            maps.append(mats[a.target] @ ma @ inverses[a.source])
    return Representation(m.quiver, m.dims, tuple(maps))


def random_base_change(m: Representation, rng: random.Random) -> Representation:
    mats = [random_invertible(d, rng) if d else Matrix.zeros(0, 0) for d in m.dims]
    return base_change(m, mats)
