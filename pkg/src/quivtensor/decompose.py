"""Krull-Schmidt decomposition, fusion tables and tensor-power multiplicities."""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InconsistentDecompositionError, ParseError, UnsupportedShapeError
from .quiver import DimVector, Root, ShapeInfo, dominates, enumerate_positive_roots, parse_vector_id
from .rep import Representation, direct_sum_of, hom_dimension, indecomposable_rep, pointwise_tensor

log = logging.getLogger(__name__)

CACHE_VERSION = 1


class Decomposition(Mapping):
    """Multiset of positive roots: ``{root: multiplicity}``.

    Roots with multiplicity zero are dropped, so iteration only sees the
    summands actually present.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Root, int] | Iterable[tuple[Root, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        out: dict[Root, int] = {}
        for root, mult in items:
            mult = int(mult)
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            if mult:
                out[root] = out.get(root, 0) + mult
        self._entries = dict(sorted(out.items()))

    def __getitem__(self, root: Root) -> int:
        return self._entries.get(root, 0)

    def __iter__(self) -> Iterator[Root]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, root) -> bool:
        return root in self._entries

    def __eq__(self, other) -> bool:
        if isinstance(other, Decomposition):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{r.id}: {m}" for r, m in self._entries.items())
        return f"Decomposition({{{body}}})"

    def __add__(self, other: "Decomposition") -> "Decomposition":
        return Decomposition(list(self.items()) + list(other.items()))

    def scaled(self, k: int) -> "Decomposition":
        return Decomposition({r: k * m for r, m in self.items()})

    def total(self) -> int:
        """Number of indecomposable summands counted with multiplicity."""
        return sum(self._entries.values())

    def dim_vector(self, n_vertices: int) -> DimVector:
        v = [0] * n_vertices
        for r, m in self.items():
            for i, x in enumerate(r.vector):
                v[i] += m * x
        return tuple(v)

    def by_vector(self) -> dict[DimVector, int]:
        return {r.vector: m for r, m in self.items()}

    def to_dict(self) -> dict:
        return {"entries": {r.id: str(m) for r, m in self.items()}}

    @classmethod
    def from_dict(cls, shape: ShapeInfo, data: Mapping) -> "Decomposition":
        lookup = root_lookup(shape)
        try:
            entries = data["entries"]
            out = {}
            for key, mult in entries.items():
                vec = parse_vector_id(key, shape.rank)
                if vec not in lookup:
                    raise ParseError(f"{key!r} is not a positive root of {shape.name}")
                mult = int(mult)
                if mult < 0:
                    raise ParseError(f"negative multiplicity for {key!r}")
                out[lookup[vec]] = out.get(lookup[vec], 0) + mult
            return cls(out)
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"invalid decomposition: {exc}") from exc


def _require_dynkin(shape: ShapeInfo) -> None:
    if shape.dynkin not in ("A", "D"):
        raise UnsupportedShapeError(f"decomposition needs type A or D, got {shape.name}")


@lru_cache(maxsize=None)
def root_lookup(shape: ShapeInfo) -> dict[DimVector, Root]:
    return {r.vector: r for r in enumerate_positive_roots(shape)}


def representation_of(shape: ShapeInfo, a: Mapping[Root, int]) -> Representation:
    """Direct sum of the fixed representatives with the given multiplicities."""
    parts = []
    for root, mult in sorted(a.items()):
        parts.extend([indecomposable_rep(shape, root)] * mult)
    return direct_sum_of(shape.quiver, parts)


@lru_cache(maxsize=None)
def hom_matrix(shape: ShapeInfo) -> tuple[tuple[Root, ...], dict[tuple[Root, Root], int]]:
    """Topologically ordered roots and all Hom dimensions between representatives.

    An edge d -> d' exists when Hom(M(d), M(d')) != 0 and d != d'; ties in
    Kahn's algorithm go to the lexicographically smallest vector.
    """
    _require_dynkin(shape)
    roots = enumerate_positive_roots(shape)
    H = {}
    for d in roots:
        md = indecomposable_rep(shape, d)
        for e in roots:
            H[d, e] = hom_dimension(md, indecomposable_rep(shape, e))
    indeg = {e: sum(1 for d in roots if d != e and H[d, e]) for e in roots}
    ready = sorted(e for e in roots if indeg[e] == 0)
    order = []
    while ready:
        d = ready.pop(0)
        order.append(d)
        for e in roots:
            if e != d and H[d, e]:
                indeg[e] -= 1
                if indeg[e] == 0:
                    ready.append(e)
                    ready.sort()
    if len(order) != len(roots):
        raise InconsistentDecompositionError("Hom relation between indecomposables is cyclic")
    return tuple(order), H


def krull_schmidt(m: Representation, shape: ShapeInfo) -> Decomposition:
    """Decompose ``m`` into the fixed indecomposables.

    With h[d] = dim Hom(M(d), m) and H[d][e] = dim Hom(M(d), M(e)) the
    multiplicities solve h = H a.  H is unitriangular in topological order,
    so a is recovered by back substitution.  Only roots e <= dim m can occur
    as summands, which keeps the system small.
    """
    _require_dynkin(shape)
    if m.quiver != shape.quiver:
        raise ValueError("representation and shape use different quivers")
    order, H = hom_matrix(shape)
    candidates = [d for d in order if dominates(m.dims, d.vector)]
    h = {d: hom_dimension(indecomposable_rep(shape, d), m) for d in candidates}
    a: dict[Root, int] = {}
    for idx in range(len(candidates) - 1, -1, -1):
        d = candidates[idx]
        val = h[d] - sum(H[d, e] * a[e] for e in candidates[idx + 1:] if a[e])
        if val < 0:
            raise InconsistentDecompositionError(f"negative multiplicity for {d.id}")
        a[d] = val
    result = Decomposition(a)
    if result.dim_vector(len(m.dims)) != m.dims:
        raise InconsistentDecompositionError("recovered summands do not add up to the dimension vector")
    return result


# ---------------------------------------------------------------------------
# fusion table


@dataclass(frozen=True)
class FusionTable:
    """Decompositions of M(d) (x) M(d') for every pair of positive roots."""

    shape: ShapeInfo
    roots: tuple[Root, ...]
    order: tuple[Root, ...]
    hom: Mapping[tuple[Root, Root], int]
    products: Mapping[tuple[Root, Root], Decomposition]

    def product(self, d: Root, e: Root) -> Decomposition:
        return self.products[(d, e) if d <= e else (e, d)]

    def lookup(self, vector: DimVector) -> Root:
        return root_lookup(self.shape)[tuple(vector)]

    def to_dict(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "quiver_hash": self.shape.quiver.digest(),
            "quiver": self.shape.quiver.to_dict(),
            "roots": [r.id for r in self.roots],
            "order": [r.id for r in self.order],
            "hom": [[self.hom[d, e] for e in self.roots] for d in self.roots],
            "products": {
                f"{d.id}|{e.id}": self.products[d, e].to_dict()["entries"]
                for (d, e) in sorted(self.products)
            },
        }

    @classmethod
    def from_dict(cls, shape: ShapeInfo, data: Mapping) -> "FusionTable":
        if data.get("version") != CACHE_VERSION or data.get("quiver_hash") != shape.quiver.digest():
            raise ParseError("fusion table was computed for a different quiver or format version")
        lookup = root_lookup(shape)
        roots = tuple(lookup[parse_vector_id(x)] for x in data["roots"])
        order = tuple(lookup[parse_vector_id(x)] for x in data["order"])
        hom = {(d, e): int(v) for d, row in zip(roots, data["hom"]) for e, v in zip(roots, row)}
        products = {}
        for key, entries in data["products"].items():
            left, right = key.split("|")
            pair = (lookup[parse_vector_id(left)], lookup[parse_vector_id(right)])
            products[pair] = Decomposition.from_dict(shape, {"entries": entries})
        return cls(shape, roots, order, hom, products)


def fusion_table(shape: ShapeInfo, max_rank: int = 8) -> FusionTable:
    """Tensor every pair of representatives and decompose the result."""
    _require_dynkin(shape)
    if shape.rank > max_rank:
        raise UnsupportedShapeError(f"{shape.name} exceeds the configured rank bound {max_rank}")
    return _fusion_table(shape)


@lru_cache(maxsize=None)
def _fusion_table(shape: ShapeInfo) -> FusionTable:
    roots = enumerate_positive_roots(shape)
    order, H = hom_matrix(shape)
    products = {}
    for i, d in enumerate(roots):
        for e in roots[i:]:
            t = pointwise_tensor(indecomposable_rep(shape, d), indecomposable_rep(shape, e))
            products[d, e] = krull_schmidt(t, shape) if any(t.dims) else Decomposition()
    log.debug("fusion table for %s: %d products", shape.name, len(products))
    return FusionTable(shape, roots, order, H, products)


def cached_fusion_table(shape: ShapeInfo, cache_dir: str | Path | None, max_rank: int = 8) -> FusionTable:
    """Load the table from ``cache_dir`` when a matching file exists, else build and store it."""
    if cache_dir is None:
        return fusion_table(shape, max_rank)
    path = Path(cache_dir) / f"fusion-{shape.quiver.digest()[:16]}.json"
    if path.exists():
        try:
            return FusionTable.from_dict(shape, json.loads(path.read_text()))
        except (ParseError, KeyError, ValueError, json.JSONDecodeError):
            log.info("ignoring stale fusion cache %s", path)
    table = fusion_table(shape, max_rank)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(table.to_dict(), sort_keys=True))
    return table


# ---------------------------------------------------------------------------
# tensor powers


def fusion_product(a: Mapping[Root, int], b: Mapping[Root, int], table: FusionTable) -> Decomposition:
    """Decomposition of (sum a_d M(d)) (x) (sum b_e M(e))."""
    acc: dict[Root, int] = {}
    for d, x in a.items():
        for e, y in b.items():
            for f, k in table.product(d, e).items():
                acc[f] = acc.get(f, 0) + x * y * k
    return Decomposition(acc)


def tensor_power_decomposition(
    a: Mapping[Root, int], n: int, table: FusionTable, squaring: bool = False
) -> Decomposition:
    """Decomposition of M^{(x) n} for M = sum a_d M(d).

    Multiplies left to right by default; ``squaring=True`` uses binary
    powering instead.
    """
    if n < 1:
        raise ValueError("tensor powers are defined for n >= 1")
    a = Decomposition(a)
    if not squaring:
        out = a
        for _ in range(n - 1):
            out = fusion_product(out, a, table)
        return out
    result = None
    base = a
    while n:
        if n & 1:
            result = base if result is None else fusion_product(result, base, table)
        n >>= 1
        if n:
            base = fusion_product(base, base, table)
    return result


def tensor_powers(a: Mapping[Root, int], n_max: int, table: FusionTable) -> list[Decomposition]:
    """``[M^{(x)1}, ..., M^{(x)n_max}]``."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    a = Decomposition(a)
    out = [a]
    for _ in range(n_max - 1):
        out.append(fusion_product(out[-1], a, table))
    return out


def b_n(a: Mapping[Root, int], n: int, table: FusionTable) -> int:
    return tensor_power_decomposition(a, n, table).total()


def integer_nth_root(x: int, n: int) -> int:
    """floor(x ** (1/n)) for nonnegative integers."""
    if x < 0 or n < 1:
        raise ValueError("need x >= 0 and n >= 1")
    if x < 2 or n == 1:
        return x
    y = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        z = ((n - 1) * y + x // y ** (n - 1)) // n
        if z >= y:
            return y
        y = z


def nth_root_string(x: int, n: int, digits: int = 30) -> str:
    """Decimal string of x ** (1/n), truncated to ``digits`` significant digits."""
    if x == 0:
        return "0"
    whole = integer_nth_root(x, n)
    scale = max(digits - len(str(whole)), 0)
    r = integer_nth_root(x * 10 ** (scale * n), n)
    s = str(r)
    if scale == 0:
        return s
    s = s.rjust(scale + 1, "0")
    return f"{s[:-scale]}.{s[-scale:]}"


def beta_estimate(a: Mapping[Root, int], n_max: int, table: FusionTable, digits: int = 30) -> list[str]:
    """``b_n ** (1/n)`` for n = 1..n_max as decimal strings."""
    return [nth_root_string(p.total(), n, digits) for n, p in enumerate(tensor_powers(a, n_max, table), start=1)]
