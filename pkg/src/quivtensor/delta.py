"""Partitioning morphisms on the path algebra and the tensor product they induce.

A partitioning morphism with mu -> mu (x) mu on paths of positive length is
determined by a partition {E_k} of Q_0 x Q_0 with (k, k) in E_k.  Here it is
stored as ``blocks[k]``, a frozenset of vertex-index pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .decompose import Decomposition, FusionTable, fusion_product, root_lookup, tensor_power_decomposition
from .errors import BoundExceededError, ParseError
from .linalg import Matrix, kron
from .quiver import Quiver, Root
from .rep import Representation

Pair = tuple[int, int]


@dataclass(frozen=True)
class PartitionSpec:
    quiver: Quiver
    blocks: tuple[frozenset[Pair], ...]

    @classmethod
    def from_dict(cls, q: Quiver, data: Mapping) -> "PartitionSpec":
        try:
            raw = data["E"]
            index = {v: i for i, v in enumerate(q.vertices)}
            blocks = [set() for _ in q.vertices]
            for key, pairs in raw.items():
                if key not in index:
                    raise ParseError(f"unknown block vertex {key!r}")
                for pair in pairs:
                    x, y = pair
                    if x not in index or y not in index:
                        raise ParseError(f"pair {pair!r} in block {key!r} uses an unknown vertex")
                    blocks[index[key]].add((index[x], index[y]))
            return cls(q, tuple(frozenset(b) for b in blocks))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"invalid partition: {exc}") from exc

    def to_dict(self) -> dict:
        v = self.quiver.vertices
        return {"E": {v[k]: [[v[x], v[y]] for x, y in sorted(b)] for k, b in enumerate(self.blocks)}}

    def block_of(self) -> dict[Pair, int]:
        """Pair -> index of the (first) block containing it."""
        out: dict[Pair, int] = {}
        for k, b in enumerate(self.blocks):
            for p in b:
                out.setdefault(p, k)
        return out


def canonical_spec(q: Quiver) -> PartitionSpec:
    """E_k = {(k, i) | i in Q_0}."""
    n = q.n_vertices
    return PartitionSpec(q, tuple(frozenset((k, i) for i in range(n)) for k in range(n)))


@dataclass
class ValidationReport:
    disjoint: bool
    covering: bool
    diagonal: bool
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covering and self.diagonal


def validate_spec(p: PartitionSpec) -> ValidationReport:
    v = p.quiver.vertices
    n = len(v)
    problems = []
    seen: dict[Pair, int] = {}
    disjoint = True
    for k, b in enumerate(p.blocks):
        for pair in sorted(b):
            if pair in seen:
                disjoint = False
                problems.append(f"pair ({v[pair[0]]}, {v[pair[1]]}) lies in E_{v[seen[pair]]} and E_{v[k]}")
            else:
                seen[pair] = k
    missing = [(x, y) for x in range(n) for y in range(n) if (x, y) not in seen]
    for x, y in missing:
        problems.append(f"pair ({v[x]}, {v[y]}) is in no block")
    diagonal = True
    for k in range(n):
        if (k, k) not in p.blocks[k]:
            diagonal = False
            problems.append(f"({v[k]}, {v[k]}) is not in E_{v[k]}")
    return ValidationReport(disjoint, not missing, diagonal, problems)


# ---------------------------------------------------------------------------
# chain sets


@dataclass(frozen=True)
class ChainSets:
    n: int
    L: tuple[frozenset[tuple[int, ...]], ...]
    R: tuple[frozenset[tuple[int, ...]], ...]


def _blocks_containing(p: PartitionSpec) -> dict[Pair, frozenset[int]]:
    out: dict[Pair, set[int]] = {}
    for k, b in enumerate(p.blocks):
        for pair in b:
            out.setdefault(pair, set()).add(k)
    return {pair: frozenset(ks) for pair, ks in out.items()}


def left_states(p: PartitionSpec, word: Sequence[int]) -> frozenset[int]:
    """All k with ``word`` in L_{n,k}.

    Reads the word left to right: the pair (a_1, a_2) selects its block
    labels, and each further letter a_t pairs with the current label.
    """
    where = _blocks_containing(p)
    states = where.get((word[0], word[1]), frozenset())
    for x in word[2:]:
        states = frozenset(k for s in states for k in where.get((s, x), ()))
    return states


def right_states(p: PartitionSpec, word: Sequence[int]) -> frozenset[int]:
    """All k with ``word`` in R_{n,k}; the mirror image of :func:`left_states`."""
    where = _blocks_containing(p)
    states = where.get((word[-2], word[-1]), frozenset())
    for x in reversed(word[:-2]):
        states = frozenset(k for s in states for k in where.get((x, s), ()))
    return states


def chain_sets(p: PartitionSpec, n: int, bound: int = 10**6) -> ChainSets:
    """Materialize L_{n,k} and R_{n,k} for all k."""
    if n < 1:
        raise ValueError("n must be positive")
    size = p.quiver.n_vertices
    if size**n > bound:
        raise BoundExceededError(f"{size}^{n} tuples exceed the materialization bound {bound}")
    L = [set() for _ in range(size)]
    R = [set() for _ in range(size)]
    if n >= 2:
        for word in itertools.product(range(size), repeat=n):
            for k in left_states(p, word):
                L[k].add(word)
            for k in right_states(p, word):
                R[k].add(word)
    return ChainSets(n, tuple(map(frozenset, L)), tuple(map(frozenset, R)))


@lru_cache(maxsize=4096)
def is_coassociative(p: PartitionSpec) -> bool:
    """L_{3,k} == R_{3,k} for every k."""
    report = validate_spec(p)
    if not report.ok:
        raise ValueError("not a partitioning morphism: " + "; ".join(report.problems))
    c = chain_sets(p, 3)
    return c.L == c.R


def enumerate_partitioning_morphisms(q: Quiver, coassociative_only: bool = False) -> list[PartitionSpec]:
    """Every partition with (k, k) in E_k, in lexicographic order of block choices."""
    n = q.n_vertices
    if n > 4:
        raise BoundExceededError(f"enumeration over {n} vertices is too large ({n}^{n * n - n} candidates)")
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    out = []
    for choice in itertools.product(range(n), repeat=len(off)):
        blocks = [{(k, k)} for k in range(n)]
        for pair, k in zip(off, choice):
            blocks[k].add(pair)
        spec = PartitionSpec(q, tuple(frozenset(b) for b in blocks))
        if not coassociative_only or is_coassociative(spec):
            out.append(spec)
    return out


# ---------------------------------------------------------------------------
# the induced tensor product


def _require_coassociative(p: PartitionSpec) -> None:
    if not is_coassociative(p):
        raise ValueError("the partitioning morphism is not coassociative")


def _simple(table: FusionTable, k: int) -> Root:
    n = table.shape.quiver.n_vertices
    return root_lookup(table.shape)[tuple(int(i == k) for i in range(n))]


def correction_coefficients(p: PartitionSpec, dm: Sequence[int], dn: Sequence[int]) -> list[int]:
    """d_k = sum over (i, j) in E_k other than (k, k) of dm[i] * dn[j]."""
    return [sum(dm[i] * dn[j] for i, j in b if (i, j) != (k, k)) for k, b in enumerate(p.blocks)]


def delta_tensor_decomposition(
    aM: Mapping[Root, int], aN: Mapping[Root, int], p: PartitionSpec, table: FusionTable
) -> Decomposition:
    """(M (x) N) plus d_k copies of the simple at k for every vertex k."""
    _require_coassociative(p)
    n = p.quiver.n_vertices
    dm = Decomposition(aM).dim_vector(n)
    dn = Decomposition(aN).dim_vector(n)
    extra = {_simple(table, k): c for k, c in enumerate(correction_coefficients(p, dm, dn))}
    return fusion_product(aM, aN, table) + Decomposition(extra)


def delta_power_coefficients(p: PartitionSpec, dims: Sequence[int], n: int) -> list[int]:
    """Simple-module corrections in the n-th Delta power.

    c_1 = 0 and
    c_{n+1}[k] = sum_{(a,b) in E_k, (a,b) != (k,k)} dims[a]^n dims[b]
               + sum_i c_n[i] * sum_{(i,j) in E_k} dims[j],
    which is M^{Delta n} (x)^Delta M split into its pointwise part and the
    simples it produces.
    """
    if n < 1:
        raise ValueError("n must be positive")
    size = len(dims)
    coeff = [0] * size
    for m in range(1, n):
        nxt = []
        for k, b in enumerate(p.blocks):
            total = sum(dims[x] ** m * dims[y] for x, y in b if (x, y) != (k, k))
            total += sum(coeff[i] * dims[j] for i, j in b)
            nxt.append(total)
        coeff = nxt
    return coeff


def chain_weight_coefficients(p: PartitionSpec, dims: Sequence[int], n: int) -> list[int]:
    """Same numbers as :func:`delta_power_coefficients`, read off the chain sets.

    Sums dims[a_1] ... dims[a_n] over non-constant tuples in L_{n,k} by a
    left-to-right dynamic program over block labels.
    """
    if n < 2:
        return [0] * len(dims)
    where = p.block_of()
    weight = [0] * len(dims)
    for (x, y), k in where.items():
        weight[k] += dims[x] * dims[y]
    for _ in range(n - 2):
        nxt = [0] * len(dims)
        for (s, y), k in where.items():
            nxt[k] += weight[s] * dims[y]
        weight = nxt
    return [w - d**n for w, d in zip(weight, dims)]


def delta_power_decomposition(
    a: Mapping[Root, int], n: int, p: PartitionSpec, table: FusionTable
) -> Decomposition:
    """M^{(x)^Delta n}: the pointwise power plus simple corrections."""
    _require_coassociative(p)
    a = Decomposition(a)
    dims = a.dim_vector(p.quiver.n_vertices)
    base = tensor_power_decomposition(a, n, table)
    coeff = delta_power_coefficients(p, dims, n)
    return base + Decomposition({_simple(table, k): c for k, c in enumerate(coeff)})


def b_n_delta(a: Mapping[Root, int], n: int, table: FusionTable, method: str = "formula") -> int:
    """b_n(M) + (dim M)^n - sum_k (dim M_k)^n; independent of the morphism.

    ``method`` selects how b_n(M) itself is obtained: the closed form, or
    ``"brute"`` for the fusion-table power.
    """
    from .formulas import b_n_formula

    a = Decomposition(a)
    dims = a.dim_vector(table.shape.quiver.n_vertices)
    if method == "formula":
        base = b_n_formula(a, n, table.shape)
    elif method == "brute":
        base = tensor_power_decomposition(a, n, table).total()
    else:
        raise ValueError(f"unknown method {method!r}")
    return base + sum(dims) ** n - sum(d**n for d in dims)


def delta_tensor_rep(m: Representation, n: Representation, p: PartitionSpec) -> Representation:
    """Explicit M (x)^Delta N.

    The space at k is the direct sum of M_i (x) N_j over (i, j) in E_k (in
    sorted pair order).  An arrow acts as alpha (x) alpha, so it is M_alpha
    (x) N_alpha on the (s, s) summand at its source, landing in the (t, t)
    summand at its target, and zero on every other summand.
    """
    if m.quiver != n.quiver or m.quiver != p.quiver:
        raise ValueError("inputs use different quivers")
    q = m.quiver
    layout = []
    dims = []
    for k, b in enumerate(p.blocks):
        offsets = {}
        total = 0
        for i, j in sorted(b):
            offsets[i, j] = total
            total += m.dims[i] * n.dims[j]
        layout.append(offsets)
        dims.append(total)
    maps = []
    for arrow, ma, na in zip(q.arrows, m.maps, n.maps):
        s, t = arrow.source, arrow.target
        rows = [[Fraction(0)] * dims[s] for _ in range(dims[t])]
        block = kron(ma, na)
        r0 = layout[t][t, t]
        c0 = layout[s][s, s]
        for r in range(block.rows):
            for c in range(block.cols):
                rows[r0 + r][c0 + c] = block.data[r][c]
        maps.append(Matrix(dims[t], dims[s], tuple(tuple(r) for r in rows)))
    return Representation(q, tuple(dims), tuple(maps))
