"""Closed forms for b_n on type A and D quivers.

Twin-root sums on type D come in two readings that differ only in which
case (i in P or i not in P) receives which expression when sigma(alpha) ==
sigma(beta):

``"lemma"``
    i not in P: n T_i (U_i + V_i)^(n-1);  i in P: (U_i + T_i + V_i)^n - (U_i + V_i)^n
``"prop"``
    the two expressions swapped.

Here T_i = sum_{j>i} a[x_{i,j}], U_i = sum_{p in P, p<i, j>i} a[x_{p,j}] and
V_i = sum over thin d > 1_{D^i} of a[d].  Only ``"lemma"`` agrees with the
brute-force decomposition, so it is the default.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .decompose import Decomposition, FusionTable, root_lookup, tensor_power_decomposition
from .errors import UnsupportedShapeError
from .quiver import Quiver, Root, ShapeInfo, detect_shape, dominates, enumerate_positive_roots, m_value, pointwise_product

TWIN_BRANCHES = ("lemma", "prop")
DEFAULT_TWIN_BRANCH = "lemma"


def s_set(d: Root, table: FusionTable) -> frozenset[Root]:
    """Roots d' such that M(d) occurs in M(d') (x) M(d'') for some d''."""
    out = set()
    for (x, y), prod in table.products.items():
        if d in prod:
            out.add(x)
            out.add(y)
    return frozenset(out)


def m_pair(d1: Root, d2: Root) -> int:
    """m(d1 * d2), classified by root kinds.

    It is 2 exactly when one root is a twin x_{i,j} and the other is thin
    with support inside the doubled part {c_1, ..., c_i}.
    """
    prod = pointwise_product(d1.vector, d2.vector)
    if not any(prod):
        raise ValueError("roots have disjoint supports")
    if d1.is_thin == d2.is_thin:
        return 1
    twin, thin = (d1, d2) if d2.is_thin else (d2, d1)
    doubled = {i for i, x in enumerate(twin.vector) if x == 2}
    return 2 if thin.support <= doubled else 1


def power_identity_sides(a: Mapping[Root, int], d: Root, n: int, table: FusionTable) -> tuple[int, int]:
    """Both sides of (sum_{S(d)} m a)^n = sum_{S(d)} m a^{(n)}."""
    a = Decomposition(a)
    S = s_set(d, table)
    an = tensor_power_decomposition(a, n, table)
    weight = {e: m_value(pointwise_product(e.vector, d.vector)) for e in S}
    left = sum(weight[e] * a[e] for e in S) ** n
    right = sum(weight[e] * an[e] for e in S)
    return left, right


def verify_power_identity(a: Mapping[Root, int], d: Root, n: int, table: FusionTable) -> bool:
    left, right = power_identity_sides(a, d, n, table)
    return left == right


# ---------------------------------------------------------------------------
# type D twin sums


@dataclass(frozen=True)
class TwinSumContext:
    """Aggregates of a decomposition that feed the twin-root closed forms.

    ``twin[i]`` = sum_{j>i} a[x_{i,j}] (T_i); ``thin_above[i]`` = sum of a[d]
    over thin d > 1_{D^i} (V_i); ``p_below[i]`` = sum of a[x_{p,j}] over
    p in P, p < i, j > i (U_i); ``twin_from[i]`` = sum of a[x_{i',j'}]
    over i' >= i.  All lists are indexed by i = 1..l-3 (index 0 unused).
    """

    same_orientation: bool
    P: frozenset[int]
    twin: tuple[int, ...]
    thin_above: tuple[int, ...]
    p_below: tuple[int, ...]
    p_upto: tuple[int, ...]
    twin_from: tuple[int, ...]
    twin_after: tuple[int, ...]

    @classmethod
    def build(cls, a: Mapping[Root, int], shape: ShapeInfo) -> "TwinSumContext":
        if shape.dynkin != "D":
            raise UnsupportedShapeError("twin sums need a type D quiver")
        l = shape.rank
        top = l - 3
        a = Decomposition(a)
        tw = {}
        for r, m in a.items():
            if r.kind == "twin":
                tw[r.twin] = tw.get(r.twin, 0) + m
        idx = range(top + 1)
        twin = [sum(m for (i, j), m in tw.items() if i == k) for k in idx]
        thin_above = []
        p_below = []
        p_upto = []
        for k in idx:
            if k == 0:
                thin_above.append(0)
                p_below.append(0)
                p_upto.append(0)
                continue
            dk = shape.d_vector(k)
            thin_above.append(
                sum(m for r, m in a.items() if r.is_thin and r.vector != dk and dominates(r.vector, dk))
            )
            p_below.append(sum(m for (p, j), m in tw.items() if p in shape.P and p < k and j > k))
            p_upto.append(sum(m for (p, j), m in tw.items() if p in shape.P and p <= k and j > k))
        twin_from = [sum(m for (i, j), m in tw.items() if i >= k) for k in idx]
        twin_after = [sum(m for (i, j), m in tw.items() if i > k) for k in idx]
        return cls(
            shape.same_orientation,
            shape.P,
            tuple(twin),
            tuple(thin_above),
            tuple(p_below),
            tuple(p_upto),
            tuple(twin_from),
            tuple(twin_after),
        )

    @property
    def top(self) -> int:
        return len(self.twin) - 1


def twin_sum_at(i: int, n: int, ctx: TwinSumContext, branch: str = DEFAULT_TWIN_BRANCH) -> int:
    """Closed form for sum_{j>i} a^{(n)}[x_{i,j}]."""
    if branch not in TWIN_BRANCHES:
        raise ValueError(f"unknown twin branch {branch!r}")
    V = ctx.thin_above[i]
    if not ctx.same_orientation:
        return (ctx.twin_from[i] + V) ** n - (ctx.twin_after[i] + V) ** n
    linear = n * ctx.twin[i] * (ctx.p_below[i] + V) ** (n - 1)
    difference = (ctx.p_upto[i] + V) ** n - (ctx.p_below[i] + V) ** n
    in_P = i in ctx.P
    if branch == "lemma":
        return difference if in_P else linear
    return linear if in_P else difference


def twin_sum(a: Mapping[Root, int], n: int, ctx: TwinSumContext, branch: str = DEFAULT_TWIN_BRANCH) -> int:
    """Closed form for the total twin multiplicity in M^{(x) n}."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(twin_sum_at(i, n, ctx, branch) for i in range(1, ctx.top + 1))


# ---------------------------------------------------------------------------
# b_n


def _length_two_roots(shape: ShapeInfo) -> list[Root]:
    return [r for r in enumerate_positive_roots(shape) if r.length == 2]


def _vertex_and_edge_terms(a: Decomposition, n: int, shape: ShapeInfo, weighted: bool) -> int:
    dims = a.dim_vector(shape.rank)
    total = sum(x**n for x in dims)
    for d in _length_two_roots(shape):
        s = 0
        for e, m in a.items():
            if dominates(e.vector, d.vector):
                s += (m_pair(e, d) if weighted else 1) * m
        total -= s**n
    return total


def b_n_formula_type_A(a: Mapping[Root, int], n: int, shape: ShapeInfo) -> int:
    if shape.dynkin != "A":
        raise UnsupportedShapeError(f"type A formula applied to {shape.name}")
    if n < 1:
        raise ValueError("n must be positive")
    return _vertex_and_edge_terms(Decomposition(a), n, shape, weighted=False)


def b_n_formula_type_D(
    a: Mapping[Root, int],
    n: int,
    shape: ShapeInfo,
    ctx: TwinSumContext | None = None,
    branch: str = DEFAULT_TWIN_BRANCH,
) -> int:
    if shape.dynkin != "D":
        raise UnsupportedShapeError(f"type D formula applied to {shape.name}")
    if n < 1:
        raise ValueError("n must be positive")
    a = Decomposition(a)
    ctx = ctx or TwinSumContext.build(a, shape)
    return _vertex_and_edge_terms(a, n, shape, weighted=True) - twin_sum(a, n, ctx, branch)


def b_n_formula(a: Mapping[Root, int], n: int, shape: ShapeInfo, branch: str = DEFAULT_TWIN_BRANCH) -> int:
    if shape.dynkin == "A":
        return b_n_formula_type_A(a, n, shape)
    if shape.dynkin == "D":
        return b_n_formula_type_D(a, n, shape, branch=branch)
    raise UnsupportedShapeError(f"no closed form for {shape.name}")


# ---------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class EmbeddingMap:
    """Full-subquiver inclusion; ``vertex_map[i]`` is the image of source vertex i."""

    source: ShapeInfo
    target: ShapeInfo
    vertex_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertex_map)) != len(self.vertex_map):
            raise ValueError("vertex map is not injective")
        sq, tq = self.source.quiver, self.target.quiver
        image = set(self.vertex_map)
        want = sorted((self.vertex_map[a.source], self.vertex_map[a.target]) for a in sq.arrows)
        have = sorted((a.source, a.target) for a in tq.arrows if a.source in image and a.target in image)
        if want != have:
            raise ValueError("vertex map is not a full-subquiver embedding")

    def push_vector(self, d) -> tuple[int, ...]:
        v = [0] * self.target.rank
        for i, x in enumerate(d):
            v[self.vertex_map[i]] = x
        return tuple(v)

    def push_root(self, r: Root) -> Root:
        lookup = root_lookup(self.target)
        vec = self.push_vector(r.vector)
        if vec not in lookup:
            raise ValueError(f"{r.id} does not map to a positive root")
        return lookup[vec]


def embed_decomposition(a: Mapping[Root, int], e: EmbeddingMap) -> Decomposition:
    return Decomposition({e.push_root(r): m for r, m in a.items()})


def type_a_in_type_d(shape: ShapeInfo) -> EmbeddingMap:
    """Embed A(l) into D(l + 3) by hanging a new branch vertex with two new spurs off one end."""
    if shape.dynkin != "A":
        raise UnsupportedShapeError("expected a type A quiver")
    q = shape.quiver
    taken = set(q.vertices)

    def fresh(base: str) -> str:
        name = base
        while name in taken:
            name += "'"
        taken.add(name)
        return name

    spur_a, spur_b, branch = fresh("spur_a"), fresh("spur_b"), fresh("branch")
    vertices = list(q.vertices) + [spur_a, spur_b, branch]
    edges = [(a.name, q.vertices[a.source], q.vertices[a.target]) for a in q.arrows]
    names = {a.name for a in q.arrows}

    def fresh_arrow(base: str) -> str:
        name = base
        while name in names:
            name += "'"
        names.add(name)
        return name

    end = q.vertices[shape.path[0]]
    edges += [
        (fresh_arrow("to_spur_a"), branch, spur_a),
        (fresh_arrow("to_spur_b"), branch, spur_b),
        (fresh_arrow("to_path"), branch, end),
    ]
    target = detect_shape(Quiver.from_edges(vertices, edges))
    return EmbeddingMap(shape, target, tuple(range(q.n_vertices)))
