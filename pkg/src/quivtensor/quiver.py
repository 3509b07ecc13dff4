"""Quivers, Dynkin shape detection and positive roots for types A and D."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, UnsupportedShapeError

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with ordered vertex labels and named arrows.

    Arrow endpoints are stored as vertex indices into ``vertices``.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ValueError(f"arrow {a.name!r} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: Iterable[tuple[str, str, str]]) -> "Quiver":
        """Build from ``(name, source_label, target_label)`` triples."""
        index = {v: i for i, v in enumerate(vertices)}
        arrows = []
        for name, s, t in edges:
            if s not in index or t not in index:
                raise ValueError(f"arrow {name!r} references an unknown vertex")
            arrows.append(Arrow(name, index[s], index[t]))
        return cls(tuple(vertices), tuple(arrows))

    @classmethod
    def from_dict(cls, data: Mapping) -> "Quiver":
        try:
            vertices = [str(v) for v in data["vertices"]]
            edges = [(str(a["name"]), str(a["source"]), str(a["target"])) for a in data.get("arrows", [])]
            return cls.from_edges(vertices, edges)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"invalid quiver description: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [
                {"name": a.name, "source": self.vertices[a.source], "target": self.vertices[a.target]}
                for a in self.arrows
            ],
        }

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def index(self, label: str) -> int:
        return self.vertices.index(label)

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise KeyError(name)

    def neighbours(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        return adj

    def is_connected_subset(self, subset: Iterable[int]) -> bool:
        """True iff the full subquiver on ``subset`` is nonempty and connected."""
        subset = set(subset)
        if not subset:
            return False
        adj = self.neighbours()
        start = next(iter(subset))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in subset and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == subset

    def digest(self) -> str:
        """Stable hash of the quiver description (labels, order and arrows)."""
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


# ---------------------------------------------------------------------------
# dimension vectors


def pointwise_product(d: Sequence[int], e: Sequence[int]) -> DimVector:
    if len(d) != len(e):
        raise ValueError("dimension vectors have different lengths")
    return tuple(x * y for x, y in zip(d, e))


def m_value(d: Sequence[int]) -> int:
    """Smallest positive entry of ``d``."""
    positive = [x for x in d if x > 0]
    if not positive:
        raise ValueError("m(d) is undefined for the zero vector")
    return min(positive)


def dominates(d: Sequence[int], e: Sequence[int]) -> bool:
    """Entrywise ``d >= e``."""
    if len(d) != len(e):
        raise ValueError("dimension vectors have different lengths")
    return all(x >= y for x, y in zip(d, e))


def support(d: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(d) if x)


def vector_id(d: Sequence[int]) -> str:
    return ",".join(str(x) for x in d)


def parse_vector_id(text: str, length: int | None = None) -> DimVector:
    """Inverse of :func:`vector_id`; ``"101"`` is accepted when ``length`` says entries are single digits."""
    if "," not in text and length is not None and len(text) == length and length > 1:
        text = ",".join(text)
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad root identifier {text!r}") from exc


# ---------------------------------------------------------------------------
# roots and shapes


@dataclass(frozen=True, order=True)
class Root:
    """A positive root, ordered lexicographically by dimension vector.

    ``twin`` holds ``(i, j)`` for the type D root x_{i,j} and is None for
    thin roots.
    """

    vector: DimVector
    kind: str = field(default="thin", compare=False)
    twin: tuple[int, int] | None = field(default=None, compare=False)

    @property
    def id(self) -> str:
        return vector_id(self.vector)

    @property
    def length(self) -> int:
        return sum(self.vector)

    @property
    def is_thin(self) -> bool:
        return self.kind == "thin"

    @property
    def support(self) -> frozenset[int]:
        return support(self.vector)

    def __repr__(self) -> str:
        tag = f"x{self.twin[0]}{self.twin[1]}" if self.twin else "thin"
        return f"Root({self.id}; {tag})"


@dataclass(frozen=True)
class ShapeInfo:
    """Detected Dynkin shape together with the canonical labelling.

    For type A, ``path`` lists vertex indices along the path.  For type D,
    ``a``, ``b`` are the spur vertices, ``c`` = (c_1, ..., c_{l-2}) with c_1
    the branch vertex, ``alpha``/``beta`` the arrows at the spurs and
    ``gammas[k-1]`` the arrow between c_k and c_{k+1}.  ``sigma[arrow] == 1``
    iff that arrow points toward c_1.
    """

    quiver: Quiver
    dynkin: str
    rank: int
    path: tuple[int, ...] = ()
    a: int | None = None
    b: int | None = None
    c: tuple[int, ...] = ()
    alpha: int | None = None
    beta: int | None = None
    gammas: tuple[int, ...] = ()
    sigma: tuple[int, ...] = ()
    P: frozenset[int] = frozenset()

    @property
    def name(self) -> str:
        return f"{self.dynkin}{self.rank}" if self.dynkin in "AD" else "general"

    @property
    def same_orientation(self) -> bool:
        """sigma(alpha) == sigma(beta); only meaningful for type D."""
        return self.sigma[self.alpha] == self.sigma[self.beta]

    def twin_vector(self, i: int, j: int) -> DimVector:
        """Dimension vector of x_{i,j} in quiver vertex order."""
        if not (self.dynkin == "D" and 1 <= i < j <= self.rank - 2):
            raise ValueError(f"x_{{{i},{j}}} is not a twin root of {self.name}")
        v = [0] * self.rank
        v[self.a] = v[self.b] = 1
        for k in range(1, j + 1):
            v[self.c[k - 1]] = 2 if k <= i else 1
        return tuple(v)

    def d_vector(self, i: int) -> DimVector:
        """Indicator vector of the subquiver D^i = {a, b, c_1, ..., c_i}."""
        v = [0] * self.rank
        v[self.a] = v[self.b] = 1
        for k in range(i):
            v[self.c[k]] = 1
        return tuple(v)


def _is_tree(q: Quiver) -> bool:
    n = q.n_vertices
    if n == 0 or len(q.arrows) != n - 1:
        return False
    if any(a.source == a.target for a in q.arrows):
        return False
    pairs = {frozenset((a.source, a.target)) for a in q.arrows}
    if len(pairs) != len(q.arrows):
        return False
    return q.is_connected_subset(range(n))


def _walk_path(adj: list[set[int]], start: int, forbidden: set[int]) -> list[int]:
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [w for w in adj[cur] if w != prev and w not in forbidden]
        if not nxt:
            return path
        prev, cur = cur, nxt[0]
        path.append(cur)


def _arrow_between(q: Quiver, u: int, v: int) -> int:
    for k, a in enumerate(q.arrows):
        if {a.source, a.target} == {u, v}:
            return k
    raise ValueError("no arrow between the given vertices")


def detect_shape(q: Quiver) -> ShapeInfo:
    """Classify ``q`` as A(l), D(l) or general and fix the canonical labelling.

    In D(4) all three leaves hang off the branch vertex; the leaf with the
    largest input index becomes c_2 and the other two are a, b by input
    index.  For D(l >= 5) a and b are the two leaf neighbours of the branch
    vertex, ordered by input index.
    """
    n = q.n_vertices
    general = ShapeInfo(q, "general", n)
    if not _is_tree(q):
        return general
    adj = q.neighbours()
    degrees = [len(s) for s in adj]
    if max(degrees, default=0) <= 2:
        if n == 1:
            return ShapeInfo(q, "A", 1, path=(0,))
        ends = sorted(i for i, d in enumerate(degrees) if d == 1)
        return ShapeInfo(q, "A", n, path=tuple(_walk_path(adj, ends[0], set())))
    branch = [i for i, d in enumerate(degrees) if d == 3]
    if len(branch) != 1 or max(degrees) > 3:
        return general
    c1 = branch[0]
    leaves = sorted(w for w in adj[c1] if degrees[w] == 1)
    if len(leaves) < 2:
        return general
    if len(leaves) == 3:
        a, b, tail_start = leaves
    else:
        a, b = leaves
        (tail_start,) = [w for w in adj[c1] if w not in (a, b)]
    tail = _walk_path(adj, tail_start, {c1})
    c = (c1, *tail)
    if len(c) + 2 != n:
        return general
    alpha = _arrow_between(q, c1, a)
    beta = _arrow_between(q, c1, b)
    gammas = tuple(_arrow_between(q, c[k], c[k + 1]) for k in range(len(c) - 1))
    sigma = [0] * len(q.arrows)
    sigma[alpha] = int(q.arrows[alpha].target == c1)
    sigma[beta] = int(q.arrows[beta].target == c1)
    for k, g in enumerate(gammas):
        sigma[g] = int(q.arrows[g].target == c[k])
    P = frozenset(k for k in range(1, n - 2) if sigma[gammas[k - 1]] != sigma[alpha])
    return ShapeInfo(
        q, "D", n, a=a, b=b, c=c, alpha=alpha, beta=beta, gammas=gammas, sigma=tuple(sigma), P=P
    )


def enumerate_positive_roots(shape: ShapeInfo) -> tuple[Root, ...]:
    """All positive roots of a type A or D quiver, sorted by dimension vector."""
    if shape.dynkin not in ("A", "D"):
        raise UnsupportedShapeError(f"root enumeration needs type A or D, got {shape.name}")
    q = shape.quiver
    n = q.n_vertices
    roots = []
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            if q.is_connected_subset(subset):
                roots.append(Root(tuple(int(i in subset) for i in range(n))))
    if shape.dynkin == "D":
        for i in range(1, n - 2):
            for j in range(i + 1, n - 1):
                roots.append(Root(shape.twin_vector(i, j), "twin", (i, j)))
    return tuple(sorted(roots))


def expected_root_count(shape: ShapeInfo) -> int:
    l = shape.rank
    return l * (l + 1) // 2 if shape.dynkin == "A" else l * (l - 1)


# ---------------------------------------------------------------------------
# standard constructions


def type_a_quiver(l: int, orientation: Sequence[int] | None = None) -> Quiver:
    """Path 1 - 2 - ... - l; ``orientation[k] == 1`` points arrow k leftwards."""
    orientation = orientation or [0] * (l - 1)
    vertices = [str(i + 1) for i in range(l)]
    edges = []
    for k in range(l - 1):
        s, t = (k, k + 1) if not orientation[k] else (k + 1, k)
        edges.append((f"e{k + 1}", vertices[s], vertices[t]))
    return Quiver.from_edges(vertices, edges)


def type_d_quiver(l: int, toward_branch: Sequence[int] | None = None) -> Quiver:
    """D(l) on vertices a, b, c1, ..., c{l-2}.

    ``toward_branch`` gives sigma for (alpha, beta, gamma_1, ..., gamma_{l-3});
    default is every arrow pointing away from c1.
    """
    if l < 4:
        raise ValueError("type D needs at least 4 vertices")
    sig = list(toward_branch or [0] * (l - 1))
    vertices = ["a", "b"] + [f"c{k}" for k in range(1, l - 1)]
    edges = [
        ("alpha", "a", "c1") if sig[0] else ("alpha", "c1", "a"),
        ("beta", "b", "c1") if sig[1] else ("beta", "c1", "b"),
    ]
    for k in range(1, l - 2):
        near, far = f"c{k}", f"c{k + 1}"
        edges.append((f"gamma{k}", far, near) if sig[k + 1] else (f"gamma{k}", near, far))
    return Quiver.from_edges(vertices, edges)


def all_orientations(kind: str, l: int) -> list[Quiver]:
    n_arrows = l - 1
    build = type_a_quiver if kind == "A" else type_d_quiver
    return [build(l, bits) for bits in itertools.product((0, 1), repeat=n_arrows)]
