"""Randomized oracle comparisons between closed forms and brute-force decomposition.

Every suite returns a plain-dict report with ``passed``, ``checked`` and
``mismatches`` plus suite-specific detail, ready for JSON output.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .decompose import Decomposition, fusion_table, krull_schmidt, representation_of, tensor_powers
from .delta import (
    canonical_spec,
    chain_sets,
    chain_weight_coefficients,
    delta_power_coefficients,
    delta_power_decomposition,
    enumerate_partitioning_morphisms,
    is_coassociative,
    b_n_delta,
)
from .formulas import (
    DEFAULT_TWIN_BRANCH,
    TWIN_BRANCHES,
    TwinSumContext,
    b_n_formula,
    power_identity_sides,
    twin_sum_at,
)
from .quiver import Quiver, Root, all_orientations, detect_shape
from .rep import random_base_change


def orientation_label(q: Quiver) -> str:
    return ";".join(f"{a.name}:{q.vertices[a.source]}->{q.vertices[a.target]}" for a in q.arrows)


def random_decomposition(roots: Sequence[Root], rng: random.Random, max_mult: int = 3, nonzero: bool = False) -> Decomposition:
    while True:
        a = Decomposition({r: rng.randint(0, max_mult) for r in roots})
        if a or not nonzero:
            return a


def default_quivers(kind: str) -> list[Quiver]:
    if kind == "A":
        return [q for l in (2, 3, 4, 5) for q in all_orientations("A", l)]
    return [q for l in (4, 5) for q in all_orientations("D", l)]


def _report(suite: str, points: list[dict], **extra) -> dict:
    bad = [p for p in points if not p["match"]]
    out = {
        "suite": suite,
        "passed": not bad,
        "checked": len(points),
        "mismatches": len(bad),
        "first_counterexample": bad[0] if bad else None,
    }
    out.update(extra)
    out["points"] = points
    return out


def formula_suite(
    quivers: Iterable[Quiver],
    trials: int,
    n_max: int,
    seed: int,
    branch: str = DEFAULT_TWIN_BRANCH,
    suite: str = "formula",
) -> dict:
    """Closed-form b_n against fusion-table powers on random decompositions."""
    rng = random.Random(seed)
    points = []
    for q in quivers:
        shape = detect_shape(q)
        table = fusion_table(shape)
        for _ in range(trials):
            a = random_decomposition(table.roots, rng)
            for n, power in enumerate(tensor_powers(a, n_max, table), start=1):
                value = b_n_formula(a, n, shape, branch)
                oracle = power.total()
                points.append(
                    {
                        "quiver_hash": q.digest(),
                        "shape": shape.name,
                        "orientation": orientation_label(q),
                        "M": a.to_dict()["entries"],
                        "n": n,
                        "formula_value": str(value),
                        "oracle_value": str(oracle),
                        "match": value == oracle,
                    }
                )
    return _report(suite, points)


def twin_branch_suite(quivers: Iterable[Quiver], trials: int, n_max: int, seed: int) -> dict:
    """Per-i twin sums from both readings against brute-force powers."""
    quivers = list(quivers)
    results = {}
    for branch in TWIN_BRANCHES:
        rng = random.Random(seed)
        checked = failures = 0
        first = None
        for q in quivers:
            shape = detect_shape(q)
            table = fusion_table(shape)
            for _ in range(trials):
                a = random_decomposition(table.roots, rng)
                ctx = TwinSumContext.build(a, shape)
                for n, power in enumerate(tensor_powers(a, n_max, table), start=1):
                    for i in range(1, shape.rank - 2):
                        truth = sum(m for r, m in power.items() if r.twin and r.twin[0] == i)
                        value = twin_sum_at(i, n, ctx, branch)
                        checked += 1
                        if value != truth:
                            failures += 1
                            if first is None:
                                first = {
                                    "orientation": orientation_label(q),
                                    "M": a.to_dict()["entries"],
                                    "n": n,
                                    "i": i,
                                    "formula_value": str(value),
                                    "oracle_value": str(truth),
                                }
        results[branch] = {"checked": checked, "failures": failures, "first_counterexample": first}
    passing = [b for b, r in results.items() if r["failures"] == 0]
    return {
        "suite": "twin-branch",
        "passed": passing == [DEFAULT_TWIN_BRANCH],
        "passing_branches": passing,
        "shipped_default": DEFAULT_TWIN_BRANCH,
        "branches": results,
    }


def delta_suite(q: Quiver, trials: int, n_max: int, seed: int) -> dict:
    """Delta powers over every coassociative partitioning morphism of ``q``."""
    rng = random.Random(seed)
    shape = detect_shape(q)
    table = fusion_table(shape)
    specs = enumerate_partitioning_morphisms(q)
    coassoc = [p for p in specs if is_coassociative(p)]
    points = []
    for _ in range(trials):
        a = random_decomposition(table.roots, rng)
        dims = a.dim_vector(q.n_vertices)
        for n in range(1, n_max + 1):
            expected = b_n_delta(a, n, table, method="brute")
            totals = set()
            recursion_ok = True
            for p in coassoc:
                totals.add(delta_power_decomposition(a, n, p, table).total())
                if delta_power_coefficients(p, dims, n) != chain_weight_coefficients(p, dims, n):
                    recursion_ok = False
            points.append(
                {
                    "quiver_hash": q.digest(),
                    "orientation": orientation_label(q),
                    "M": a.to_dict()["entries"],
                    "n": n,
                    "formula_value": str(expected),
                    "oracle_value": sorted(str(t) for t in totals),
                    "match": totals == {expected} and recursion_ok,
                }
            )
    return _report("delta", points, candidates=len(specs), coassociative=len(coassoc))


def chains_suite(q: Quiver, n_max: int) -> dict:
    """Partition law, L3=R3 <=> L4=R4, and the canonical closed form, for every candidate spec."""
    size = q.n_vertices
    all_words = size**n_max
    points = []
    canon = canonical_spec(q)
    for p in enumerate_partitioning_morphisms(q):
        coassoc = is_coassociative(p)
        ok = True
        notes = []
        for n in range(2, n_max + 1):
            c = chain_sets(p, n)
            if sum(len(x) for x in c.L) != size**n or len(set().union(*c.L)) != size**n:
                ok = False
                notes.append(f"L_{n} is not a partition")
            if coassoc and (sum(len(x) for x in c.R) != size**n or len(set().union(*c.R)) != size**n):
                ok = False
                notes.append(f"R_{n} is not a partition")
            for k in range(size):
                if tuple([k] * n) not in c.L[k] or tuple([k] * n) not in c.R[k]:
                    ok = False
                    notes.append(f"constant word missing for k={k}, n={n}")
        l4 = chain_sets(p, 4)
        if coassoc != (l4.L == l4.R):
            ok = False
            notes.append("L3=R3 and L4=R4 disagree")
        if p == canon:
            for n in range(2, n_max + 1):
                c = chain_sets(p, n)
                if any(c.L[k] != {w for w in c.L[k] if w[0] == k} or len(c.L[k]) != size ** (n - 1) for k in range(size)):
                    ok = False
                    notes.append("canonical L_{n,k} is not the first-letter class")
        points.append({"partition": p.to_dict(), "coassociative": coassoc, "match": ok, "notes": notes})
    return _report("chains", points, words=all_words)


def power_identity_suite(quivers: Iterable[Quiver], trials: int, n_max: int, seed: int) -> dict:
    """The S(d)-weighted power identity for thin d; length <= 2 asserted, longer reported."""
    rng = random.Random(seed)
    points = []
    informational = {"checked": 0, "failures": 0}
    for q in quivers:
        shape = detect_shape(q)
        table = fusion_table(shape)
        thin = [d for d in table.roots if d.is_thin]
        for _ in range(trials):
            a = random_decomposition(table.roots, rng)
            for d in thin:
                for n in range(1, n_max + 1):
                    left, right = power_identity_sides(a, d, n, table)
                    if d.length <= 2:
                        points.append(
                            {
                                "orientation": orientation_label(q),
                                "d": d.id,
                                "M": a.to_dict()["entries"],
                                "n": n,
                                "formula_value": str(left),
                                "oracle_value": str(right),
                                "match": left == right,
                            }
                        )
                    else:
                        informational["checked"] += 1
                        informational["failures"] += left != right
    return _report("power-identity", points, longer_thin_roots=informational)


def krull_schmidt_suite(quivers: Iterable[Quiver], trials: int, seed: int, max_mult: int = 3) -> dict:
    """Random direct sums, scrambled by base change, decomposed again."""
    rng = random.Random(seed)
    points = []
    for q in quivers:
        shape = detect_shape(q)
        table = fusion_table(shape)
        for _ in range(trials):
            a = random_decomposition(table.roots, rng, max_mult)
            m = random_base_change(representation_of(shape, a), rng)
            got = krull_schmidt(m, shape)
            points.append(
                {
                    "orientation": orientation_label(q),
                    "M": a.to_dict()["entries"],
                    "recovered": got.to_dict()["entries"],
                    "match": got == a,
                }
            )
    return _report("krull-schmidt", points)


def within_relative(value: int, n: int, target: int, tol_percent: int = 1) -> bool:
    """|value^(1/n) - target| < tol% of target, decided with integers only."""
    return (100 - tol_percent) ** n * target**n < 100**n * value < (100 + tol_percent) ** n * target**n


def fekete_violations(seq: Sequence[int], k_max: int) -> list[tuple[int, int]]:
    """Pairs (m, k), m <= k <= k_max, with seq[m+k] > seq[m] * seq[k] (1-based)."""
    return [
        (m, k)
        for m in range(1, k_max + 1)
        for k in range(m, k_max + 1)
        if seq[m + k - 1] > seq[m - 1] * seq[k - 1]
    ]


def growth_suite(quivers: Iterable[Quiver], trials: int, seed: int, n: int = 200, fekete_max: int = 6) -> dict:
    """Closed-form growth at large n against max vertex dimension and total dimension.

    Also records every violation of b_{m+k} <= b_m b_k for m, k <= ``fekete_max``;
    a point matches only when all three checks hold.
    """
    rng = random.Random(seed)
    points = []
    for q in quivers:
        shape = detect_shape(q)
        table = fusion_table(shape)
        for _ in range(trials):
            a = random_decomposition(table.roots, rng, nonzero=True)
            dims = a.dim_vector(q.n_vertices)
            bn = b_n_formula(a, n, shape)
            bd = b_n_delta(a, n, table)
            seq = [p.total() for p in tensor_powers(a, 2 * fekete_max, table)]
            bad = fekete_violations(seq, fekete_max)
            beta_ok = within_relative(bn, n, max(dims))
            beta_delta_ok = within_relative(bd, n, sum(dims))
            points.append(
                {
                    "orientation": orientation_label(q),
                    "M": a.to_dict()["entries"],
                    "max_dim": max(dims),
                    "total_dim": sum(dims),
                    "beta_ok": beta_ok,
                    "beta_delta_ok": beta_delta_ok,
                    "fekete_ok": not bad,
                    "fekete_first_violation": (
                        {"m": bad[0][0], "k": bad[0][1], "b_m_plus_k": str(seq[sum(bad[0]) - 1]),
                         "b_m_times_b_k": str(seq[bad[0][0] - 1] * seq[bad[0][1] - 1])}
                        if bad else None
                    ),
                    "match": beta_ok and beta_delta_ok and not bad,
                }
            )
    return _report(
        "growth",
        points,
        n=n,
        beta_failures=sum(not p["beta_ok"] for p in points),
        beta_delta_failures=sum(not p["beta_delta_ok"] for p in points),
        fekete_failures=sum(not p["fekete_ok"] for p in points),
    )
