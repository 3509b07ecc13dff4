import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivtensor import (
    BoundExceededError,
    Decomposition,
    ParseError,
    PartitionSpec,
    b_n_delta,
    canonical_spec,
    chain_sets,
    delta_power_decomposition,
    delta_tensor_decomposition,
    detect_shape,
    enumerate_partitioning_morphisms,
    fusion_table,
    is_coassociative,
    krull_schmidt,
    representation_of,
    validate_spec,
)
from quivtensor.delta import chain_weight_coefficients, delta_power_coefficients, delta_tensor_rep
from quivtensor.quiver import all_orientations, type_a_quiver
from quivtensor.verify import random_decomposition

from conftest import decomp, shape_of

SMALL_QUIVERS = [q for l in (1, 2, 3) for q in all_orientations("A", l)]


def spec(q, blocks):
    return PartitionSpec.from_dict(q, {"E": blocks})


def test_canonical_spec_is_valid():
    q = type_a_quiver(3)
    p = canonical_spec(q)
    assert validate_spec(p).ok
    assert p.to_dict()["E"]["2"] == [["2", "1"], ["2", "2"], ["2", "3"]]


def test_validation_reports_missing_pair():
    q = type_a_quiver(2)
    report = validate_spec(spec(q, {"1": [["1", "1"]], "2": [["2", "1"], ["2", "2"]]}))
    assert not report.covering
    assert report.problems == ["pair (1, 2) is in no block"]


def test_validation_reports_misplaced_diagonal():
    q = type_a_quiver(2)
    report = validate_spec(spec(q, {"1": [["1", "2"]], "2": [["1", "1"], ["2", "1"], ["2", "2"]]}))
    assert not report.diagonal
    assert "(1, 1) is not in E_1" in report.problems


def test_validation_reports_overlap():
    q = type_a_quiver(2)
    report = validate_spec(spec(q, {"1": [["1", "1"], ["1", "2"], ["2", "1"]], "2": [["2", "1"], ["2", "2"]]}))
    assert not report.disjoint
    assert report.problems == ["pair (2, 1) lies in E_1 and E_2"]


def test_partition_parse_errors():
    q = type_a_quiver(2)
    with pytest.raises(ParseError):
        spec(q, {"9": []})
    with pytest.raises(ParseError):
        spec(q, {"1": [["1", "7"]]})
    with pytest.raises(ParseError):
        PartitionSpec.from_dict(q, {"blocks": {}})


def test_partition_json_roundtrip():
    q = type_a_quiver(3, [1, 0])
    for p in enumerate_partitioning_morphisms(q)[::50]:
        assert PartitionSpec.from_dict(q, p.to_dict()) == p


def brute_chain_sets(p, n):
    """Chain sets straight from the definition: a tuple lies in L_{n,k} when some
    choice of intermediate labels walks through the blocks from the left."""
    size = p.quiver.n_vertices
    blocks = p.blocks

    def left(word):
        if len(word) == 1:
            return {word[0]}
        return {k for s in left(word[:-1]) for k in range(size) if (s, word[-1]) in blocks[k]}

    def right(word):
        if len(word) == 1:
            return {word[0]}
        return {k for s in right(word[1:]) for k in range(size) if (word[0], s) in blocks[k]}

    words = list(itertools.product(range(size), repeat=n))
    L = [frozenset(w for w in words if k in left(w)) for k in range(size)]
    R = [frozenset(w for w in words if k in right(w)) for k in range(size)]
    return L, R


def test_chain_sets_match_definition_on_two_vertices():
    for q in all_orientations("A", 2):
        for p in enumerate_partitioning_morphisms(q):
            for n in (2, 3, 4):
                c = chain_sets(p, n)
                L, R = brute_chain_sets(p, n)
                assert list(c.L) == L and list(c.R) == R


def test_chain_sets_n2_are_blocks():
    q = type_a_quiver(3)
    for p in enumerate_partitioning_morphisms(q)[::37]:
        c = chain_sets(p, 2)
        assert list(c.L) == list(p.blocks) == list(c.R)


def test_canonical_chain_sets_first_letter():
    q = type_a_quiver(3)
    p = canonical_spec(q)
    for n in range(2, 7):
        c = chain_sets(p, n)
        for k in range(3):
            want = frozenset(w for w in itertools.product(range(3), repeat=n) if w[0] == k)
            assert c.L[k] == want == c.R[k]


def test_coassociativity_examples():
    assert is_coassociative(canonical_spec(type_a_quiver(3)))
    assert is_coassociative(canonical_spec(type_a_quiver(1)))
    q = type_a_quiver(2)
    p = spec(q, {"1": [["1", "1"], ["1", "2"], ["2", "1"]], "2": [["2", "2"]]})
    L, R = brute_chain_sets(p, 3)
    assert (L == R) is True
    assert is_coassociative(p)


def test_non_coassociative_spec_exists_on_three_vertices():
    q = type_a_quiver(3)
    bad = [p for p in enumerate_partitioning_morphisms(q) if not is_coassociative(p)]
    assert len(bad) == 729 - 35
    with pytest.raises(ValueError):
        delta_tensor_decomposition(Decomposition(), Decomposition(), bad[0], fusion_table(detect_shape(q)))


def test_is_coassociative_rejects_invalid_spec():
    q = type_a_quiver(2)
    with pytest.raises(ValueError):
        is_coassociative(spec(q, {"1": [["1", "1"]], "2": [["2", "2"]]}))


@pytest.mark.parametrize("l,count,coassociative", [(1, 1, 1), (2, 4, 4), (3, 729, 35)])
def test_enumeration_counts(l, count, coassociative):
    specs = enumerate_partitioning_morphisms(type_a_quiver(l))
    assert len(specs) == count
    assert len(enumerate_partitioning_morphisms(type_a_quiver(l), coassociative_only=True)) == coassociative


def test_enumeration_bound():
    with pytest.raises(BoundExceededError):
        enumerate_partitioning_morphisms(type_a_quiver(5))


def test_unit_delta_square_on_a3(a3, a3_table):
    u = decomp(a3, {"1,1,1": 1})
    got = delta_tensor_decomposition(u, u, canonical_spec(a3.quiver), a3_table)
    assert got == decomp(a3, {"1,1,1": 1, "1,0,0": 2, "0,1,0": 2, "0,0,1": 2})
    assert got.total() == 7
    assert delta_power_decomposition(u, 2, canonical_spec(a3.quiver), a3_table) == got


def test_simple_times_module_expansion(a3, a3_table):
    # M(1_k) (x)^Delta N = sum_i (sum_{(k, j) in E_i} dim N_j) M(1_i)
    rng = random.Random(4)
    for p in enumerate_partitioning_morphisms(a3.quiver, coassociative_only=True):
        n = random_decomposition(a3_table.roots, rng)
        dn = n.dim_vector(3)
        for k in range(3):
            s = decomp(a3, {",".join("1" if i == k else "0" for i in range(3)): 1})
            want = Decomposition(
                {a3_table.lookup(tuple(int(i == t) for i in range(3))): sum(dn[j] for x, j in p.blocks[t] if x == k) for t in range(3)}
            )
            assert delta_tensor_decomposition(s, n, p, a3_table) == want


def test_diagonal_only_corrections_vanish():
    q = type_a_quiver(2)
    s = detect_shape(q)
    t = fusion_table(s)
    # E_1 holds every pair with a zero-dimensional factor for M = N = M(1_1)
    p = spec(q, {"1": [["1", "1"]], "2": [["1", "2"], ["2", "1"], ["2", "2"]]})
    m = decomp(s, {"1,0": 2})
    assert delta_tensor_decomposition(m, m, p, t) == decomp(s, {"1,0": 4})


def test_delta_power_small_cases(a3, a3_table):
    a = decomp(a3, {"1,0,0": 1, "1,1,1": 1})
    p = canonical_spec(a3.quiver)
    assert delta_power_decomposition(a, 1, p, a3_table) == a
    assert delta_power_decomposition(a, 2, p, a3_table) == delta_tensor_decomposition(a, a, p, a3_table)


def test_b_n_delta_examples(a3, a3_table, d4_table, d4):
    u = decomp(a3, {"1,1,1": 1})
    assert [b_n_delta(u, n, a3_table) for n in (1, 2, 3)] == [1, 7, 25]
    simple = decomp(d4, {"0,0,1,0": 1})
    assert [b_n_delta(simple, n, d4_table) for n in (1, 2, 5)] == [1, 1, 1]
    a = decomp(a3, {"1,0,0": 1, "1,1,1": 1})
    assert b_n_delta(a, 3, a3_table) == 62
    assert b_n_delta(a, 3, a3_table, method="brute") == 62
    with pytest.raises(ValueError):
        b_n_delta(a, 3, a3_table, method="magic")


@pytest.mark.parametrize("q", SMALL_QUIVERS[1:4], ids=lambda q: q.digest()[:8])
def test_correction_formula_matches_explicit_delta_tensor(q):
    s = detect_shape(q)
    t = fusion_table(s)
    rng = random.Random(q.digest())
    specs = enumerate_partitioning_morphisms(q, coassociative_only=True)
    for p in specs[:: max(1, len(specs) // 6)]:
        for _ in range(3):
            a = random_decomposition(t.roots, rng, max_mult=2)
            b = random_decomposition(t.roots, rng, max_mult=2)
            explicit = delta_tensor_rep(representation_of(s, a), representation_of(s, b), p)
            assert krull_schmidt(explicit, s) == delta_tensor_decomposition(a, b, p, t)


def test_explicit_delta_cube_is_associative(a3, a3_table):
    rng = random.Random(8)
    for p in enumerate_partitioning_morphisms(a3.quiver, coassociative_only=True)[::7]:
        a = random_decomposition(a3_table.roots, rng, max_mult=1)
        m = representation_of(a3, a)
        left = krull_schmidt(delta_tensor_rep(delta_tensor_rep(m, m, p), m, p), a3)
        right = krull_schmidt(delta_tensor_rep(m, delta_tensor_rep(m, m, p), p), a3)
        assert left == right == delta_power_decomposition(a, 3, p, a3_table)


@given(st.sampled_from(SMALL_QUIVERS), st.data())
def test_power_coefficients_agree_with_chain_weights(q, data):
    specs = enumerate_partitioning_morphisms(q, coassociative_only=True)
    p = data.draw(st.sampled_from(specs))
    dims = data.draw(st.lists(st.integers(0, 5), min_size=q.n_vertices, max_size=q.n_vertices))
    n = data.draw(st.integers(1, 6))
    assert delta_power_coefficients(p, dims, n) == chain_weight_coefficients(p, dims, n)


@given(st.sampled_from(SMALL_QUIVERS), st.integers(0, 10**6), st.integers(1, 4))
def test_delta_total_is_independent_of_spec(q, seed, n):
    s = detect_shape(q)
    t = fusion_table(s)
    a = random_decomposition(t.roots, random.Random(seed))
    expected = b_n_delta(a, n, t, method="brute")
    for p in enumerate_partitioning_morphisms(q, coassociative_only=True):
        assert delta_power_decomposition(a, n, p, t).total() == expected


def test_chain_sets_bound():
    with pytest.raises(BoundExceededError):
        chain_sets(canonical_spec(type_a_quiver(3)), 14, bound=10**6)
