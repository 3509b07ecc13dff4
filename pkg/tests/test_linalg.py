import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivtensor import ParseError
from quivtensor.linalg import Matrix, block_diag, inverse, kron, parse_fraction, random_invertible, rank


def dense_rank(rows):
    """Textbook row reduction over Fraction, used as an independent oracle."""
    a = [list(map(Fraction, r)) for r in rows]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
def test_rank_matches_dense_elimination(rows):
    assert rank(Matrix.of(rows)) == dense_rank(rows)


@given(matrices)
def test_rank_invariant_under_duplicated_rows(rows):
    assert rank(Matrix.of(rows + [r[:] for r in rows])) == rank(Matrix.of(rows))


def test_rank_examples():
    assert rank(Matrix.of([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.of([[Fraction(1, 3), 1], [1, 3]])) == 1
    assert rank(Matrix.identity(4)) == 4
    assert rank(Matrix.zeros(3, 2)) == 0


def test_kron_pairing_is_row_major():
    m = Matrix.of([[1, 2], [3, 4]])
    n = Matrix.of([[0, 1], [1, 0]])
    k = kron(m, n)
    assert k.shape == (4, 4)
    # entry ((i, j), (p, q)) = m[i, p] * n[j, q] at (2i + j, 2p + q)
    assert k[1, 2] == m[0, 1] * n[1, 0]
    assert k[2, 1] == m[1, 0] * n[0, 1]
    assert kron(Matrix.of([[1, 1]]), Matrix.zeros(0, 1)).shape == (0, 2)


def test_block_diag_shapes():
    b = block_diag(Matrix.of([[1, 2]]), Matrix.of([[3], [4]]))
    assert b.shape == (3, 3)
    assert b.to_strings() == [["1", "2", "0"], ["0", "0", "3"], ["0", "0", "4"]]


@pytest.mark.parametrize("n", range(1, 6))
def test_random_invertible_has_inverse(n):
    rng = random.Random(n)
    for _ in range(10):
        g = random_invertible(n, rng)
        assert g @ inverse(g) == Matrix.identity(n)
        assert rank(g) == n


def test_inverse_rejects_singular():
    with pytest.raises(ZeroDivisionError):
        inverse(Matrix.of([[1, 2], [2, 4]]))


def test_parse_fraction():
    assert parse_fraction("3/4") == Fraction(3, 4)
    assert parse_fraction(2) == 2
    assert parse_fraction(0.5) == Fraction(1, 2)
    for bad in ("x", True, "1/0", None):
        with pytest.raises(ParseError):
            parse_fraction(bad)
