from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quotmmp.exactcore import (QQ, ExactMatrix, FieldMismatchError, FieldSpec, gaussian_binomial,
                               kernel_basis, rank, row_space, rref, subspace_contains)

import oracles

F7 = FieldSpec.prime(7)


def matrices(max_rows=5, max_cols=5, lo=-4, hi=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_field_coercion():
    assert QQ.coerce(3) == Fraction(3)
    assert F7.coerce(10) == 3
    assert F7.coerce(Fraction(1, 2)) == 4
    with pytest.raises(FieldMismatchError):
        QQ.coerce(0.5)
    with pytest.raises(FieldMismatchError):
        F7.coerce(Fraction(1, 7))
    with pytest.raises(ValueError):
        FieldSpec.prime(9)


def test_rref_small_example():
    m = ExactMatrix([[2, 4, 6], [1, 2, 4]])
    R, rk, piv = rref(m)
    assert rk == 2 and piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_field_mismatch_on_stack():
    with pytest.raises(FieldMismatchError):
        ExactMatrix([[1]]).vstack(ExactMatrix([[1]], F7))


@given(matrices())
def test_rref_idempotent(rows):
    m = ExactMatrix(rows)
    R, _, _ = rref(m)
    assert rref(R)[0] == R


@given(matrices())
def test_rank_of_transpose(rows):
    m = ExactMatrix(rows)
    assert rank(m) == rank(m.T)


@given(matrices())
def test_rank_nullity(rows):
    m = ExactMatrix(rows)
    K = kernel_basis(m)
    assert rank(m) + K.rows == m.cols
    if K.rows:
        assert all(x == 0 for row in (m @ K.T).tolist() for x in row)


@given(matrices(lo=0, hi=6))
def test_prime_field_matches_integer_oracle(rows):
    assert rank(ExactMatrix(rows, F7)) == oracles.rank_mod(rows, 7)
    assert row_space(ExactMatrix(rows, F7)).tolist() == [list(r) for r in oracles.rref_mod(rows, 7)]


@given(matrices())
def test_row_space_contains_rows(rows):
    m = ExactMatrix(rows)
    assert subspace_contains(row_space(m), m)


@given(st.integers(0, 6), st.integers(0, 6), st.sampled_from([2, 3, 5, 7]))
def test_gaussian_binomial_symmetry(k, extra, q):
    N = k + extra
    assert gaussian_binomial(k, N, q) == gaussian_binomial(N - k, N, q)


@pytest.mark.parametrize("k,N,q", [(0, 3, 2), (1, 3, 2), (2, 4, 2), (1, 3, 3), (2, 3, 3), (3, 3, 2)])
def test_gaussian_binomial_brute_force(k, N, q):
    assert gaussian_binomial(k, N, q) == oracles.count_subspaces_bruteforce(k, N, q)


def test_gaussian_binomial_guards():
    with pytest.raises(ValueError):
        gaussian_binomial(3, 2, 2)
    with pytest.raises(ValueError):
        gaussian_binomial(1, 2, 1)
    assert gaussian_binomial(3, 6, 2) == 1395
