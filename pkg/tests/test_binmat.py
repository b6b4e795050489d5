import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from bundle_mdpc import geometry as geo
from bundle_mdpc.binmat import (
    BitMatrix,
    BitVector,
    concat_horizontal,
    incidence_matrix,
    kernel_basis,
    mat_mul_gf2,
    mat_mul_int,
    mat_vec,
    max_column_intersection,
    rank_gf2,
)
from bundle_mdpc.errors import DomainError, ShapeError

# H for q = 3 with lines {0,1,3,9}+i and ovals {0,2,5,6}+i, as printed in the
# worked example (dots replaced by zeros).
WORKED_EXAMPLE_H = """\
10001000001011000000110010
11000100000100100000011001
01100010000011010000001100
10110001000000101000000110
01011000100000010100000011
00101100010001001010000001
00010110001001100101000000
00001011000100110010100000
00000101100010011001010000
10000010110000001100101000
01000001011000000110010100
00100000101100000011001010
00010000010110000001100101
"""


def naive_rank(dense):
    A = np.array(dense, dtype=np.uint8) % 2
    rank = 0
    rows, cols = A.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if A[r, c]), None)
        if pivot is None:
            continue
        A[[rank, pivot]] = A[[pivot, rank]]
        for r in range(rows):
            if r != rank and A[r, c]:
                A[r] ^= A[rank]
        rank += 1
    return rank


matrices = st.tuples(st.integers(1, 40), st.integers(1, 140)).flatmap(
    lambda shape: arrays(np.uint8, shape, elements=st.integers(0, 1))
)


@given(matrices)
def test_pack_round_trip(dense):
    M = BitMatrix.from_dense(dense)
    assert np.array_equal(M.to_dense(), dense)
    assert BitMatrix.from_row_ints(M.row_ints(), M.cols) == M
    assert M.T.T == M
    assert np.array_equal(M.T.to_dense(), dense.T)


@given(matrices)
def test_rank_matches_naive_elimination(dense):
    M = BitMatrix.from_dense(dense)
    r = rank_gf2(M)
    assert r == naive_rank(dense)
    assert r == rank_gf2(M.T)


@given(matrices)
def test_kernel_basis(dense):
    M = BitMatrix.from_dense(dense)
    basis = kernel_basis(M)
    assert len(basis) == M.cols - rank_gf2(M)
    for v in basis:
        assert mat_vec(M, v).is_zero()
    if basis:
        B = BitMatrix.from_dense(np.array([v.to_bits() for v in basis]))
        assert rank_gf2(B) == len(basis)


@given(matrices, st.data())
def test_mat_vec_is_matrix_product(dense, data):
    bits = data.draw(arrays(np.uint8, dense.shape[1], elements=st.integers(0, 1)))
    got = mat_vec(BitMatrix.from_dense(dense), BitVector.from_bits(bits)).to_bits()
    assert np.array_equal(got, (dense.astype(int) @ bits.astype(int)) % 2)


def test_worked_example_matrix():
    D = geo.singer_difference_set(3)
    H = concat_horizontal([incidence_matrix(geo.plane(3)), incidence_matrix(geo.bundle(D, 2))])
    expected = BitMatrix.from_text("13 26\n" + WORKED_EXAMPLE_H)
    assert H == expected
    assert H.shape == (13, 26)
    assert rank_gf2(H) == 12
    assert set(H.column_weights().tolist()) == {4}
    assert set(H.row_weights().tolist()) == {8}


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_line_incidence_gram(q):
    A = incidence_matrix(geo.plane(q))
    n = q * q + q + 1
    target = q * np.eye(n, dtype=np.int64) + 1
    assert np.array_equal(mat_mul_int(A, A.T), target)
    assert np.array_equal(mat_mul_int(A.T, A), target)
    assert max_column_intersection(A) == 1


def test_gf2_product():
    A = incidence_matrix(geo.plane(2))
    # A A^T = 2I + J = J mod 2
    assert mat_mul_gf2(A, A.T) == BitMatrix.from_dense(np.ones((7, 7), dtype=np.uint8))
    with pytest.raises(ShapeError):
        mat_mul_int(A, BitMatrix.zeros(3, 3))


def test_fano_first_column():
    A = incidence_matrix(geo.block_system_from_shifts((0, 1, 3), 7, 2))
    assert A.column(0).support() == [0, 1, 3]
    assert np.array_equal(np.roll(np.roll(A.dense, 1, 0), 1, 1), A.dense)


def test_bitvector_basics():
    v = BitVector.from_string("0110100")
    assert v.support() == [1, 2, 4]
    assert v.weight() == 3
    assert v.to_string() == "0110100"
    assert BitVector.from_support(7, [1, 2, 4]) == v
    assert BitVector.from_int(7, v.to_int()) == v
    assert (v ^ v).is_zero()
    assert v[2] == 1 and v[3] == 0
    assert hash(v) == hash(BitVector.from_support(7, [4, 2, 1]))
    big = BitVector.from_support(200, [0, 63, 64, 199])
    assert big.support() == [0, 63, 64, 199]


def test_identity_and_zeros():
    I = BitMatrix.identity(70)
    assert rank_gf2(I) == 70
    assert kernel_basis(I) == []
    assert rank_gf2(BitMatrix.zeros(5, 9)) == 0
    assert len(kernel_basis(BitMatrix.zeros(5, 9))) == 9


def test_text_round_trip_and_errors():
    M = BitMatrix.from_dense(np.eye(3, 5, dtype=np.uint8))
    assert BitMatrix.from_text(M.to_text()) == M
    for bad in ["", "2 x\n", "2 2\n01\n", "2 2\n01\n0a\n"]:
        with pytest.raises(ValueError):
            BitMatrix.from_text(bad)


def test_column_intersection_guards():
    with pytest.raises(DomainError):
        max_column_intersection(BitMatrix.zeros(3, 1))
    with pytest.raises(ShapeError):
        concat_horizontal([BitMatrix.zeros(2, 2), BitMatrix.zeros(3, 2)])
