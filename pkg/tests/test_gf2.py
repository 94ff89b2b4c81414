from fractions import Fraction

import galois
import numpy as np
import pytest

from conic_ldpc.exceptions import (
    MatrixFormatError,
    OddQRequiredError,
    UnknownFamilyError,
    UnsupportedFamilyError,
)
from conic_ldpc.expectations import TABLES, family_dimensions
from conic_ldpc.ffield import field_new
from conic_ldpc.gf2 import (
    BitMatrix,
    SparseBinaryMatrix,
    code_dimension,
    conjectured_dimension,
    evaluate_polynomial,
    interpolate_dimension,
    nullspace_basis,
    rank_gf2,
    redundancy,
)
from conic_ldpc.incidence import build_structure, incidence_matrix

SMALL_TABLE = sorted(key for key in TABLES if key[1] <= 16)
LARGE_TABLE = sorted(key for key in TABLES if key[1] > 16)
FAMILY_THREE_FIT = (5, 7, 9, 11)


def _matrix(family, q):
    return incidence_matrix(build_structure(family, field_new(q)))


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("shape", [(5, 9), (40, 70), (70, 130)])
def test_rank_and_nullspace_match_galois(seed, shape):
    rng = np.random.default_rng(seed)
    dense = (rng.random(shape) < 0.3).astype(np.uint8)
    matrix = SparseBinaryMatrix.from_dense(dense)
    expected = np.linalg.matrix_rank(galois.GF2(dense))
    assert rank_gf2(matrix) == expected
    basis = nullspace_basis(matrix)
    assert basis.shape == (shape[1] - expected, shape[1])
    assert not np.any(matrix.syndrome(basis.T))
    if basis.size:
        assert np.linalg.matrix_rank(galois.GF2(basis)) == basis.shape[0]


def test_rank_of_empty_and_identity():
    assert rank_gf2(SparseBinaryMatrix.from_rows([(), ()], 3)) == 0
    assert rank_gf2(SparseBinaryMatrix.from_dense(np.eye(70, dtype=np.uint8))) == 70
    assert nullspace_basis(SparseBinaryMatrix.from_rows([()], 2)).tolist() == [
        [1, 0],
        [0, 1],
    ]


@pytest.mark.parametrize("family, q", SMALL_TABLE)
def test_tabulated_dimensions(family, q):
    matrix = _matrix(family, q)
    row = TABLES[(family, q)]
    assert matrix.shape == (row.checks, row.length)
    assert code_dimension(matrix) == row.dimension
    assert redundancy(matrix) == row.checks - row.length + row.dimension
    assert rank_gf2(matrix) < row.checks


@pytest.mark.slow
@pytest.mark.parametrize("family, q", LARGE_TABLE)
def test_tabulated_dimensions_large(family, q):
    assert code_dimension(_matrix(family, q)) == TABLES[(family, q)].dimension


def test_redundancy():
    matrix = _matrix(1, 5)
    assert matrix.shape == (125, 125)
    assert redundancy(matrix) == 44


@pytest.mark.parametrize("family", [1, 2])
@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 25, 31])
def test_conjectured_dimension(family, q):
    assert conjectured_dimension(family, q) == TABLES[(family, q)].dimension


def test_conjectured_dimension_errors():
    with pytest.raises(OddQRequiredError):
        conjectured_dimension(1, 8)
    with pytest.raises(UnsupportedFamilyError):
        conjectured_dimension(3, 5)
    with pytest.raises(UnknownFamilyError):
        conjectured_dimension(4, 5)


def test_family_three_is_not_a_cubic():
    dimensions = family_dimensions(3)
    samples = [(q, dimensions[q]) for q in FAMILY_THREE_FIT]
    coefficients = interpolate_dimension(samples)
    assert coefficients == [
        Fraction(239, 16),
        Fraction(-215, 48),
        Fraction(-15, 16),
        Fraction(23, 48),
    ]
    for q, dimension in samples:
        assert evaluate_polynomial(coefficients, q) == dimension
    assert evaluate_polynomial(coefficients, 13) != dimensions[13]
    assert evaluate_polynomial(coefficients, 17) != dimensions[17]


def test_matrix_format_errors():
    with pytest.raises(MatrixFormatError):
        SparseBinaryMatrix.from_rows([(2, 1)], 3)
    with pytest.raises(MatrixFormatError):
        SparseBinaryMatrix.from_rows([(1, 1)], 3)
    with pytest.raises(MatrixFormatError):
        SparseBinaryMatrix.from_rows([(0, 3)], 3)


def test_sparse_matrix_views():
    matrix = SparseBinaryMatrix.from_rows([(0, 2), (1, 2, 3)], 4)
    assert matrix.shape == (2, 4)
    assert matrix.nnz == 5
    assert matrix.rows == [(0, 2), (1, 2, 3)]
    assert matrix.row_weights().tolist() == [2, 3]
    assert matrix.col_weights().tolist() == [1, 1, 2, 1]
    assert matrix.transpose().rows == [(0,), (1,), (0, 1), (1,)]
    assert matrix.transpose().transpose() == matrix
    assert matrix == SparseBinaryMatrix.from_dense(matrix.to_dense())
    assert matrix.syndrome(np.array([1, 1, 1, 0])).tolist() == [0, 0]
    assert matrix.syndrome(np.array([1, 0, 0, 0])).tolist() == [1, 0]
    assert matrix.permuted([1, 0], [3, 2, 1, 0]).rows == [(0, 1, 2), (1, 3)]


@pytest.mark.parametrize("family", [1, 2, 3])
def test_rank_is_invariant_under_permutations(family):
    matrix = _matrix(family, 5)
    rng = np.random.default_rng(family)
    shuffled = matrix.permuted(
        rng.permutation(matrix.n_rows), rng.permutation(matrix.n_cols)
    )
    assert shuffled != matrix
    assert rank_gf2(shuffled) == rank_gf2(matrix)
    assert code_dimension(shuffled) == TABLES[(family, 5)].dimension


def test_bit_matrix_packs_columns():
    dense = np.zeros((2, 130), dtype=np.uint8)
    dense[0, [0, 64, 129]] = 1
    bits = BitMatrix.from_dense(dense)
    assert bits.words.shape == (2, BitMatrix.n_words(130))
    assert np.array_equal(bits.to_dense(), dense)
