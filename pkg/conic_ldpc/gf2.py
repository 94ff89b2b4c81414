"""Binary matrices and Gaussian elimination over GF(2).

Sparse matrices are stored row-major in CSR form. Elimination runs on a dense
bit-packed copy: every row is an array of 64-bit words, column ``j`` being
bit ``j % 64`` of word ``j // 64``.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse

from .exceptions import (
    MatrixFormatError,
    OddQRequiredError,
    UnknownFamilyError,
    UnsupportedFamilyError,
)

logger = logging.getLogger(__name__)

_WORD_BITS = 64
_WORD = np.dtype("<u8")
_ONE = np.uint64(1)


@dataclass(frozen=True, eq=False)
class SparseBinaryMatrix:
    """A binary matrix given by the sorted supports of its rows.

    Args:
        n_rows (int): Number of rows.
        n_cols (int): Number of columns.
        indptr (np.ndarray): Row ``i`` occupies ``indices[indptr[i]:indptr[i+1]]``.
        indices (np.ndarray): Concatenated column supports.
    """

    n_rows: int
    n_cols: int
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_rows(
        cls, rows: Iterable[Iterable[int]], n_cols: int
    ) -> "SparseBinaryMatrix":
        """Builds a matrix from per-row column supports.

        Raises:
            MatrixFormatError: If a support is unsorted, repeats a column or
                leaves ``[0, n_cols)``.
        """
        supports = [np.asarray(list(row), dtype=np.int64) for row in rows]
        for i, support in enumerate(supports):
            if support.size == 0:
                continue
            if np.any(np.diff(support) <= 0):
                raise MatrixFormatError(i, "columns must be strictly increasing")
            if support[0] < 0 or support[-1] >= n_cols:
                raise MatrixFormatError(i, f"columns must lie in [0, {n_cols})")
        indptr = np.zeros(len(supports) + 1, dtype=np.int64)
        np.cumsum([s.size for s in supports], out=indptr[1:])
        indices = np.concatenate(supports) if supports else np.zeros(0, np.int64)
        return cls(len(supports), n_cols, indptr, indices.astype(np.int64))

    @classmethod
    def from_entries(
        cls, n_rows: int, n_cols: int, rows: np.ndarray, cols: np.ndarray
    ) -> "SparseBinaryMatrix":
        """Builds a matrix from the coordinates of its ones, in any order."""
        rows, cols = np.asarray(rows, np.int64), np.asarray(cols, np.int64)
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        counts = np.bincount(rows, minlength=n_rows)
        return cls.from_rows(np.split(cols, np.cumsum(counts)[:-1]), n_cols)

    @classmethod
    def from_dense(cls, array: np.ndarray) -> "SparseBinaryMatrix":
        array = np.asarray(array)
        rows, cols = np.nonzero(array % 2)
        return cls.from_entries(array.shape[0], array.shape[1], rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def row(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    @property
    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(self.row(i).tolist()) for i in range(self.n_rows)]

    def row_weights(self) -> np.ndarray:
        return np.diff(self.indptr)

    def col_weights(self) -> np.ndarray:
        return np.bincount(self.indices, minlength=self.n_cols)

    def to_csr(self, dtype: type = np.int64) -> scipy.sparse.csr_matrix:
        data = np.ones(self.nnz, dtype=dtype)
        return scipy.sparse.csr_matrix(
            (data, self.indices, self.indptr), shape=self.shape
        )

    def to_dense(self) -> np.ndarray:
        return self.to_csr(np.uint8).toarray()

    def to_bits(self) -> "BitMatrix":
        return BitMatrix.from_sparse(self)

    def transpose(self) -> "SparseBinaryMatrix":
        rows = np.repeat(np.arange(self.n_rows), self.row_weights())
        return SparseBinaryMatrix.from_entries(
            self.n_cols, self.n_rows, self.indices, rows
        )

    def permuted(
        self, row_order: Sequence[int], col_order: Sequence[int]
    ) -> "SparseBinaryMatrix":
        """Row ``i`` of the result is row ``row_order[i]``; same for columns."""
        col_position = np.empty(self.n_cols, dtype=np.int64)
        col_position[np.asarray(col_order)] = np.arange(self.n_cols)
        rows = [np.sort(col_position[self.row(i)]) for i in row_order]
        return SparseBinaryMatrix.from_rows(rows, self.n_cols)

    def syndrome(self, word: np.ndarray) -> np.ndarray:
        """``H @ word`` over GF(2) for a vector or a ``(n_cols, k)`` array."""
        return (self.to_csr() @ np.asarray(word, dtype=np.int64)) % 2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseBinaryMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None


@dataclass(eq=False)
class BitMatrix:
    """A dense binary matrix with rows packed into 64-bit words.

    Padding bits past ``n_cols`` are always zero.
    """

    n_rows: int
    n_cols: int
    words: np.ndarray

    @staticmethod
    def n_words(n_cols: int) -> int:
        return -(-n_cols // _WORD_BITS)

    @classmethod
    def from_sparse(cls, matrix: SparseBinaryMatrix) -> "BitMatrix":
        words = np.zeros((matrix.n_rows, cls.n_words(matrix.n_cols)), dtype=_WORD)
        rows = np.repeat(np.arange(matrix.n_rows), matrix.row_weights())
        cols = matrix.indices
        bits = np.left_shift(_ONE, (cols % _WORD_BITS).astype(_WORD))
        np.bitwise_or.at(words, (rows, cols // _WORD_BITS), bits)
        return cls(matrix.n_rows, matrix.n_cols, words)

    @classmethod
    def from_dense(cls, array: np.ndarray) -> "BitMatrix":
        return cls.from_sparse(SparseBinaryMatrix.from_dense(array))

    def to_dense(self) -> np.ndarray:
        bits = np.unpackbits(self.words.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.n_cols]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.n_rows, self.n_cols, self.words.copy())


def _column_bits(words: np.ndarray, col: int) -> np.ndarray:
    shift = np.uint64(col % _WORD_BITS)
    return (words[:, col // _WORD_BITS] >> shift) & _ONE


def _eliminate(matrix: BitMatrix, *, reduced: bool) -> list[int]:
    """Row-reduces ``matrix`` in place and returns its pivot columns.

    The pivot of each column is the first remaining row holding a one there.
    With ``reduced`` the pivot columns are also cleared above the pivots,
    giving the reduced row echelon form.
    """
    words = matrix.words
    pivots: list[int] = []
    rank = 0
    for col in range(matrix.n_cols):
        if rank == matrix.n_rows:
            break
        hits = np.flatnonzero(_column_bits(words[rank:], col))
        if hits.size == 0:
            continue
        pivot = rank + int(hits[0])
        if pivot != rank:
            words[[rank, pivot]] = words[[pivot, rank]]
        # Rows at or below the pivot are zero left of col, so XOR from its word.
        start = col // _WORD_BITS
        below = rank + 1 + np.flatnonzero(_column_bits(words[rank + 1 :], col))
        if below.size:
            words[below, start:] ^= words[rank, start:]
        if reduced:
            above = np.flatnonzero(_column_bits(words[:rank], col))
            if above.size:
                words[above, start:] ^= words[rank, start:]
        pivots.append(col)
        rank += 1
    return pivots


def rank_gf2(matrix: SparseBinaryMatrix) -> int:
    """Rank over GF(2).

    Args:
        matrix (SparseBinaryMatrix): Any binary matrix.

    Returns:
        int: Its rank.
    """
    bits = matrix.to_bits()
    rank = len(_eliminate(bits, reduced=False))
    logger.debug("Rank of %dx%d matrix: %d", matrix.n_rows, matrix.n_cols, rank)
    return rank


def code_dimension(matrix: SparseBinaryMatrix) -> int:
    """Dimension of the code whose parity-check matrix is ``matrix``."""
    return matrix.n_cols - rank_gf2(matrix)


def redundancy(matrix: SparseBinaryMatrix) -> int:
    """Number of parity checks beyond the rank."""
    return matrix.n_rows - rank_gf2(matrix)


def nullspace_basis(matrix: SparseBinaryMatrix) -> np.ndarray:
    """A basis of ``{x : matrix @ x = 0}`` over GF(2).

    Args:
        matrix (SparseBinaryMatrix): The parity-check matrix.

    Returns:
        np.ndarray: A ``(dimension, n_cols)`` array of 0/1 rows, one basis
        vector per free column of the reduced row echelon form.
    """
    bits = matrix.to_bits()
    pivots = _eliminate(bits, reduced=True)
    free = np.setdiff1d(np.arange(matrix.n_cols), pivots)
    reduced = BitMatrix(len(pivots), matrix.n_cols, bits.words[: len(pivots)])
    basis = np.zeros((free.size, matrix.n_cols), dtype=np.uint8)
    basis[np.arange(free.size), free] = 1
    if pivots:
        basis[:, pivots] = reduced.to_dense()[:, free].T
    return basis


def conjectured_dimension(family: int, q: int) -> int:
    """Closed-form dimension of the family 1 and 2 codes for odd q.

    ``q^3/2 - q^2 + 3q/2 - 1`` for family 1 and
    ``q^3/2 - 5q^2/2 + 9q/2 - 7/2`` for family 2.

    Raises:
        OddQRequiredError: If ``q`` is even.
        UnsupportedFamilyError: For family 3, whose dimension is not a
            polynomial in q.
    """
    if family not in (1, 2, 3):
        raise UnknownFamilyError(family)
    if family == 3:  # noqa: PLR2004
        raise UnsupportedFamilyError(family)
    if q % 2 == 0:
        raise OddQRequiredError(q)
    half = Fraction(1, 2)
    if family == 1:
        value = half * q**3 - q**2 + 3 * half * q - 1
    else:
        value = half * q**3 - 5 * half * q**2 + 9 * half * q - 7 * half
    return int(value)


def interpolate_dimension(samples: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Exact polynomial through ``(q, dimension)`` samples.

    Args:
        samples (Sequence[tuple[int, int]]): Distinct ``q`` with their dimension.

    Returns:
        list[Fraction]: Coefficients, constant term first, of the Lagrange
        interpolant of degree ``len(samples) - 1``.
    """
    coefficients = [Fraction(0)] * len(samples)
    for i, (qi, di) in enumerate(samples):
        basis = [Fraction(1)]
        denominator = Fraction(1)
        for j, (qj, _) in enumerate(samples):
            if j == i:
                continue
            # Multiply the running polynomial by (x - qj).
            basis = [Fraction(0), *basis]
            for k in range(len(basis) - 1):
                basis[k] -= qj * basis[k + 1]
            denominator *= qi - qj
        for k, value in enumerate(basis):
            coefficients[k] += di * value / denominator
    return coefficients


def evaluate_polynomial(coefficients: Sequence[Fraction], q: int) -> Fraction:
    """Evaluates coefficients from :func:`interpolate_dimension` at ``q``."""
    return sum((c * q**k for k, c in enumerate(coefficients)), Fraction(0))
