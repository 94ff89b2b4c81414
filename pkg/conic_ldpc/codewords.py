"""Codewords as flag sets, the class involution and minimum distance."""

import logging
import math
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    ClassEqualsBaseError,
    DegenerateClassPairError,
    DimensionTooLargeError,
    ForbiddenClassError,
)
from .ffield import FieldSpec
from .geometry import (
    Conic,
    Flag,
    Line,
    ParallelClass,
    Point,
    allowed_classes,
    incident_conics,
    is_allowed,
    points_on,
    tangent_at,
)
from .gf2 import SparseBinaryMatrix, nullspace_basis
from .incidence import IncidenceStructure, build_structure, incidence_matrix

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 24
_LOW_BITS = 16
_POPCOUNT = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1)


@dataclass(frozen=True, eq=False)
class FlagWord:
    """A binary word of a structure's code, given by the flags in its support.

    Args:
        structure (IncidenceStructure): The structure whose points index bits.
        support (tuple[int, ...]): Sorted point indices set to one.
    """

    structure: IncidenceStructure
    support: tuple[int, ...]

    @classmethod
    def from_flags(
        cls, structure: IncidenceStructure, flags: Iterable[Flag]
    ) -> "FlagWord":
        """Builds the word whose support is ``flags``, each counted once.

        Raises:
            ForbiddenClassError: If a flag's class is not allowed in the
                structure.
        """
        indices = set()
        for flag in flags:
            index = structure.point_index(flag)
            if index < 0:
                raise ForbiddenClassError(flag.direction, structure.family)
            indices.add(index)
        return cls(structure, tuple(sorted(indices)))

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def flags(self) -> list[Flag]:
        return [self.structure.points[i] for i in self.support]

    def to_vector(self) -> np.ndarray:
        vector = np.zeros(self.structure.n_points, dtype=np.uint8)
        vector[list(self.support)] = 1
        return vector


def is_codeword(word: FlagWord) -> bool:
    """Whether every block holds an even number of the word's flags."""
    syndrome = incidence_matrix(word.structure).syndrome(word.to_vector())
    return not np.any(syndrome)


# ---- The class involution ---------------------------------------------------


def second_intersection_class(
    conic: Conic, base_line: Line, point: Point
) -> ParallelClass:
    """Tangent class of ``conic`` at its other point on ``base_line``.

    ``point`` must be a point of both, with ``base_line`` not tangent there.
    """
    spec = conic.spec
    (other,) = [
        candidate
        for candidate in points_on(conic)
        if candidate != point and base_line.contains(spec, candidate)
    ]
    return tangent_at(conic, other).direction


def _check_classes(
    family: int, base_class: ParallelClass, direction: ParallelClass
) -> None:
    for candidate in (base_class, direction):
        if not is_allowed(family, candidate):
            raise ForbiddenClassError(candidate, family)
    if direction == base_class:
        raise ClassEqualsBaseError(direction)


def psi_involution(
    family: int,
    spec: FieldSpec,
    class_l0: ParallelClass,
    class_l: ParallelClass,
) -> ParallelClass:
    """The involution of parallel classes attached to the class of ``L0``.

    A conic tangent to a line of class ``class_l`` at a point P of a line
    ``L0`` meets ``L0`` again at Q; the result is the class of its tangent at
    Q. It does not depend on P, L0 within its class, or the conic.

    Args:
        family (int): Conic family.
        spec (FieldSpec): The field.
        class_l0 (ParallelClass): Class of the base line.
        class_l (ParallelClass): Class to map, different from ``class_l0``.

    Returns:
        ParallelClass: The image class.

    Raises:
        ClassEqualsBaseError: If both classes are equal.
        ForbiddenClassError: If either class is excluded for the family.
    """
    _check_classes(family, class_l0, class_l)
    origin = Point(0, 0)
    base_line = Line.through(spec, origin, class_l0)
    conic = incident_conics(family, spec, Flag.at(spec, origin, class_l))[0]
    return second_intersection_class(conic, base_line, origin)


# ---- Low-weight codewords ---------------------------------------------------


def _word_on_line(
    structure: IncidenceStructure,
    base_line: Line,
    classes: Iterable[ParallelClass],
) -> FlagWord:
    spec = structure.spec
    return FlagWord.from_flags(
        structure,
        (
            Flag.at(spec, point, direction)
            for direction in classes
            for point in base_line.points(spec)
        ),
    )


def _class_pair(
    family: int, spec: FieldSpec, base_class: ParallelClass, class_l: ParallelClass
) -> ParallelClass | None:
    class_m = psi_involution(family, spec, base_class, class_l)
    if class_m != class_l:
        return class_m
    # A class fixed by the involution pairs with any other fixed class.
    for candidate in allowed_classes(family, spec):
        if candidate in (base_class, class_l):
            continue
        if psi_involution(family, spec, base_class, candidate) == candidate:
            return candidate
    return None


def min_weight_codeword(
    family: int,
    spec: FieldSpec,
    base_line: Line,
    class_l: ParallelClass | None = None,
) -> FlagWord:
    """A codeword of weight 2q supported on the points of ``base_line``.

    Its support is the flags of the classes ``[L]`` and ``[M] = psi([L])`` at
    every point of the line. When the involution fixes ``[L]``, ``[M]`` is
    the smallest other class it fixes.

    Args:
        family (int): Conic family.
        spec (FieldSpec): The field.
        base_line (Line): The line carrying the support.
        class_l (ParallelClass | None): The first class; the smallest
            admissible class that works when omitted.

    Returns:
        FlagWord: A codeword of the full structure.

    Raises:
        ClassEqualsBaseError: If ``class_l`` is the class of ``base_line``.
        ForbiddenClassError: If a class is excluded for the family.
        DegenerateClassPairError: If no second class exists.
    """
    base_class = base_line.direction
    if class_l is None:
        candidates = [c for c in allowed_classes(family, spec) if c != base_class]
    else:
        candidates = [class_l]
    for candidate in candidates:
        class_m = _class_pair(family, spec, base_class, candidate)
        if class_m is not None:
            structure = build_structure(family, spec)
            return _word_on_line(structure, base_line, (candidate, class_m))
    raise DegenerateClassPairError(base_class, class_l or base_class)


def line_class_codeword(
    family: int, spec: FieldSpec, base_line: Line, direction: ParallelClass
) -> FlagWord:
    """The weight-q word of one class on ``base_line``, without exceptional blocks.

    Raises:
        DegenerateClassPairError: If the involution moves ``direction``, in
            which case the word is not a codeword.
    """
    base_class = base_line.direction
    if psi_involution(family, spec, base_class, direction) != direction:
        raise DegenerateClassPairError(base_class, direction)
    structure = build_structure(family, spec, exceptional=False)
    return _word_on_line(structure, base_line, (direction,))


# ---- Exhaustive minimum distance --------------------------------------------


def _span_table(vectors: np.ndarray) -> np.ndarray:
    """All ``2**len(vectors)`` XOR combinations, row ``i`` using the bits of ``i``."""
    table = np.zeros((1 << len(vectors), vectors.shape[1]), dtype=np.uint8)
    for j, vector in enumerate(vectors):
        size = 1 << j
        table[size : 2 * size] = table[:size] ^ vector
    return table


def _walk(table: np.ndarray, high: np.ndarray, start: int, stop: int) -> int:
    """Minimum nonzero weight over high-part Gray codes ``start..stop-1``."""
    gray = start ^ (start >> 1)
    current = np.zeros(table.shape[1], dtype=np.uint8)
    for bit in range(len(high)):
        if gray >> bit & 1:
            current ^= high[bit]
    best = math.inf
    for index in range(start, stop):
        if index > start:
            current ^= high[(index & -index).bit_length() - 1]
        weights = _POPCOUNT[table ^ current].sum(axis=1)
        if index == 0:
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def min_distance_exhaustive(
    matrix: SparseBinaryMatrix, limit: int = EXHAUSTIVE_LIMIT, workers: int = 1
) -> int:
    """Exact minimum distance by enumerating every codeword.

    The low basis vectors are expanded into a table of all their
    combinations once; the high ones are walked in Gray-code order, one XOR
    per step, split into contiguous ranges across ``workers`` threads.

    Args:
        matrix (SparseBinaryMatrix): Parity-check matrix of the code.
        limit (int): Largest dimension accepted.
        workers (int): Number of threads.

    Returns:
        int: The minimum weight of a nonzero codeword, 0 for the zero code.

    Raises:
        DimensionTooLargeError: If the dimension exceeds ``limit``.
    """
    basis = nullspace_basis(matrix)
    dimension = basis.shape[0]
    if dimension > limit:
        raise DimensionTooLargeError(dimension, limit)
    if dimension == 0:
        return 0
    packed = np.packbits(basis, axis=1, bitorder="little")
    low = min(dimension, _LOW_BITS)
    table = _span_table(packed[:low])
    high = packed[low:]
    n_high = 1 << len(high)

    workers = max(1, min(workers, n_high))
    bounds = [n_high * i // workers for i in range(workers + 1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(
            lambda i: _walk(table, high, bounds[i], bounds[i + 1]), range(workers)
        )
        best = min(results)
    logger.info("Minimum distance of the dimension-%d code: %d", dimension, best)
    return int(best)


def random_codewords(
    matrix: SparseBinaryMatrix, count: int, rng: np.random.Generator
) -> np.ndarray:
    """``count`` uniformly random codewords as rows of a 0/1 array."""
    basis = nullspace_basis(matrix)
    coefficients = rng.integers(0, 2, size=(count, basis.shape[0]), dtype=np.int64)
    return ((coefficients @ basis) % 2).astype(np.uint8)
