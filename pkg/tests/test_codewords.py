import numpy as np
import pytest

from conic_ldpc.codewords import (
    FlagWord,
    is_codeword,
    line_class_codeword,
    min_distance_exhaustive,
    min_weight_codeword,
    psi_involution,
    random_codewords,
    second_intersection_class,
)
from conic_ldpc.exceptions import (
    ClassEqualsBaseError,
    DegenerateClassPairError,
    DimensionTooLargeError,
    ForbiddenClassError,
)
from conic_ldpc.expectations import expected_min_distance
from conic_ldpc.ffield import field_new
from conic_ldpc.geometry import (
    Flag,
    Line,
    ParallelClass,
    Point,
    allowed_classes,
    incident_conics,
)
from conic_ldpc.gf2 import SparseBinaryMatrix
from conic_ldpc.incidence import build_structure, incidence_matrix

FAMILIES = (1, 2, 3)
HAMMING = [
    [1, 0, 1, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1],
]


def _matrix(family, q):
    return incidence_matrix(build_structure(family, field_new(q)))


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("q", [4, 5, 7, 8])
def test_min_weight_codeword(family, q):
    spec = field_new(q)
    base = Line.through(spec, Point(0, 0), allowed_classes(family, spec)[0])
    word = min_weight_codeword(family, spec, base)
    assert word.weight == expected_min_distance(q)
    assert is_codeword(word)
    assert {flag.point for flag in word.flags} == set(base.points(spec))


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("q", [4, 5, 7])
def test_psi_is_an_involution(family, q):
    spec = field_new(q)
    classes = allowed_classes(family, spec)
    for base_class in classes:
        for direction in classes:
            if direction == base_class:
                continue
            image = psi_involution(family, spec, base_class, direction)
            assert image != base_class
            assert psi_involution(family, spec, base_class, image) == direction


@pytest.mark.parametrize("family", FAMILIES)
def test_psi_does_not_depend_on_the_point_or_conic(family):
    spec = field_new(5)
    base_class, direction = allowed_classes(family, spec)[:2]
    expected = psi_involution(family, spec, base_class, direction)
    for point in (Point(1, 2), Point(4, 0), Point(3, 3)):
        base_line = Line.through(spec, point, base_class)
        flag = Flag.at(spec, point, direction)
        for conic in incident_conics(family, spec, flag):
            assert second_intersection_class(conic, base_line, point) == expected


@pytest.mark.parametrize("q", [4, 8])
def test_psi_is_identity_for_family_one_in_even_order(q):
    spec = field_new(q)
    for slope in range(1, q):
        direction = ParallelClass(slope)
        assert psi_involution(1, spec, ParallelClass(0), direction) == direction


def test_psi_negates_slopes_for_family_one_in_odd_order():
    spec = field_new(7)
    for slope in range(1, 7):
        image = psi_involution(1, spec, ParallelClass(0), ParallelClass(slope))
        assert image == ParallelClass(spec.neg(slope))


def test_psi_errors():
    spec = field_new(5)
    with pytest.raises(ClassEqualsBaseError):
        psi_involution(1, spec, ParallelClass(2), ParallelClass(2))
    with pytest.raises(ForbiddenClassError):
        psi_involution(1, spec, ParallelClass(0), ParallelClass.vertical())
    with pytest.raises(ForbiddenClassError):
        psi_involution(2, spec, ParallelClass(0), ParallelClass(1))


def test_flag_word_rejects_forbidden_class():
    spec = field_new(5)
    structure = build_structure(2, spec)
    with pytest.raises(ForbiddenClassError):
        FlagWord.from_flags(structure, [Flag.at(spec, Point(0, 0), ParallelClass(0))])


def test_line_class_codeword():
    spec = field_new(4)
    base = Line.through(spec, Point(0, 1), ParallelClass(0))
    word = line_class_codeword(1, spec, base, ParallelClass(2))
    assert word.weight == 4
    assert not word.structure.exceptional
    assert is_codeword(word)


def test_line_class_codeword_degenerate():
    spec = field_new(5)
    base = Line.through(spec, Point(0, 0), ParallelClass(0))
    with pytest.raises(DegenerateClassPairError):
        line_class_codeword(1, spec, base, ParallelClass(1))


@pytest.mark.parametrize("family, q", [(1, 4), (2, 4), (3, 4), (2, 5)])
def test_exhaustive_minimum_distance(family, q):
    assert min_distance_exhaustive(_matrix(family, q)) == expected_min_distance(q)


def test_exhaustive_threads_agree():
    matrix = _matrix(2, 5)
    assert min_distance_exhaustive(matrix, workers=3) == min_distance_exhaustive(
        matrix
    )


def test_exhaustive_dimension_limit():
    with pytest.raises(DimensionTooLargeError):
        min_distance_exhaustive(_matrix(1, 5))


def test_exhaustive_small_codes():
    assert min_distance_exhaustive(SparseBinaryMatrix.from_dense(HAMMING)) == 3
    identity = SparseBinaryMatrix.from_dense(np.eye(3, dtype=np.uint8))
    assert min_distance_exhaustive(identity) == 0


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("q", [4, 5])
def test_random_codewords(family, q):
    matrix = _matrix(family, q)
    words = random_codewords(matrix, 50, np.random.default_rng(1))
    assert words.shape == (50, matrix.n_cols)
    assert not np.any(matrix.syndrome(words.T))
    # The exceptional rows sum to the all-ones word.
    assert not np.any(words.sum(axis=1) % 2)


@pytest.mark.slow
def test_exhaustive_minimum_distance_dimension_29():
    matrix = _matrix(3, 5)
    assert min_distance_exhaustive(matrix, limit=29, workers=2) == 10
