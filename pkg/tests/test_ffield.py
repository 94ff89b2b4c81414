import galois
import numpy as np
import pytest

from conic_ldpc.exceptions import (
    DivisionByZeroError,
    EvenCharacteristicError,
    FieldElementRangeError,
    NotPrimePowerError,
    OddCharacteristicError,
    OutOfSupportedRangeError,
)
from conic_ldpc.ffield import field_new, pick_beta

SUPPORTED_ORDERS = (4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32)
SMALL_ORDERS = (4, 5, 7, 8, 9)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_supported_orders(q):
    spec = field_new(q)
    assert spec.q == q
    assert spec.p**spec.m == q
    assert field_new(q) is spec


@pytest.mark.parametrize("q", [6, 10, 12, 15, 33 * 2])
def test_not_prime_power(q):
    with pytest.raises(NotPrimePowerError):
        field_new(q)


@pytest.mark.parametrize("q", [2, 3, 37, 49, 64])
def test_out_of_range(q):
    with pytest.raises(OutOfSupportedRangeError):
        field_new(q)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_tables_match_galois(q):
    spec = field_new(q)
    if spec.m == 1:
        gf = galois.GF(q)
    else:
        poly = galois.Poly(list(spec.modulus), field=galois.GF(spec.p))
        gf = galois.GF(q, irreducible_poly=poly)
    elements = gf.elements
    expected_add = (elements[:, None] + elements[None, :]).view(np.ndarray)
    expected_mul = (elements[:, None] * elements[None, :]).view(np.ndarray)
    assert np.array_equal(spec.add_table, expected_add)
    assert np.array_equal(spec.mul_table, expected_mul)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms(q):
    spec = field_new(q)
    for x in spec.elements:
        assert spec.add(x, 0) == x
        assert spec.mul(x, 1) == x
        assert spec.add(x, spec.neg(x)) == 0
        assert spec.sub(x, x) == 0
        if x:
            assert spec.mul(x, spec.inv(x)) == 1
            assert spec.power(x, q - 1) == 1
        for y in spec.elements:
            assert spec.add(x, y) == spec.add(y, x)
            assert spec.mul(x, y) == spec.mul(y, x)
            if y:
                assert spec.mul(spec.div(x, y), y) == x


def test_division_by_zero():
    spec = field_new(5)
    with pytest.raises(DivisionByZeroError):
        spec.inv(0)
    with pytest.raises(DivisionByZeroError):
        spec.div(3, 0)


def test_element_range():
    spec = field_new(7)
    assert spec.element(6) == 6
    with pytest.raises(FieldElementRangeError):
        spec.element(7)
    with pytest.raises(FieldElementRangeError):
        spec.element(-1)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_half_of_nonzero_elements_are_squares(q):
    spec = field_new(q)
    squares = {spec.square(x) for x in spec.elements if x}
    assert len(squares) == (q - 1) // 2
    for x in range(1, q):
        assert spec.is_square(x) == (x in squares)


@pytest.mark.parametrize("q", [4, 8, 16, 32])
def test_sqrt_in_characteristic_two(q):
    spec = field_new(q)
    for x in spec.elements:
        assert spec.square(spec.sqrt(x)) == x


@pytest.mark.parametrize("q", [4, 8, 16, 32])
def test_absolute_trace_is_additive_and_balanced(q):
    spec = field_new(q)
    traces = [spec.absolute_trace(x) for x in spec.elements]
    assert set(traces) == {0, 1}
    assert traces.count(1) == q // 2
    assert spec.absolute_trace(spec.add(2, 3)) == traces[2] ^ traces[3]


def test_parity_guards():
    with pytest.raises(EvenCharacteristicError):
        field_new(8).is_square(3)
    with pytest.raises(OddCharacteristicError):
        field_new(9).sqrt(3)
    with pytest.raises(OddCharacteristicError):
        field_new(5).absolute_trace(1)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_beta_is_a_non_square(q):
    spec = field_new(q)
    beta = pick_beta(spec)
    assert not spec.is_square(beta)
    assert all(spec.is_square(x) for x in range(1, beta))


@pytest.mark.parametrize("q", [4, 8, 16, 32])
def test_beta_makes_quadratic_irreducible(q):
    spec = field_new(q)
    beta = pick_beta(spec)
    assert spec.absolute_trace(beta) == 1
    for t in spec.elements:
        assert spec.add(spec.add(spec.square(t), t), beta) != 0


def test_labels():
    assert field_new(5).label(3) == "3"
    spec = field_new(4)
    assert spec.label(0) == "0"
    assert spec.label(3) == "x+1"
