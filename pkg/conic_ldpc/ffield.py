"""Table-driven arithmetic in the small fields F_q, 4 <= q <= 32.

Elements are plain integers in ``[0, q)``: the index of an element is its
polynomial representative over F_p evaluated at p, so 0 and 1 are the
field's zero and one. Tables are computed once per field with :mod:`galois`
and all further arithmetic is table lookups.
"""

import functools
from dataclasses import dataclass, field
from typing import TypeAlias

import galois
import numpy as np

from .exceptions import (
    DivisionByZeroError,
    EvenCharacteristicError,
    FieldElementRangeError,
    NotPrimePowerError,
    OddCharacteristicError,
    OutOfSupportedRangeError,
)

FieldElement: TypeAlias = int

MIN_ORDER = 4
MAX_ORDER = 32

# Lexicographically smallest monic irreducible polynomial per (p, m),
# coefficients from the leading term down.
_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (5, 2): (1, 0, 2),
}


def _as_table(array: galois.FieldArray) -> np.ndarray:
    table = array.view(np.ndarray).astype(np.int64)
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The finite field F_q with precomputed operation tables.

    Instances are immutable and shared: :func:`field_new` returns the same
    object for the same order.

    Args:
        q (int): Number of elements.
        p (int): Characteristic.
        m (int): Extension degree.
        modulus (tuple[int, ...]): Defining polynomial over F_p, leading
            coefficient first.
    """

    q: int
    p: int
    m: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @classmethod
    def from_galois(
        cls, gf: type[galois.FieldArray], modulus: tuple[int, ...]
    ) -> "FieldSpec":
        """Builds the lookup tables from a :mod:`galois` field class.

        Args:
            gf (type[galois.FieldArray]): The field class.
            modulus (tuple[int, ...]): Defining polynomial recorded on the FieldSpec.

        Returns:
            FieldSpec: The table-driven field.
        """
        elements = gf.elements
        inverses = gf.Zeros(gf.order)
        inverses[1:] = elements[1:] ** -1
        return cls(
            q=gf.order,
            p=gf.characteristic,
            m=gf.degree,
            modulus=modulus,
            add_table=_as_table(elements[:, None] + elements[None, :]),
            mul_table=_as_table(elements[:, None] * elements[None, :]),
            neg_table=_as_table(-elements),
            inv_table=_as_table(inverses),
        )

    @property
    def is_even(self) -> bool:
        """Whether the field has characteristic 2."""
        return self.p == 2  # noqa: PLR2004

    @property
    def elements(self) -> range:
        """All element indices in canonical order."""
        return range(self.q)

    def element(self, index: int) -> FieldElement:
        """Validates an element index.

        Args:
            index (int): Candidate index.

        Returns:
            FieldElement: The same index.

        Raises:
            FieldElementRangeError: If the index is not in ``[0, q)``.
        """
        if not 0 <= index < self.q:
            raise FieldElementRangeError(index, self.q)
        return index

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        """Sum of two elements."""
        return int(self.add_table[x, y])

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        """Difference of two elements."""
        return int(self.add_table[x, self.neg_table[y]])

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        """Product of two elements."""
        return int(self.mul_table[x, y])

    def neg(self, x: FieldElement) -> FieldElement:
        """Additive inverse."""
        return int(self.neg_table[x])

    def inv(self, x: FieldElement) -> FieldElement:
        """Multiplicative inverse.

        Raises:
            DivisionByZeroError: If ``x`` is zero.
        """
        if x == 0:
            raise DivisionByZeroError(self.q)
        return int(self.inv_table[x])

    def div(self, x: FieldElement, y: FieldElement) -> FieldElement:
        """Quotient, raising on a zero divisor."""
        return self.mul(x, self.inv(y))

    def square(self, x: FieldElement) -> FieldElement:
        """Square of an element."""
        return int(self.mul_table[x, x])

    def power(self, x: FieldElement, exponent: int) -> FieldElement:
        """Raises ``x`` to an integer power by repeated squaring."""
        if exponent < 0:
            x, exponent = self.inv(x), -exponent
        result, base = 1, x
        while exponent:
            if exponent & 1:
                result = self.mul(result, base)
            base = self.square(base)
            exponent >>= 1
        return result

    def is_square(self, x: FieldElement) -> bool:
        """Whether ``x`` is a square in F_q, for odd q.

        Raises:
            EvenCharacteristicError: If q is even.
        """
        if self.is_even:
            raise EvenCharacteristicError("is_square", self.q)
        return x == 0 or self.power(x, (self.q - 1) // 2) == 1

    def sqrt(self, x: FieldElement) -> FieldElement:
        """The unique square root in characteristic 2, ``x ** (q/2)``.

        Raises:
            OddCharacteristicError: If q is odd.
        """
        if not self.is_even:
            raise OddCharacteristicError("sqrt", self.q)
        return self.power(x, self.q // 2)

    def absolute_trace(self, x: FieldElement) -> int:
        """Trace of ``x`` down to F_2, for even q.

        Raises:
            OddCharacteristicError: If q is odd.
        """
        if not self.is_even:
            raise OddCharacteristicError("absolute_trace", self.q)
        total, conjugate = x, x
        for _ in range(self.m - 1):
            conjugate = self.square(conjugate)
            total = self.add(total, conjugate)
        return total

    def label(self, x: FieldElement) -> str:
        """Human-readable polynomial form of an element, e.g. ``"x+1"``."""
        if self.m == 1:
            return str(x)
        terms = []
        for degree in reversed(range(self.m)):
            coefficient = (x // self.p**degree) % self.p
            if coefficient == 0:
                continue
            monomial = {0: "", 1: "x"}.get(degree, f"x^{degree}")
            if not monomial:
                terms.append(str(coefficient))
            elif coefficient == 1:
                terms.append(monomial)
            else:
                terms.append(f"{coefficient}{monomial}")
        return "+".join(terms) or "0"


@functools.cache
def field_new(q: int) -> FieldSpec:
    """Returns the field with ``q`` elements.

    Args:
        q (int): Field order, a prime power between 4 and 32.

    Returns:
        FieldSpec: The shared, immutable field description.

    Raises:
        NotPrimePowerError: If ``q`` is not a prime power.
        OutOfSupportedRangeError: If ``q`` is outside 4..32.
    """
    if q < 2 or not galois.is_prime_power(q):  # noqa: PLR2004
        raise NotPrimePowerError(q)
    if not MIN_ORDER <= q <= MAX_ORDER:
        raise OutOfSupportedRangeError(q, MIN_ORDER, MAX_ORDER)

    primes, exponents = galois.factors(q)
    p, m = int(primes[0]), int(exponents[0])
    if m == 1:
        return FieldSpec.from_galois(galois.GF(p), (1, 0))
    modulus = _MODULI[p, m]
    # galois verifies irreducibility of the modulus on construction.
    irreducible = galois.Poly(list(modulus), field=galois.GF(p))
    return FieldSpec.from_galois(galois.GF(q, irreducible_poly=irreducible), modulus)


@functools.cache
def pick_beta(spec: FieldSpec) -> FieldElement:
    """Chooses the parameter of the third conic family.

    For odd q this is the smallest non-square; for even q the smallest
    element of absolute trace 1, so that ``T^2 + T + beta`` has no root.

    Args:
        spec (FieldSpec): The field.

    Returns:
        FieldElement: The chosen beta.
    """
    if spec.is_even:
        return next(x for x in range(1, spec.q) if spec.absolute_trace(x) == 1)
    return next(x for x in range(1, spec.q) if not spec.is_square(x))
