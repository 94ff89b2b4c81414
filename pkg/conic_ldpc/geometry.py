"""Affine points, lines, flags and the three conic families over F_q.

A conic of family ``i`` with parameters ``(a, b, c)`` is the zero set of
``f = F - a*U - b*V - c`` where

========  ======================  ========  ========
family    F                       U         V
========  ======================  ========  ========
1         y                       x^2       x
2         xy                      x         y
3, odd    x^2 - beta*y^2          x         y
3, even   x^2 + xy + beta*y^2     x         y
========  ======================  ========  ========

For fixed ``(a, b)`` the conics ``c = 0..q-1`` partition the plane (their
"pencil"), and the gradient of ``f`` does not depend on ``c``. Both facts are
used to compute points and tangents for a whole pencil with a few table
lookups.
"""

import functools
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    ForbiddenLineDirectionError,
    InvalidConicError,
    PointNotOnConicError,
    UnknownFamilyError,
)
from .ffield import FieldElement, FieldSpec, pick_beta

SUPPORTED_FAMILIES = (1, 2, 3)


@dataclass(frozen=True, order=True)
class Point:
    """An affine rational point."""

    x: FieldElement
    y: FieldElement

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class ParallelClass:
    """A direction of affine lines: a slope, or vertical when ``slope`` is None."""

    slope: FieldElement | None

    @classmethod
    def vertical(cls) -> "ParallelClass":
        return cls(None)

    @classmethod
    def from_index(cls, index: int, q: int) -> "ParallelClass":
        """Inverse of :meth:`index`."""
        return cls(None if index == q else index)

    @property
    def is_vertical(self) -> bool:
        return self.slope is None

    @property
    def is_horizontal(self) -> bool:
        return self.slope == 0

    def index(self, q: int) -> int:
        """Position among the q+1 classes: slopes first, vertical last."""
        return q if self.slope is None else self.slope

    def __str__(self) -> str:
        return "vertical" if self.slope is None else f"slope {self.slope}"


@dataclass(frozen=True)
class Line:
    """An affine line, ``x = offset`` if vertical, else ``y = slope*x + offset``."""

    slope: FieldElement | None
    offset: FieldElement

    @classmethod
    def through(
        cls, spec: FieldSpec, point: Point, direction: ParallelClass
    ) -> "Line":
        """The line of the given class through ``point``."""
        if direction.is_vertical:
            return cls(None, point.x)
        m = direction.slope
        return cls(m, spec.sub(point.y, spec.mul(m, point.x)))

    @property
    def direction(self) -> ParallelClass:
        return ParallelClass(self.slope)

    @property
    def sort_key(self) -> tuple[int, int, int]:
        if self.slope is None:
            return (1, self.offset, 0)
        return (0, self.slope, self.offset)

    def contains(self, spec: FieldSpec, point: Point) -> bool:
        if self.slope is None:
            return point.x == self.offset
        return point.y == spec.add(spec.mul(self.slope, point.x), self.offset)

    def points(self, spec: FieldSpec) -> list[Point]:
        """All q rational points of the line, sorted."""
        if self.slope is None:
            return [Point(self.offset, y) for y in spec.elements]
        return [
            Point(x, spec.add(spec.mul(self.slope, x), self.offset))
            for x in spec.elements
        ]

    def __str__(self) -> str:
        if self.slope is None:
            return f"x = {self.offset}"
        return f"y = {self.slope}x + {self.offset}"


@dataclass(frozen=True)
class Flag:
    """A point together with a line through it."""

    point: Point
    line: Line

    @classmethod
    def at(cls, spec: FieldSpec, point: Point, direction: ParallelClass) -> "Flag":
        return cls(point, Line.through(spec, point, direction))

    @property
    def direction(self) -> ParallelClass:
        return self.line.direction

    def __str__(self) -> str:
        return f"({self.point}, {self.line})"


@dataclass(frozen=True)
class Conic:
    """A smooth affine conic of one of the three families.

    Use :meth:`new` to construct a validated conic.
    """

    family: int
    a: FieldElement
    b: FieldElement
    c: FieldElement
    beta: FieldElement
    spec: FieldSpec = field(compare=False, hash=False, repr=False)

    @classmethod
    def new(
        cls,
        family: int,
        spec: FieldSpec,
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    ) -> "Conic":
        """Builds a conic, checking its parameters.

        Raises:
            UnknownFamilyError: If ``family`` is not 1, 2 or 3.
            InvalidConicError: If the parameters give a singular curve.
        """
        check_family(family)
        a, b, c = spec.element(a), spec.element(b), spec.element(c)
        if not is_valid(family, spec, a, b, c):
            raise InvalidConicError(family, a, b, c)
        beta = pick_beta(spec) if family == 3 else 0  # noqa: PLR2004
        return cls(family, a, b, c, beta, spec)

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        a, b, c = self.a, self.b, self.c
        if self.family == 1:
            return f"y = {a}x^2 + {b}x + {c}"
        if self.family == 2:  # noqa: PLR2004
            return f"xy = {a}x + {b}y + {c}"
        if self.spec.is_even:
            return f"x^2 + xy + {self.beta}y^2 = {a}x + {b}y + {c}"
        return f"x^2 - {self.beta}y^2 = {a}x + {b}y + {c}"


def check_family(family: object) -> None:
    if family not in SUPPORTED_FAMILIES:
        raise UnknownFamilyError(family)


def allowed_classes(family: int, spec: FieldSpec) -> list[ParallelClass]:
    """Directions of the flags kept in the family's incidence structure.

    Family 1 drops vertical lines, family 2 drops vertical and horizontal
    lines, family 3 keeps all q+1 directions.
    """
    check_family(family)
    q = spec.q
    if family == 1:
        indices = range(q)
    elif family == 2:  # noqa: PLR2004
        indices = range(1, q)
    else:
        indices = range(q + 1)
    return [ParallelClass.from_index(i, q) for i in indices]


def is_allowed(family: int, direction: ParallelClass) -> bool:
    if family == 1:
        return not direction.is_vertical
    if family == 2:  # noqa: PLR2004
        return not (direction.is_vertical or direction.is_horizontal)
    return True


def singular_constant(
    family: int, spec: FieldSpec, a: FieldElement, b: FieldElement
) -> FieldElement | None:
    """The constant term making the pencil member singular, if any.

    Family 1 has none (its pencils are smooth iff ``a != 0``). For family 2
    it is ``-ab``; for family 3 it is the value of ``F - aU - bV`` at the
    point where the gradient vanishes: ``b^2/(4 beta) - a^2/4`` for odd q and
    ``b^2 + ab + beta*a^2`` for even q.
    """
    check_family(family)
    if family == 1:
        return None
    if family == 2:  # noqa: PLR2004
        return spec.neg(spec.mul(a, b))
    beta = pick_beta(spec)
    if spec.is_even:
        return spec.add(
            spec.add(spec.square(b), spec.mul(a, b)),
            spec.mul(beta, spec.square(a)),
        )
    four = spec.add(spec.add(1, 1), spec.add(1, 1))
    return spec.sub(
        spec.div(spec.square(b), spec.mul(four, beta)),
        spec.div(spec.square(a), four),
    )


def is_valid(
    family: int, spec: FieldSpec, a: FieldElement, b: FieldElement, c: FieldElement
) -> bool:
    """Whether ``(a, b, c)`` defines a smooth conic of the family."""
    if family == 1:
        return a != 0
    return c != singular_constant(family, spec, a, b)


def enumerate_conics(family: int, spec: FieldSpec) -> list[Conic]:
    """All q^3 - q^2 conics of a family, in lexicographic ``(a, b, c)`` order."""
    check_family(family)
    beta = pick_beta(spec) if family == 3 else 0  # noqa: PLR2004
    return [
        Conic(family, a, b, c, beta, spec)
        for a in spec.elements
        for b in spec.elements
        for c in spec.elements
        if is_valid(family, spec, a, b, c)
    ]


# ---- Pencil tables ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class _Forms:
    xs: np.ndarray
    ys: np.ndarray
    base: np.ndarray
    a_term: np.ndarray
    b_term: np.ndarray


@functools.cache
def _forms(family: int, spec: FieldSpec) -> _Forms:
    add, mul, neg = spec.add_table, spec.mul_table, spec.neg_table
    xs, ys = np.meshgrid(np.arange(spec.q), np.arange(spec.q), indexing="ij")
    xx, yy, xy = mul[xs, xs], mul[ys, ys], mul[xs, ys]
    if family == 1:
        return _Forms(xs, ys, ys, xx, xs)
    if family == 2:  # noqa: PLR2004
        return _Forms(xs, ys, xy, xs, ys)
    beta_yy = mul[pick_beta(spec), yy]
    if spec.is_even:
        return _Forms(xs, ys, add[add[xx, xy], beta_yy], xs, ys)
    return _Forms(xs, ys, add[xx, neg[beta_yy]], xs, ys)


def _sub(spec: FieldSpec, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return spec.add_table[u, spec.neg_table[v]]


def _gradient(
    family: int, spec: FieldSpec, a: FieldElement, b: FieldElement, forms: _Forms
) -> tuple[np.ndarray, np.ndarray]:
    add, mul, neg = spec.add_table, spec.mul_table, spec.neg_table
    xs, ys = forms.xs, forms.ys
    two = spec.add(1, 1)
    if family == 1:
        fx = neg[add[mul[mul[two, a], xs], b]]
        fy = np.ones_like(xs)
    elif family == 2:  # noqa: PLR2004
        fx = _sub(spec, ys, a)
        fy = _sub(spec, xs, b)
    else:
        two_beta = spec.mul(two, pick_beta(spec))
        if spec.is_even:
            fx = _sub(spec, add[mul[two, xs], ys], a)
            fy = _sub(spec, add[xs, mul[two_beta, ys]], b)
        else:
            fx = _sub(spec, mul[two, xs], a)
            fy = _sub(spec, neg[mul[two_beta, ys]], b)
    return fx, fy


def pencil_tables(
    family: int, spec: FieldSpec, a: FieldElement, b: FieldElement
) -> tuple[np.ndarray, np.ndarray]:
    """Level and tangent-direction tables of the pencil ``(a, b, *)``.

    Args:
        family (int): Conic family.
        spec (FieldSpec): The field.
        a (FieldElement): First parameter.
        b (FieldElement): Second parameter.

    Returns:
        tuple[np.ndarray, np.ndarray]: Two ``q x q`` arrays indexed by
        ``[x, y]``. The first holds the ``c`` of the pencil member through
        each point, the second the class index (:meth:`ParallelClass.index`)
        of that member's tangent there.
    """
    check_family(family)
    forms = _forms(family, spec)
    add, mul, neg = spec.add_table, spec.mul_table, spec.neg_table
    level = add[add[forms.base, neg[mul[a, forms.a_term]]], neg[mul[b, forms.b_term]]]
    fx, fy = _gradient(family, spec, a, b, forms)
    slopes = mul[neg[fx], spec.inv_table[fy]]
    return level, np.where(fy == 0, spec.q, slopes)


# ---- Points, tangents and flags ---------------------------------------------


def points_on(conic: Conic) -> list[Point]:
    """Rational affine points of a conic, sorted by ``(x, y)``."""
    level, _ = pencil_tables(conic.family, conic.spec, conic.a, conic.b)
    return [Point(int(x), int(y)) for x, y in np.argwhere(level == conic.c)]


def tangent_at(conic: Conic, point: Point) -> Line:
    """The tangent line of ``conic`` at ``point``.

    Raises:
        PointNotOnConicError: If ``point`` is not on the conic.
    """
    level, directions = pencil_tables(conic.family, conic.spec, conic.a, conic.b)
    if level[point.x, point.y] != conic.c:
        raise PointNotOnConicError(point, conic)
    index = int(directions[point.x, point.y])
    direction = ParallelClass.from_index(index, conic.spec.q)
    return Line.through(conic.spec, point, direction)


def flags_of(conic: Conic) -> list[Flag]:
    """One flag per point: the point and the conic's tangent there."""
    spec = conic.spec
    level, directions = pencil_tables(conic.family, spec, conic.a, conic.b)
    return [
        Flag.at(
            spec,
            Point(int(x), int(y)),
            ParallelClass.from_index(int(directions[x, y]), spec.q),
        )
        for x, y in np.argwhere(level == conic.c)
    ]


def incident_conics(family: int, spec: FieldSpec, flag: Flag) -> list[Conic]:
    """Conics of the family through ``flag.point`` and tangent to ``flag.line``.

    Each pencil ``(a, b)`` has exactly one member through the point, so the
    search runs over q^2 pencils rather than all conics.

    Raises:
        ForbiddenLineDirectionError: If the line's class is excluded from the
            family's structure.
    """
    check_family(family)
    if not is_allowed(family, flag.direction):
        raise ForbiddenLineDirectionError(flag.direction, family)
    target = flag.direction.index(spec.q)
    x, y = flag.point.x, flag.point.y
    beta = pick_beta(spec) if family == 3 else 0  # noqa: PLR2004
    found = []
    for a in spec.elements:
        for b in spec.elements:
            level, directions = pencil_tables(family, spec, a, b)
            c = int(level[x, y])
            if directions[x, y] == target and is_valid(family, spec, a, b, c):
                found.append(Conic(family, a, b, c, beta, spec))
    return found


# ---- Affine maps ------------------------------------------------------------


def map_point(
    spec: FieldSpec, point: Point, ratio: FieldElement, shift: Point
) -> Point:
    """Image of ``point`` under ``P -> ratio*P + shift``."""
    return Point(
        spec.add(spec.mul(ratio, point.x), shift.x),
        spec.add(spec.mul(ratio, point.y), shift.y),
    )


def homothety_shift(spec: FieldSpec, center: Point, ratio: FieldElement) -> Point:
    """Shift turning ``P -> ratio*P + shift`` into the homothety about ``center``."""
    one_minus = spec.sub(1, ratio)
    return Point(spec.mul(one_minus, center.x), spec.mul(one_minus, center.y))


def _translate(conic: Conic, u: FieldElement, v: FieldElement) -> tuple[int, ...]:
    s = conic.spec
    a, b, c, beta = conic.a, conic.b, conic.c, conic.beta
    two = s.add(1, 1)
    au, bv, bu, uv = s.mul(a, u), s.mul(b, v), s.mul(b, u), s.mul(u, v)
    if conic.family == 1:
        return (
            a,
            s.sub(b, s.mul(two, au)),
            s.add(s.sub(s.add(s.mul(au, u), c), bu), v),
        )
    if conic.family == 2:  # noqa: PLR2004
        return (s.add(a, v), s.add(b, u), s.sub(s.sub(s.sub(c, au), bv), uv))
    beta_vv = s.mul(beta, s.square(v))
    two_beta_v = s.mul(two, s.mul(beta, v))
    c_shift = s.sub(s.sub(c, au), bv)
    if s.is_even:
        return (
            s.add(s.add(a, s.mul(two, u)), v),
            s.add(s.add(b, u), two_beta_v),
            s.sub(s.sub(s.sub(c_shift, s.square(u)), uv), beta_vv),
        )
    return (
        s.add(a, s.mul(two, u)),
        s.sub(b, two_beta_v),
        s.add(s.sub(c_shift, s.square(u)), beta_vv),
    )


def _scale(conic: Conic, r: FieldElement) -> tuple[int, ...]:
    s = conic.spec
    if conic.family == 1:
        return (s.div(conic.a, r), conic.b, s.mul(r, conic.c))
    return (s.mul(r, conic.a), s.mul(r, conic.b), s.mul(s.square(r), conic.c))


def map_conic(conic: Conic, ratio: FieldElement, shift: Point) -> Conic:
    """Image of a conic under ``P -> ratio*P + shift``, ``ratio != 0``.

    The parameters are recomputed in closed form; the result is validated,
    so a map leaving the family raises :class:`InvalidConicError`.
    """
    a, b, c = _scale(conic, ratio)
    scaled = Conic(conic.family, a, b, c, conic.beta, conic.spec)
    return Conic.new(conic.family, conic.spec, *_translate(scaled, shift.x, shift.y))
