"""The incidence structures I1(q), I2(q) and I3(q).

Points are the flags ``(P, L)`` whose line class is allowed for the family.
Blocks are the conics of the family, each seen as the set of its tangent
flags, followed by one exceptional block per affine point holding every
allowed flag at that point.
"""

import functools
import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import PointOnConicError
from .ffield import FieldSpec, pick_beta
from .geometry import (
    Conic,
    Flag,
    ParallelClass,
    Point,
    allowed_classes,
    check_family,
    incident_conics,
    is_valid,
    pencil_tables,
)
from .gf2 import SparseBinaryMatrix

logger = logging.getLogger(__name__)


def flag_code(q: int, x: int, y: int, direction: int) -> int:
    """Dense code of the flag at ``(x, y)`` whose line has class index ``direction``."""
    return (x * q + y) * (q + 1) + direction


@dataclass(frozen=True)
class Block:
    """A block: a conic's tangent flags, or all flags at a base point.

    Args:
        conic (Conic | None): The conic of a conic block.
        base (Point | None): The base point of an exceptional block.
        members (tuple[int, ...]): Sorted point indices of the block.
    """

    conic: Conic | None
    base: Point | None
    members: tuple[int, ...]

    @property
    def is_exceptional(self) -> bool:
        return self.base is not None

    def __str__(self) -> str:
        if self.is_exceptional:
            return f"E{self.base}"
        return str(self.conic)


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    """An incidence structure of one conic family over F_q.

    Args:
        family (int): Conic family.
        spec (FieldSpec): The field.
        points (tuple[Flag, ...]): Points, sorted by ``(x, y, line class)``.
        blocks (tuple[Block, ...]): Conic blocks by ``(a, b, c)``, then the
            exceptional blocks by base point.
        exceptional (bool): Whether exceptional blocks are present.
        point_ids (np.ndarray): Point index of every flag code, -1 for flags
            whose class is not allowed.
    """

    family: int
    spec: FieldSpec
    points: tuple[Flag, ...]
    blocks: tuple[Block, ...]
    exceptional: bool
    point_ids: np.ndarray

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def n_conic_blocks(self) -> int:
        return self.n_blocks - (self.spec.q**2 if self.exceptional else 0)

    def point_index(self, flag: Flag) -> int:
        """Index of a flag among the points, -1 if its class is not allowed."""
        q = self.spec.q
        code = flag_code(q, flag.point.x, flag.point.y, flag.direction.index(q))
        return int(self.point_ids[code])

    def exceptional_block(self, point: Point) -> int:
        """Block index of the exceptional block based at ``point``."""
        return self.n_conic_blocks + point.x * self.spec.q + point.y

    def block_sizes(self) -> np.ndarray:
        return np.array([len(block.members) for block in self.blocks])

    def point_degrees(self) -> np.ndarray:
        degrees = np.zeros(self.n_points, dtype=np.int64)
        for block in self.blocks:
            degrees[list(block.members)] += 1
        return degrees


@functools.lru_cache(maxsize=8)
def build_structure(
    family: int, spec: FieldSpec, *, exceptional: bool = True
) -> IncidenceStructure:
    """Builds the incidence structure of a conic family.

    Args:
        family (int): Conic family, 1, 2 or 3.
        spec (FieldSpec): The field.
        exceptional (bool): Include the q^2 exceptional blocks.

    Returns:
        IncidenceStructure: The structure, with q^3 blocks when
        ``exceptional`` is set.
    """
    check_family(family)
    q = spec.q
    directions = [d.index(q) for d in allowed_classes(family, spec)]

    points = []
    point_ids = np.full(q * q * (q + 1), -1, dtype=np.int64)
    for x in spec.elements:
        for y in spec.elements:
            for d in directions:
                point_ids[flag_code(q, x, y, d)] = len(points)
                points.append(
                    Flag.at(spec, Point(x, y), ParallelClass.from_index(d, q))
                )

    xs, ys = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    cell_codes = (xs * q + ys) * (q + 1)
    beta = pick_beta(spec) if family == 3 else 0  # noqa: PLR2004
    blocks = []
    for a in spec.elements:
        for b in spec.elements:
            level, tangent = pencil_tables(family, spec, a, b)
            ids = point_ids[cell_codes + tangent]
            for c in spec.elements:
                if not is_valid(family, spec, a, b, c):
                    continue
                members = ids[level == c]
                members = np.sort(members[members >= 0])
                conic = Conic(family, a, b, c, beta, spec)
                blocks.append(Block(conic, None, tuple(members.tolist())))

    if exceptional:
        per_point = len(directions)
        for x in spec.elements:
            for y in spec.elements:
                start = (x * q + y) * per_point
                members = tuple(range(start, start + per_point))
                blocks.append(Block(None, Point(x, y), members))

    structure = IncidenceStructure(
        family, spec, tuple(points), tuple(blocks), exceptional, point_ids
    )
    logger.info(
        "Built I%d(%d): %d points, %d blocks",
        family,
        q,
        structure.n_points,
        structure.n_blocks,
    )
    return structure


def incidence_matrix(structure: IncidenceStructure) -> SparseBinaryMatrix:
    """Parity-check matrix of the structure: one row per block, one column per point."""
    return SparseBinaryMatrix.from_rows(
        (block.members for block in structure.blocks), structure.n_points
    )


def conic_flag_codes(conic: Conic) -> np.ndarray:
    """Sorted flag codes of the tangent flags of a conic."""
    q = conic.spec.q
    level, tangent = pencil_tables(conic.family, conic.spec, conic.a, conic.b)
    xs, ys = np.nonzero(level == conic.c)
    return np.sort((xs * q + ys) * (q + 1) + tangent[xs, ys])


def kappa(family: int, spec: FieldSpec, flag: Flag, conic: Conic) -> int:
    """Number of conics through ``flag`` sharing a flag with ``conic``.

    Args:
        family (int): Conic family.
        spec (FieldSpec): The field.
        flag (Flag): An allowed flag.
        conic (Conic): A conic of the family avoiding ``flag.point``.

    Returns:
        int: How many conics incident with ``flag`` are tangent to ``conic``
        at a common point.

    Raises:
        PointOnConicError: If ``conic`` passes through ``flag.point``.
    """
    target = conic_flag_codes(conic)
    q = spec.q
    cell = flag.point.x * q + flag.point.y
    if np.any(target // (q + 1) == cell):
        raise PointOnConicError(conic, flag.point)
    return sum(
        np.intersect1d(conic_flag_codes(other), target).size > 0
        for other in incident_conics(family, spec, flag)
    )


def kappa_profile(structure: IncidenceStructure, flag: Flag) -> dict[Conic, int]:
    """:func:`kappa` of ``flag`` against every conic avoiding its point.

    Args:
        structure (IncidenceStructure): The structure of the family.
        flag (Flag): An allowed flag.

    Returns:
        dict[Conic, int]: The kappa value of each conic block whose conic
        misses ``flag.point``.
    """
    conic_blocks = structure.blocks[: structure.n_conic_blocks]
    rows = SparseBinaryMatrix.from_rows(
        (block.members for block in conic_blocks), structure.n_points
    ).to_csr()
    target = structure.point_index(flag)
    through_flag = rows[:, target].nonzero()[0]
    touching = (rows[through_flag] @ rows.T).toarray() > 0
    values = touching.sum(axis=0)

    q = structure.spec.q
    per_point = structure.n_points // (q * q)
    start = (flag.point.x * q + flag.point.y) * per_point
    at_point = np.arange(start, start + per_point)
    avoiding = np.asarray(rows[:, at_point].sum(axis=1)).ravel() == 0
    return {conic_blocks[i].conic: int(values[i]) for i in np.flatnonzero(avoiding)}
