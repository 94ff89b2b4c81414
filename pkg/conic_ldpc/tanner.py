"""Girth and short-cycle counts of Tanner graphs.

The graph has one vertex per point (code bit) and one per block (parity
check). Cycles are counted as subgraphs: a cycle of length 2k is a set of k
points and k blocks joined by 2k distinct edges.
"""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from .ffield import FieldSpec
from .geometry import Conic
from .gf2 import SparseBinaryMatrix
from .incidence import IncidenceStructure, build_structure, incidence_matrix

logger = logging.getLogger(__name__)

_TRIANGLE_CHUNK = 512


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    """Point/block incidence graph stored as two CSR adjacency lists.

    Args:
        blocks_csr (SparseBinaryMatrix): Block ``i`` to its points.
        points_csr (SparseBinaryMatrix): Point ``j`` to its blocks.
    """

    blocks_csr: SparseBinaryMatrix
    points_csr: SparseBinaryMatrix

    @classmethod
    def from_matrix(cls, matrix: SparseBinaryMatrix) -> "BipartiteGraph":
        """Tanner graph of a parity-check matrix: rows are blocks, columns points."""
        return cls(matrix, matrix.transpose())

    @classmethod
    def from_structure(cls, structure: IncidenceStructure) -> "BipartiteGraph":
        return cls.from_matrix(incidence_matrix(structure))

    @property
    def n_points(self) -> int:
        return self.points_csr.n_rows

    @property
    def n_blocks(self) -> int:
        return self.blocks_csr.n_rows

    @property
    def n_edges(self) -> int:
        return self.blocks_csr.nnz

    def point_blocks(self, point: int) -> np.ndarray:
        return self.points_csr.row(point)

    def block_points(self, block: int) -> np.ndarray:
        return self.blocks_csr.row(block)

    def point_degrees(self) -> np.ndarray:
        return self.points_csr.row_weights()

    def block_degrees(self) -> np.ndarray:
        return self.blocks_csr.row_weights()

    def shared_blocks(self) -> scipy.sparse.csr_matrix:
        """Point-by-point matrix of common block counts, zero diagonal."""
        incidence = self.blocks_csr.to_csr()
        shared = (incidence.T @ incidence).tocsr()
        shared.setdiag(0)
        shared.eliminate_zeros()
        return shared


def _expand(
    csr: SparseBinaryMatrix, sources: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """All neighbours of ``sources``: positions into ``sources`` and the neighbours."""
    counts = csr.indptr[sources + 1] - csr.indptr[sources]
    owner = np.repeat(np.arange(sources.size), counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    return owner, csr.indices[np.repeat(csr.indptr[sources], counts) + offsets]


def _pairs_within_groups(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs ``i < j`` with ``keys[i] == keys[j]``; ``keys`` must be sorted."""
    n = keys.size
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    boundaries = np.flatnonzero(np.diff(keys)) + 1
    group_ends = np.append(boundaries, n)
    group_sizes = np.diff(np.concatenate(([0], group_ends)))
    after = np.repeat(group_ends, group_sizes) - np.arange(n) - 1
    first = np.repeat(np.arange(n), after)
    offsets = np.arange(after.sum()) - np.repeat(np.cumsum(after) - after, after)
    return first, first + 1 + offsets


# ---- Girth ------------------------------------------------------------------


def _triangle_count(adjacency: scipy.sparse.csr_matrix) -> int:
    total = 0
    for start in range(0, adjacency.shape[0], _TRIANGLE_CHUNK):
        part = adjacency[start : start + _TRIANGLE_CHUNK]
        total += int((part @ adjacency).multiply(part).sum())
    return total // 6


def _six_cycles_without_four_cycles(
    graph: BipartiteGraph, shared: scipy.sparse.csr_matrix
) -> int:
    # Without 4-cycles two points share at most one block, so every triangle
    # of the point graph lies inside a single block or uses three blocks.
    adjacency = shared.astype(np.int64)
    in_blocks = sum(math.comb(int(k), 3) for k in graph.block_degrees())
    return _triangle_count(adjacency) - in_blocks


def _shortest_cycle_through(graph: BipartiteGraph, root: int, bound: float) -> float:
    """Shortest cycle found by a BFS from point ``root``, ignoring cycles >= bound."""
    n_points = graph.n_points
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    best = bound
    while queue:
        u = queue.popleft()
        if 2 * dist[u] + 1 >= best:
            break
        if u < n_points:
            neighbours = graph.point_blocks(u) + n_points
        else:
            neighbours = graph.block_points(u - n_points)
        for w in neighbours.tolist():
            if w == parent[u]:
                continue
            if w in dist:
                best = min(best, dist[u] + dist[w] + 1)
            else:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return best


def girth(graph: BipartiteGraph) -> int | float:
    """Length of the shortest cycle of the graph.

    Four- and six-cycles are detected algebraically from the shared-block
    matrix. Otherwise a BFS runs from each point in turn until a cycle of
    length 8 is found.

    Args:
        graph (BipartiteGraph): The Tanner graph.

    Returns:
        int | float: The girth, an even integer, or ``math.inf`` for a forest.
    """
    shared = graph.shared_blocks()
    if shared.nnz and shared.max() >= 2:  # noqa: PLR2004
        return 4
    if _six_cycles_without_four_cycles(graph, shared) > 0:
        return 6
    best = math.inf
    for root in range(graph.n_points):
        best = _shortest_cycle_through(graph, root, best)
        if best == 8:  # noqa: PLR2004
            break
    logger.debug("Girth search finished at %s", best)
    return best


# ---- Cycle counts -----------------------------------------------------------


def _count_6_by_triples(graph: BipartiteGraph, shared: scipy.sparse.csr_matrix) -> int:
    # For points p1 < p2 < p3 with pairwise common block counts s12, s13, s23
    # and t blocks containing all three, the number of ways to pick three
    # distinct connecting blocks is s12*s13*s23 - t*(s12+s13+s23) + 2t.
    dense_shared = shared.toarray()
    incidence = graph.blocks_csr.to_dense().astype(np.int64)
    total = 0
    for p1 in range(graph.n_points):
        later = np.flatnonzero(dense_shared[p1, p1 + 1 :]) + p1 + 1
        for i, p2 in enumerate(later):
            p3s = later[i + 1 :]
            p3s = p3s[dense_shared[p2, p3s] > 0]
            if p3s.size == 0:
                continue
            s12 = dense_shared[p1, p2]
            s13 = dense_shared[p1, p3s]
            s23 = dense_shared[p2, p3s]
            t = (incidence[:, p1] * incidence[:, p2]) @ incidence[:, p3s]
            total += int(np.sum(s12 * s13 * s23 - t * (s12 + s13 + s23) + 2 * t))
    return total


def count_6_cycles(graph: BipartiteGraph) -> int:
    """Exact number of 6-cycles.

    Args:
        graph (BipartiteGraph): The Tanner graph.

    Returns:
        int: Number of distinct cycles of length 6.
    """
    shared = graph.shared_blocks()
    if shared.nnz == 0:
        return 0
    if shared.max() < 2:  # noqa: PLR2004
        return _six_cycles_without_four_cycles(graph, shared)
    return _count_6_by_triples(graph, shared)


def count_8_cycles(graph: BipartiteGraph) -> int:
    """Exact number of 8-cycles by joining paths of length 4.

    An 8-cycle is two internally disjoint point-to-point paths
    ``u - B - w - B' - v`` between a pair of opposite points, and each cycle
    has two such pairs.

    Args:
        graph (BipartiteGraph): The Tanner graph. Intended for q <= 9.

    Returns:
        int: Number of distinct cycles of length 8.
    """
    total = 0
    for u in range(graph.n_points):
        first = graph.point_blocks(u)
        owner, middle = _expand(graph.blocks_csr, first)
        keep = middle != u
        block_a, middle = first[owner[keep]], middle[keep]

        owner, second = _expand(graph.points_csr, middle)
        keep = second != block_a[owner]
        block_a, middle = block_a[owner[keep]], middle[owner[keep]]
        second = second[keep]

        owner, end = _expand(graph.blocks_csr, second)
        keep = (end != middle[owner]) & (end > u)
        block_a, middle, block_b, end = (
            block_a[owner[keep]],
            middle[owner[keep]],
            second[owner[keep]],
            end[keep],
        )

        order = np.argsort(end, kind="stable")
        block_a, middle, block_b, end = (
            block_a[order],
            middle[order],
            block_b[order],
            end[order],
        )
        i, j = _pairs_within_groups(end)
        disjoint = (
            (middle[i] != middle[j])
            & (block_a[i] != block_a[j])
            & (block_b[i] != block_b[j])
            & (block_a[i] != block_b[j])
            & (block_b[i] != block_a[j])
        )
        total += int(disjoint.sum())
    return total // 2


def count_exceptional_8_cycles(structure: IncidenceStructure) -> int:
    """Number of 8-cycles through two exceptional blocks.

    Such a cycle is two points P, Q and two conics through both, with
    different tangents at P and at Q. It is a lower bound for
    :func:`count_8_cycles` of a structure with exceptional blocks.

    Args:
        structure (IncidenceStructure): A structure built with exceptional
            blocks.

    Returns:
        int: The number of such cycles, 0 without exceptional blocks.
    """
    if not structure.exceptional:
        return 0
    q = structure.spec.q
    records = []
    for block in structure.blocks[: structure.n_conic_blocks]:
        codes = [
            (flag.point.x * q + flag.point.y, flag.direction.index(q))
            for flag in (structure.points[i] for i in block.members)
        ]
        for (cell_i, tan_i), (cell_j, tan_j) in itertools.combinations(codes, 2):
            records.append((cell_i, cell_j, tan_i, tan_j))
    if not records:
        return 0
    data = np.array(records, dtype=np.int64)

    def pairs(columns: list[int]) -> int:
        _, counts = np.unique(data[:, columns], axis=0, return_counts=True)
        return int(np.sum(counts * (counts - 1) // 2))

    return pairs([0, 1]) - pairs([0, 1, 2]) - pairs([0, 1, 3]) + pairs([0, 1, 2, 3])


# ---- (C3) configurations ----------------------------------------------------


def find_c3_configurations(
    family: int, spec: FieldSpec, limit: int | None = None
) -> list[tuple[Conic, Conic, Conic]]:
    """Triples of conics pairwise tangent at three distinct common points.

    Args:
        family (int): Conic family.
        spec (FieldSpec): The field.
        limit (int | None): Stop after this many triples.

    Returns:
        list[tuple[Conic, Conic, Conic]]: Triples in lexicographic order of
        block index. Without a limit their number equals the 6-cycle count of
        the structure.
    """
    structure = build_structure(family, spec)
    conic_blocks = structure.blocks[: structure.n_conic_blocks]
    rows = SparseBinaryMatrix.from_rows(
        (block.members for block in conic_blocks), structure.n_points
    ).to_csr()
    touching = (rows @ rows.T).tocsr()
    touching.setdiag(0)
    touching.eliminate_zeros()
    members = [frozenset(block.members) for block in conic_blocks]

    found = []
    for i in range(len(conic_blocks)):
        later = touching.indices[touching.indptr[i] : touching.indptr[i + 1]]
        later = np.sort(later[later > i])
        later_set = set(later.tolist())
        for j in later.tolist():
            row_j = touching.indices[touching.indptr[j] : touching.indptr[j + 1]]
            for k in sorted(k for k in row_j.tolist() if k > j and k in later_set):
                if members[i] & members[j] & members[k]:
                    continue
                triple = (conic_blocks[i], conic_blocks[j], conic_blocks[k])
                found.append(tuple(block.conic for block in triple))
                if limit is not None and len(found) >= limit:
                    return found
    logger.info("Found %d (C3) configurations in I%d(%d)", len(found), family, spec.q)
    return found
