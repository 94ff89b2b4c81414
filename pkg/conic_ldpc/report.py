import functools
import logging
from collections.abc import Generator, Iterable, Iterator

from .codewords import (
    EXHAUSTIVE_LIMIT,
    is_codeword,
    min_distance_exhaustive,
    min_weight_codeword,
)
from .exceptions import (
    OddQRequiredError,
    ReportInvalidCheckError,
    ReportPreconditionError,
    UnsupportedFamilyError,
)
from .expectations import (
    expected_block_size,
    expected_girth,
    expected_min_distance,
    expected_points,
    expected_six_cycles,
    kappa_expectation,
    six_cycle_bound,
    table_row,
)
from .ffield import FieldSpec, field_new
from .geometry import Flag, Line, Point, allowed_classes, check_family
from .gf2 import SparseBinaryMatrix, conjectured_dimension, rank_gf2
from .incidence import (
    IncidenceStructure,
    build_structure,
    incidence_matrix,
    kappa_profile,
)
from .tanner import (
    BipartiteGraph,
    count_6_cycles,
    count_8_cycles,
    count_exceptional_8_cycles,
    girth,
)

logger = logging.getLogger(__name__)

CHECKS = (
    "counts",
    "girth",
    "cycles6",
    "cycles8",
    "rank",
    "mindist-construct",
    "mindist-exhaustive",
    "kappa",
)
CYCLES8_MAX_Q = 9


class Analyzer:
    """Runs a list of checks on one conic code and yields one report entry each.

    Every entry is a dict with the check name and either ``value``,
    ``expected`` and ``match`` (``None`` when nothing is expected), or
    ``error`` when the check's precondition does not hold. A failing
    precondition never stops the remaining checks.

    Args:
        family (int): Conic family.
        q (int): Field order.
        checks (Iterable[str]): Check names from :data:`CHECKS`.
        workers (int): Threads for the exhaustive distance search.
    """

    def __init__(
        self, family: int, q: int, checks: Iterable[str], workers: int = 1
    ) -> None:
        """Initializes the Analyzer instance."""
        check_family(family)
        self.family = family
        self.q = q
        self.spec: FieldSpec = field_new(q)
        self.workers = workers
        self.checks = list(dict.fromkeys(checks))
        for check in self.checks:
            if check not in CHECKS:
                raise ReportInvalidCheckError(check, list(CHECKS))

    def __iter__(self) -> Iterator[dict]:
        """Iterates over the report entries in check order.

        Returns:
            Iterator[dict]: Iterator of entries.
        """
        return self._analyze()

    @functools.cached_property
    def structure(self) -> IncidenceStructure:
        return build_structure(self.family, self.spec)

    @functools.cached_property
    def matrix(self) -> SparseBinaryMatrix:
        return incidence_matrix(self.structure)

    @functools.cached_property
    def graph(self) -> BipartiteGraph:
        return BipartiteGraph.from_matrix(self.matrix)

    @functools.cached_property
    def rank(self) -> int:
        return rank_gf2(self.matrix)

    @property
    def dimension(self) -> int:
        return self.matrix.n_cols - self.rank

    def _analyze(self) -> Generator[dict, None, None]:
        for check in self.checks:
            try:
                match check:
                    case "counts":
                        entry = self._handle_counts()
                    case "girth":
                        entry = self._handle_girth()
                    case "cycles6":
                        entry = self._handle_cycles6()
                    case "cycles8":
                        entry = self._handle_cycles8()
                    case "rank":
                        entry = self._handle_rank()
                    case "mindist-construct":
                        entry = self._handle_mindist_construct()
                    case "mindist-exhaustive":
                        entry = self._handle_mindist_exhaustive()
                    case "kappa":
                        entry = self._handle_kappa()
            except ReportPreconditionError as err:
                logger.info("%s", err.message)
                yield {"check": check, "error": err.message}
                continue
            yield {"check": check, **entry}

    def _handle_counts(self) -> dict:
        structure = self.structure
        block_sizes = sorted(set(structure.block_sizes().tolist()))
        degrees = sorted(set(structure.point_degrees().tolist()))
        value = {
            "points": structure.n_points,
            "blocks": structure.n_blocks,
            "conics": structure.n_conic_blocks,
            "block_sizes": block_sizes,
            "point_degrees": degrees,
            "max_shared_blocks": int(self.graph.shared_blocks().max()),
        }
        q = self.q
        expected = {
            "points": expected_points(self.family, q),
            "blocks": q**3,
            "conics": q**3 - q**2,
            "block_sizes": [expected_block_size(self.family, q)],
            "point_degrees": [q],
            "max_shared_blocks": 1,
        }
        return {"value": value, "expected": expected, "match": value == expected}

    def _handle_girth(self) -> dict:
        value = girth(self.graph)
        expected = expected_girth(self.family, self.q)
        return {"value": value, "expected": expected, "match": value == expected}

    def _handle_cycles6(self) -> dict:
        value = count_6_cycles(self.graph)
        exact = expected_six_cycles(self.family, self.q)
        if exact is not None:
            return {"value": value, "expected": exact, "match": value == exact}
        bound = six_cycle_bound(self.family, self.q)
        return {
            "value": value,
            "expected": {"at_most": bound},
            "match": value <= bound,
        }

    def _handle_cycles8(self) -> dict:
        if self.q > CYCLES8_MAX_Q:
            reason = f"q={self.q} is above {CYCLES8_MAX_Q}"
            raise ReportPreconditionError("cycles8", reason)
        value = count_8_cycles(self.graph)
        lower = count_exceptional_8_cycles(self.structure)
        return {
            "value": value,
            "expected": {"at_least": lower},
            "match": value >= lower,
        }

    def _handle_rank(self) -> dict:
        n = self.matrix.n_cols
        value = {
            "rank": self.rank,
            "dimension": self.dimension,
            "redundancy": self.matrix.n_rows - self.rank,
            "rate": self.dimension / n,
        }
        expected = {}
        row = table_row(self.family, self.q)
        if row is not None:
            expected["dimension"] = row.dimension
        try:
            expected["conjectured_dimension"] = conjectured_dimension(
                self.family, self.q
            )
        except (OddQRequiredError, UnsupportedFamilyError) as err:
            logger.debug("%s", err.message)
        match = None
        if expected:
            match = all(self.dimension == target for target in expected.values())
        return {"value": value, "expected": expected or None, "match": match}

    def _handle_mindist_construct(self) -> dict:
        base_class = allowed_classes(self.family, self.spec)[0]
        base_line = Line.through(self.spec, Point(0, 0), base_class)
        word = min_weight_codeword(self.family, self.spec, base_line)
        value = {"weight": word.weight, "is_codeword": is_codeword(word)}
        expected = expected_min_distance(self.q)
        return {
            "value": value,
            "expected": expected,
            "match": value["is_codeword"] and word.weight == expected,
        }

    def _handle_mindist_exhaustive(self) -> dict:
        if self.dimension > EXHAUSTIVE_LIMIT:
            reason = f"dimension {self.dimension} is above {EXHAUSTIVE_LIMIT}"
            raise ReportPreconditionError("mindist-exhaustive", reason)
        value = min_distance_exhaustive(self.matrix, workers=self.workers)
        row = table_row(self.family, self.q)
        expected = row.distance if row else expected_min_distance(self.q)
        return {"value": value, "expected": expected, "match": value == expected}

    def _handle_kappa(self) -> dict:
        # Translations preserve each family, so flags at the origin suffice.
        value = 0
        for direction in allowed_classes(self.family, self.spec):
            flag = Flag.at(self.spec, Point(0, 0), direction)
            profile = kappa_profile(self.structure, flag)
            value = max(value, max(profile.values(), default=0))
        bound, attained = kappa_expectation(self.family, self.q)
        match = value == bound if attained else value <= bound
        expected = bound if attained else {"at_most": bound}
        return {"value": value, "expected": expected, "match": match}


def report_matches(entries: Iterable[dict]) -> bool:
    """False if any entry with an expectation disagrees with it."""
    return all(entry.get("match") is not False for entry in entries)
