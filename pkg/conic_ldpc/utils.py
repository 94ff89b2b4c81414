import hashlib

from .decoder import gallager_code
from .exceptions import ParserInvalidRunSpecError
from .ffield import field_new
from .gf2 import SparseBinaryMatrix
from .incidence import IncidenceStructure, build_structure, incidence_matrix
from .parser import parse_gallager, read_alist, write_alist
from .report import Analyzer


def build_code(family: int, q: int) -> tuple[IncidenceStructure, SparseBinaryMatrix]:
    """Builds the incidence structure of ``(family, q)`` and its parity-check matrix.

    Args:
        family (int): Conic family.
        q (int): Field order.

    Returns:
        tuple[IncidenceStructure, SparseBinaryMatrix]: The structure and its
        matrix.
    """
    structure = build_structure(family, field_new(q))
    return structure, incidence_matrix(structure)


def analyze(family: int, q: int, checks: list[str], workers: int = 1) -> Analyzer:
    """Prepares a report on one conic code.

    Args:
        family (int): Conic family.
        q (int): Field order.
        checks (list[str]): Check names.
        workers (int): Threads for the exhaustive distance search.

    Returns:
        Analyzer: The analyzer, iterating over the report entries.
    """
    return Analyzer(family, q, checks, workers)


def resolve_matrix(
    family: int | None = None,
    q: int | None = None,
    alist: str | None = None,
    gallager: str | None = None,
) -> SparseBinaryMatrix:
    """Parity-check matrix from exactly one source.

    Args:
        family (int | None): Conic family, together with ``q``.
        q (int | None): Field order, together with ``family``.
        alist (str | None): Contents of an alist file.
        gallager (str | None): A Gallager spec such as ``n=576,row=9,col=6``.

    Returns:
        SparseBinaryMatrix: The matrix.

    Raises:
        ParserInvalidRunSpecError: If zero or several sources are given.
    """
    built = family is not None or q is not None
    sources = [built, alist is not None, gallager is not None]
    if sum(sources) != 1 or (built and (family is None or q is None)):
        given = ", ".join(
            name
            for name, present in zip(("family/q", "alist", "gallager"), sources)
            if present
        )
        raise ParserInvalidRunSpecError("matrix source", given or "nothing")
    if alist is not None:
        return read_alist(alist)
    if gallager is not None:
        return gallager_code(parse_gallager(gallager))
    return build_code(family, q)[1]


def matrix_hash(matrix: SparseBinaryMatrix) -> str:
    """SHA-256 of the matrix's alist text."""
    return hashlib.sha256(write_alist(matrix).encode()).hexdigest()


def matrix_summary(matrix: SparseBinaryMatrix) -> dict:
    return {
        "n": matrix.n_cols,
        "n_checks": matrix.n_rows,
        "row_weights": sorted(set(matrix.row_weights().tolist())),
        "col_weights": sorted(set(matrix.col_weights().tolist())),
        "hash": matrix_hash(matrix),
    }


def code_summary(family: int, q: int) -> dict:
    """Manifest of a built code: its parameters, sizes, weights and hash."""
    _, matrix = build_code(family, q)
    return {"family": family, "q": q, **matrix_summary(matrix)}


def matrix_to_json(matrix: SparseBinaryMatrix) -> dict:
    """Sparse rows of a matrix, 0-based column indices."""
    return {
        "n": matrix.n_cols,
        "m": matrix.n_rows,
        "rows": [list(row) for row in matrix.rows],
    }
