import lark.exceptions
from lark import Lark, Token, Transformer, v_args

from .decoder import GallagerSpec
from .exceptions import (
    ParserInvalidAlistError,
    ParserInvalidRunSpecError,
    ParserUnexpectedTokenError,
)
from .gf2 import SparseBinaryMatrix

_ALIST_GRAMMAR = r"""
start: row*
row: INT* _NL

INT: /[0-9]+/
_NL: /\r?\n/
%ignore /[ \t]+/
"""

_SNR_GRAMMAR = r"""
start: grid | values
grid: NUMBER ":" NUMBER ":" NUMBER
values: NUMBER ("," NUMBER)*

NUMBER: /[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?/
%import common.WS
%ignore WS
"""

_GALLAGER_GRAMMAR = r"""
start: pair ("," pair)*
pair: KEY "=" INT

KEY: "n" | "row" | "col" | "seed"
%import common.INT
%import common.WS
%ignore WS
"""

_CHECKS_GRAMMAR = r"""
start: NAME ("," NAME)*

NAME: /[a-z0-9][a-z0-9-]*/
%import common.WS
%ignore WS
"""

_GALLAGER_REQUIRED = ("n", "row", "col")
_GRID_TOLERANCE = 1e-9


class _AlistTransformer(Transformer):
    """Turns alist lines into ``(line number, integers)`` pairs, dropping blanks."""

    def start(self, rows: list) -> list[tuple[int, list[int]]]:
        return [row for row in rows if row is not None]

    def row(self, tokens: list[Token]) -> tuple[int, list[int]] | None:
        if not tokens:
            return None
        return (tokens[0].line, [int(token) for token in tokens])


class _SnrTransformer(Transformer):
    """Expands an SNR grid into its list of points."""

    def start(self, items: list) -> list[float]:
        return items[0]

    @v_args(inline=True)
    def grid(self, low: Token, step: Token, high: Token) -> list[float]:
        low, step, high = float(low), float(step), float(high)
        if step <= 0 or high < low:
            raise ValueError
        count = int((high - low) / step + _GRID_TOLERANCE) + 1
        return [round(low + i * step, 10) for i in range(count)]

    def values(self, items: list[Token]) -> list[float]:
        return [float(item) for item in items]


class _GallagerTransformer(Transformer):
    """Collects ``key=value`` pairs."""

    def start(self, pairs: list) -> dict:
        keys = [key for key, _ in pairs]
        if len(set(keys)) != len(keys):
            raise ValueError
        return dict(pairs)

    @v_args(inline=True)
    def pair(self, key: Token, value: Token) -> tuple[str, int]:
        return (str(key), int(value))


def _parse(grammar: str, transformer: Transformer, text: str) -> object:
    parser = Lark(grammar, parser="lalr", transformer=transformer)
    return parser.parse(text)


# ---- alist ------------------------------------------------------------------


def _split_list(values: list[int], degree: int, limit: int, line: int) -> list[int]:
    """Validates one adjacency line: ``degree`` 1-based indices then zeros."""
    entries, padding = values[:degree], values[degree:]
    if any(value != 0 for value in padding):
        reason = f"expected {degree} entries before padding"
        raise ParserInvalidAlistError(line, reason)
    if any(not 1 <= value <= limit for value in entries):
        raise ParserInvalidAlistError(line, f"indices must lie in 1..{limit}")
    if len(set(entries)) != len(entries):
        raise ParserInvalidAlistError(line, "repeated index")
    return sorted(value - 1 for value in entries)


def _expect_count(row: tuple[int, list[int]], count: int, what: str) -> list[int]:
    line, values = row
    if len(values) != count:
        raise ParserInvalidAlistError(line, f"expected {count} {what}")
    return values


def _build_matrix(  # noqa: C901
    rows: list[tuple[int, list[int]]],
) -> SparseBinaryMatrix:
    if not rows:
        raise ParserInvalidAlistError(1, "empty input")
    last_line = rows[-1][0]
    if len(rows) < 4:  # noqa: PLR2004
        raise ParserInvalidAlistError(last_line + 1, "incomplete header")
    n, m = _expect_count(rows[0], 2, "values 'n m'")
    max_col, max_row = _expect_count(rows[1], 2, "maximum degrees")
    col_degrees = _expect_count(rows[2], n, "column degrees")
    row_degrees = _expect_count(rows[3], m, "row degrees")
    if max(col_degrees, default=0) > max_col or max(row_degrees, default=0) > max_row:
        raise ParserInvalidAlistError(rows[1][0], "a degree exceeds its maximum")
    if sum(col_degrees) != sum(row_degrees):
        raise ParserInvalidAlistError(rows[3][0], "degree sums differ")

    expected = 4 + n + m
    if len(rows) < expected:
        raise ParserInvalidAlistError(last_line + 1, "missing adjacency lines")
    if len(rows) > expected:
        raise ParserInvalidAlistError(rows[expected][0], "unexpected extra line")

    columns = []
    for j, (line, values) in enumerate(rows[4 : 4 + n]):
        if len(values) not in (col_degrees[j], max_col):
            raise ParserInvalidAlistError(line, "column list has the wrong length")
        columns.append(_split_list(values, col_degrees[j], m, line))

    supports = []
    for i, (line, values) in enumerate(rows[4 + n :]):
        if len(values) not in (row_degrees[i], max_row):
            raise ParserInvalidAlistError(line, "row list has the wrong length")
        supports.append(_split_list(values, row_degrees[i], n, line))

    matrix = SparseBinaryMatrix.from_rows(supports, n)
    transposed = matrix.transpose()
    for j, column in enumerate(columns):
        if list(transposed.row(j)) != column:
            line = rows[4 + j][0]
            raise ParserInvalidAlistError(line, "column list disagrees with row lists")
    return matrix


def read_alist(text: str) -> SparseBinaryMatrix:
    """Parses a parity-check matrix in MacKay's alist layout.

    Args:
        text (str): The file contents.

    Returns:
        SparseBinaryMatrix: The matrix, rows being checks.

    Raises:
        ParserUnexpectedTokenError: On a character that is not part of an
            integer.
        ParserInvalidAlistError: On well-formed but inconsistent input.
    """
    if not text.endswith("\n"):
        text += "\n"
    try:
        rows = _parse(_ALIST_GRAMMAR, _AlistTransformer(), text)
    except lark.exceptions.UnexpectedCharacters as err:
        raise ParserUnexpectedTokenError(err.char, err.line, err.column) from err
    except lark.exceptions.UnexpectedToken as err:
        raise ParserUnexpectedTokenError(str(err.token), err.line, err.column) from err
    return _build_matrix(rows)


def write_alist(matrix: SparseBinaryMatrix) -> str:
    """Serializes a matrix in alist layout, lists zero padded to the maximum degree."""
    col_degrees = matrix.col_weights().tolist()
    row_degrees = matrix.row_weights().tolist()
    max_col = max(col_degrees, default=0)
    max_row = max(row_degrees, default=0)
    transposed = matrix.transpose()

    def padded(indices: list[int], width: int) -> str:
        values = [i + 1 for i in indices] + [0] * (width - len(indices))
        return " ".join(map(str, values))

    lines = [
        f"{matrix.n_cols} {matrix.n_rows}",
        f"{max_col} {max_row}",
        " ".join(map(str, col_degrees)),
        " ".join(map(str, row_degrees)),
    ]
    lines.extend(
        padded(transposed.row(j).tolist(), max_col) for j in range(matrix.n_cols)
    )
    lines.extend(
        padded(matrix.row(i).tolist(), max_row) for i in range(matrix.n_rows)
    )
    return "\n".join(lines) + "\n"


# ---- Run specifications -----------------------------------------------------


def parse_snr_grid(text: str) -> list[float]:
    """Parses ``low:step:high`` (inclusive) or a comma-separated list of dB values.

    Raises:
        ParserInvalidRunSpecError: If the text is neither.
    """
    try:
        return _parse(_SNR_GRAMMAR, _SnrTransformer(), text)
    except (lark.exceptions.LarkError, ValueError) as err:
        raise ParserInvalidRunSpecError("SNR grid", text) from err


def parse_gallager(text: str) -> GallagerSpec:
    """Parses ``n=..,row=..,col=..[,seed=..]``.

    Raises:
        ParserInvalidRunSpecError: On syntax errors, repeated or missing keys.
    """
    try:
        values = _parse(_GALLAGER_GRAMMAR, _GallagerTransformer(), text)
    except (lark.exceptions.LarkError, ValueError) as err:
        raise ParserInvalidRunSpecError("Gallager spec", text) from err
    if any(key not in values for key in _GALLAGER_REQUIRED):
        raise ParserInvalidRunSpecError("Gallager spec", text)
    seed = values.get("seed", 0)
    return GallagerSpec(values["n"], values["row"], values["col"], seed)


def parse_checks(text: str) -> list[str]:
    """Splits a comma-separated check list, dropping repeats.

    Raises:
        ParserInvalidRunSpecError: If a name is malformed.
    """
    try:
        tree = Lark(_CHECKS_GRAMMAR, parser="lalr").parse(text)
    except lark.exceptions.LarkError as err:
        raise ParserInvalidRunSpecError("check list", text) from err
    return list(dict.fromkeys(str(token) for token in tree.children))
