"""Published parameters of the conic codes and closed-form predictions.

``TABLES`` holds the length, number of checks, minimum distance, girth and
dimension computed for every tabulated ``(family, q)``. The functions give
the values predicted for any supported order.
"""

from dataclasses import dataclass

from .geometry import check_family


@dataclass(frozen=True)
class TableRow:
    """One tabulated code.

    Args:
        length (int): Number of points.
        checks (int): Number of blocks.
        distance (int): Minimum distance.
        girth (int): Girth of the Tanner graph.
        dimension (int): Dimension of the code.
    """

    length: int
    checks: int
    distance: int
    girth: int
    dimension: int


def _rows(family: int, entries: dict[int, int]) -> dict[tuple[int, int], TableRow]:
    return {
        (family, q): TableRow(
            expected_points(family, q),
            q**3,
            expected_min_distance(q),
            expected_girth(family, q),
            dimension,
        )
        for q, dimension in entries.items()
    }


def expected_points(family: int, q: int) -> int:
    """Number of flags with an allowed class: q^3, q^2(q-1) or q^2(q+1)."""
    check_family(family)
    return q * q * (q, q - 1, q + 1)[family - 1]


def expected_block_size(family: int, q: int) -> int:
    """Size of every block, conic or exceptional."""
    check_family(family)
    return (q, q - 1, q + 1)[family - 1]


def expected_girth(family: int, q: int) -> int:
    """Girth 6 for family 1 with q even and families 2, 3 with q odd, else 8."""
    check_family(family)
    even = q % 2 == 0
    if family == 1:
        return 6 if even else 8
    return 6 if not even else 8


def expected_min_distance(q: int) -> int:
    return 2 * q


def expected_six_cycles(family: int, q: int) -> int | None:
    """Exact 6-cycle count where a closed form is known, ``None`` otherwise."""
    if expected_girth(family, q) == 8:  # noqa: PLR2004
        return 0
    if family == 1:
        return q**3 * (q - 1) ** 3 * (q - 2) // 6
    return None


def six_cycle_bound(family: int, q: int) -> int | None:
    """Upper bound on the 6-cycle count for families 2 and 3 with q odd."""
    if expected_girth(family, q) == 8:  # noqa: PLR2004
        return 0
    if family == 2:  # noqa: PLR2004
        return q * q * (q - 1) * (q**3 - q * q - q) // 3
    if family == 3:  # noqa: PLR2004
        return 2 * q**4 * (q + 1) * (q - 2)
    return None


def kappa_expectation(family: int, q: int) -> tuple[int, bool]:
    """Largest kappa over flags and avoiding conics.

    Returns:
        tuple[int, bool]: The value and whether it is attained (``True``) or
        only an upper bound (``False``).
    """
    check_family(family)
    if q % 2 == 0:
        return (q - 2, True) if family == 1 else (1, True)
    return {1: (1, True), 2: (2, False), 3: (4, False)}[family]


TABLES = {
    **_rows(1, {5: 44, 7: 132, 9: 296, 11: 560, 13: 948, 25: 7224, 31: 13980}),
    **_rows(1, {4: 23, 8: 259, 16: 2615, 32: 24151}),
    **_rows(2, {5: 19, 7: 77, 9: 199, 11: 409, 13: 731, 25: 6359, 31: 12629}),
    **_rows(2, {4: 11, 8: 176, 16: 2001, 32: 19594}),
    **_rows(
        3,
        {5: 29, 7: 102, 9: 248, 11: 490, 13: 852, 17: 2032, 25: 7513, 31: 14431},
    ),
    **_rows(3, {4: 19, 8: 223, 16: 2223, 32: 21575}),
}


def table_row(family: int, q: int) -> TableRow | None:
    return TABLES.get((family, q))


def family_dimensions(family: int) -> dict[int, int]:
    """Tabulated dimensions of one family by field order."""
    return {q: row.dimension for (i, q), row in sorted(TABLES.items()) if i == family}
