from flask import Blueprint, Response, jsonify, request

from .exceptions import USER_ERRORS
from .parser import parse_checks, write_alist
from .report import report_matches
from .utils import analyze, build_code, code_summary

DEFAULT_CHECKS = "counts,girth,rank"
STATUS_BAD_REQUEST = 400

main = Blueprint("main", __name__, url_prefix="/api")


def _user_error(err: Exception) -> tuple[Response, int]:
    return jsonify({"error": getattr(err, "message", str(err))}), STATUS_BAD_REQUEST


for _error in USER_ERRORS:
    main.register_error_handler(_error, _user_error)


@main.route("/codes/<int:family>/<int:q>")
def code(family: int, q: int) -> Response:
    """Summarizes a conic code.

    Args:
        family (int): Conic family.
        q (int): Field order.

    Returns:
        Response: JSON with the length, checks, weights and matrix hash.
    """
    return jsonify(code_summary(family, q))


@main.route("/codes/<int:family>/<int:q>/alist")
def alist(family: int, q: int) -> Response:
    """Serves the parity-check matrix of a conic code as an alist download.

    Args:
        family (int): Conic family.
        q (int): Field order.

    Returns:
        Response: The alist text.
    """
    _, matrix = build_code(family, q)
    return Response(
        write_alist(matrix),
        mimetype="text/plain",
        headers={"Content-Disposition": f"attachment; filename=c{family}_{q}.alist"},
    )


@main.route("/codes/<int:family>/<int:q>/analyze")
def analyze_code(family: int, q: int) -> Response:
    """Runs the checks named in the ``checks`` query parameter.

    Args:
        family (int): Conic family.
        q (int): Field order.

    Returns:
        Response: JSON with the report entries and an overall match flag.
    """
    checks = parse_checks(request.args.get("checks", DEFAULT_CHECKS))
    entries = list(analyze(family, q, checks))
    return jsonify({"entries": entries, "matches": report_matches(entries)})
