PARSER_ERROR_SUFFIX = """Expected the MacKay alist layout:

    n m
    max_col_degree max_row_degree
    <n column degrees>
    <m row degrees>
    <n lines of 1-based row indices, zero padded>
    <m lines of 1-based column indices, zero padded>
    """


# ---- Finite fields ----------------------------------------------------------


class NotPrimePowerError(Exception):
    """Raised when a field order is not a prime power."""

    default_message = "Field order %d is not a prime power."

    def __init__(self, q: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            q (int): The rejected field order.
            message (str): The error message.
        """
        self.message = message % q
        super().__init__(self.message)


class OutOfSupportedRangeError(Exception):
    """Raised when a field order lies outside the supported range."""

    default_message = "Field order %d is outside the supported range %d..%d."

    def __init__(
        self, q: int, low: int, high: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            q (int): The rejected field order.
            low (int): Smallest supported order.
            high (int): Largest supported order.
            message (str): The error message.
        """
        self.message = message % (q, low, high)
        super().__init__(self.message)


class DivisionByZeroError(Exception):
    """Raised when inverting or dividing by the zero element."""

    default_message = "Division by zero in F_%d."

    def __init__(self, q: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            q (int): Order of the field.
            message (str): The error message.
        """
        self.message = message % q
        super().__init__(self.message)


class FieldElementRangeError(Exception):
    """Raised when an element index does not belong to the field."""

    default_message = "Element index %d is not in F_%d."

    def __init__(self, index: int, q: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            index (int): The rejected index.
            q (int): Order of the field.
            message (str): The error message.
        """
        self.message = message % (index, q)
        super().__init__(self.message)


class EvenCharacteristicError(Exception):
    """Raised when an odd-characteristic operation is used over an even field."""

    default_message = "'%s' requires odd q, got q=%d."

    def __init__(self, operation: str, q: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            operation (str): Name of the rejected operation.
            q (int): Order of the field.
            message (str): The error message.
        """
        self.message = message % (operation, q)
        super().__init__(self.message)


class OddCharacteristicError(Exception):
    """Raised when a characteristic-2 operation is used over an odd field."""

    default_message = "'%s' requires even q, got q=%d."

    def __init__(self, operation: str, q: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            operation (str): Name of the rejected operation.
            q (int): Order of the field.
            message (str): The error message.
        """
        self.message = message % (operation, q)
        super().__init__(self.message)


# ---- Geometry ---------------------------------------------------------------


class UnknownFamilyError(Exception):
    """Raised when a conic family tag is not one of 1, 2 or 3."""

    default_message = "Unknown conic family %r. Supported families are 1, 2 and 3."

    def __init__(self, family: object, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            family (object): The rejected family tag.
            message (str): The error message.
        """
        self.message = message % (family,)
        super().__init__(self.message)


class InvalidConicError(Exception):
    """Raised when conic parameters violate the family's smoothness condition."""

    default_message = "Parameters (a=%d, b=%d, c=%d) do not define a family %d conic."

    def __init__(  # noqa: PLR0913
        self, family: int, a: int, b: int, c: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            family (int): Family tag.
            a (int): First parameter.
            b (int): Second parameter.
            c (int): Constant term.
            message (str): The error message.
        """
        self.message = message % (a, b, c, family)
        super().__init__(self.message)


class PointNotOnConicError(Exception):
    """Raised when a tangent is requested at a point off the conic."""

    default_message = "Point %s does not lie on %s."

    def __init__(
        self, point: object, conic: object, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            point (object): The offending point.
            conic (object): The conic.
            message (str): The error message.
        """
        self.message = message % (point, conic)
        super().__init__(self.message)


class PointOnConicError(Exception):
    """Raised when a conic is required to avoid a point but passes through it."""

    default_message = "Conic %s passes through %s."

    def __init__(
        self, conic: object, point: object, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            conic (object): The conic.
            point (object): The point it should avoid.
            message (str): The error message.
        """
        self.message = message % (conic, point)
        super().__init__(self.message)


class ForbiddenLineDirectionError(Exception):
    """Raised when a line direction is excluded from a family's structure."""

    default_message = "Lines of class %s are not allowed for family %d."

    def __init__(
        self, direction: object, family: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            direction (object): The rejected parallel class.
            family (int): Family tag.
            message (str): The error message.
        """
        self.message = message % (direction, family)
        super().__init__(self.message)


# ---- Codewords --------------------------------------------------------------


class ClassEqualsBaseError(Exception):
    """Raised when the involution is applied to the class of the base line."""

    default_message = "Class %s equals the base class."

    def __init__(self, direction: object, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            direction (object): The rejected parallel class.
            message (str): The error message.
        """
        self.message = message % (direction,)
        super().__init__(self.message)


class ForbiddenClassError(Exception):
    """Raised when a parallel class is not admissible for a family."""

    default_message = "Class %s is not admissible for family %d."

    def __init__(
        self, direction: object, family: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            direction (object): The rejected parallel class.
            family (int): Family tag.
            message (str): The error message.
        """
        self.message = message % (direction, family)
        super().__init__(self.message)


class DegenerateClassPairError(Exception):
    """Raised when no admissible pair of classes yields a codeword."""

    default_message = "No admissible class pair for base class %s and class %s."

    def __init__(
        self, base: object, direction: object, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            base (object): Class of the base line.
            direction (object): The starting class.
            message (str): The error message.
        """
        self.message = message % (base, direction)
        super().__init__(self.message)


class DimensionTooLargeError(Exception):
    """Raised when exhaustive enumeration is requested for a large code."""

    default_message = "Code dimension %d exceeds the exhaustive search limit %d."

    def __init__(
        self, dimension: int, limit: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            dimension (int): Dimension of the code.
            limit (int): Largest dimension searched exhaustively.
            message (str): The error message.
        """
        self.message = message % (dimension, limit)
        super().__init__(self.message)


# ---- Linear algebra ---------------------------------------------------------


class OddQRequiredError(Exception):
    """Raised when a dimension polynomial is evaluated at an even q."""

    default_message = "The dimension polynomial is defined for odd q only, got %d."

    def __init__(self, q: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            q (int): The rejected field order.
            message (str): The error message.
        """
        self.message = message % q
        super().__init__(self.message)


class UnsupportedFamilyError(Exception):
    """Raised when no dimension polynomial exists for a family."""

    default_message = "No dimension polynomial exists for family %d."

    def __init__(self, family: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            family (int): Family tag.
            message (str): The error message.
        """
        self.message = message % family
        super().__init__(self.message)


class MatrixFormatError(Exception):
    """Raised when row supports are unsorted, duplicated or out of bounds."""

    default_message = "Invalid support in row %d: %s."

    def __init__(self, row: int, reason: str, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            row (int): Index of the offending row.
            reason (str): What is wrong with it.
            message (str): The error message.
        """
        self.message = message % (row, reason)
        super().__init__(self.message)


# ---- Decoding and simulation ------------------------------------------------


class LengthMismatchError(Exception):
    """Raised when an LLR vector does not match the code length."""

    default_message = "Expected %d channel values, got %d."

    def __init__(
        self, expected: int, received: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            expected (int): Code length.
            received (int): Length of the given vector.
            message (str): The error message.
        """
        self.message = message % (expected, received)
        super().__init__(self.message)


class ChannelRateError(Exception):
    """Raised when a code rate is not strictly between 0 and 1."""

    default_message = "Code rate %s is not in the open interval (0, 1)."

    def __init__(self, rate: float, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            rate (float): The rejected rate.
            message (str): The error message.
        """
        self.message = message % rate
        super().__init__(self.message)


class InvalidIterationsError(Exception):
    """Raised when the decoder is asked for fewer than one iteration."""

    default_message = "The decoder needs at least one iteration, got %d."

    def __init__(self, max_iter: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            max_iter (int): The rejected iteration cap.
            message (str): The error message.
        """
        self.message = message % max_iter
        super().__init__(self.message)


class InvalidDivisibilityError(Exception):
    """Raised when Gallager parameters cannot form a regular band matrix."""

    default_message = "Length %d is not divisible by row weight %d."

    def __init__(self, n: int, row_weight: int, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            n (int): Code length.
            row_weight (int): Row weight.
            message (str): The error message.
        """
        self.message = message % (n, row_weight)
        super().__init__(self.message)


# ---- Parsing, reports and configuration -------------------------------------


class ParserUnexpectedTokenError(Exception):
    """Raised when alist input contains an unexpected token."""

    default_message = (
        f"Unexpected token %r at line %d, column %d. {PARSER_ERROR_SUFFIX}"
    )

    def __init__(
        self, token: str, line: int, column: int, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            token (str): The offending token.
            line (int): 1-based line number.
            column (int): 1-based column number.
            message (str): The error message.
        """
        self.line = line
        self.message = message % (token, line, column)
        super().__init__(self.message)


class ParserInvalidAlistError(Exception):
    """Raised when alist input is well formed but inconsistent."""

    default_message = "Invalid alist at line %d: %s."

    def __init__(self, line: int, reason: str, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            line (int): 1-based line number.
            reason (str): What is inconsistent.
            message (str): The error message.
        """
        self.line = line
        self.message = message % (line, reason)
        super().__init__(self.message)


class ParserInvalidRunSpecError(Exception):
    """Raised when an SNR grid, Gallager spec or check list cannot be parsed."""

    default_message = "Cannot parse %s %r."

    def __init__(self, kind: str, text: str, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            kind (str): What was being parsed.
            text (str): The rejected text.
            message (str): The error message.
        """
        self.message = message % (kind, text)
        super().__init__(self.message)


class ReportInvalidCheckError(Exception):
    """Raised when an unknown analysis check is requested."""

    default_message = "Unknown check %r. Supported checks are: %s."

    def __init__(
        self, check: str, supported: list[str], message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            check (str): The rejected check name.
            supported (list[str]): The supported check names.
            message (str): The error message.
        """
        self.message = message % (check, ", ".join(supported))
        super().__init__(self.message)


class ReportPreconditionError(Exception):
    """Raised when a check cannot run on the requested code."""

    default_message = "Check '%s' skipped: %s."

    def __init__(self, check: str, reason: str, message: str = default_message) -> None:
        """Initializes the error.

        Args:
            check (str): The check name.
            reason (str): The violated precondition.
            message (str): The error message.
        """
        self.message = message % (check, reason)
        super().__init__(self.message)


class ConfigError(Exception):
    """Raised when an environment setting has an invalid value."""

    default_message = "Invalid value %r for %s: %s."

    def __init__(
        self, value: str, name: str, reason: str, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            value (str): The rejected raw value.
            name (str): The environment variable.
            reason (str): Why it was rejected.
            message (str): The error message.
        """
        self.message = message % (value, name, reason)
        super().__init__(self.message)


class RunConfigError(Exception):
    """Raised when command-line arguments do not fit the subcommand."""

    default_message = "Invalid arguments for '%s': %s."

    def __init__(
        self, subcommand: str, reason: str, message: str = default_message
    ) -> None:
        """Initializes the error.

        Args:
            subcommand (str): The subcommand being configured.
            reason (str): The violated requirement.
            message (str): The error message.
        """
        self.message = message % (subcommand, reason)
        super().__init__(self.message)


USER_ERRORS = (
    NotPrimePowerError,
    OutOfSupportedRangeError,
    DivisionByZeroError,
    FieldElementRangeError,
    EvenCharacteristicError,
    OddCharacteristicError,
    UnknownFamilyError,
    InvalidConicError,
    PointNotOnConicError,
    PointOnConicError,
    ForbiddenLineDirectionError,
    ClassEqualsBaseError,
    ForbiddenClassError,
    DegenerateClassPairError,
    DimensionTooLargeError,
    OddQRequiredError,
    UnsupportedFamilyError,
    MatrixFormatError,
    LengthMismatchError,
    ChannelRateError,
    InvalidIterationsError,
    InvalidDivisibilityError,
    ParserUnexpectedTokenError,
    ParserInvalidAlistError,
    ParserInvalidRunSpecError,
    ReportInvalidCheckError,
    ReportPreconditionError,
    ConfigError,
    RunConfigError,
)
