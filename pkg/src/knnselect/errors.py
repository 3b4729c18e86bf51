"""Exception hierarchy.

Every error raised on bad input derives from :class:`KnnSelectError`, which
itself derives from :class:`ValueError` so callers that only care about
"bad input" can catch the builtin.
"""


class KnnSelectError(ValueError):
    """Base class for all validation and usage errors in this package."""


class EmptyData(KnnSelectError):
    pass


class DimensionMismatch(KnnSelectError):
    pass


class NonFiniteValue(KnnSelectError):
    """A feature or target value is NaN or infinite."""

    def __init__(self, row, col=None):
        self.row = row
        self.col = col
        where = f"row {row}" if col is None else f"row {row}, column {col}"
        super().__init__(f"non-finite value at {where}")


class DuplicateColumnName(KnnSelectError):
    pass


class IndexOutOfRange(KnnSelectError):
    pass


class DuplicateIndex(KnnSelectError):
    pass


class LengthMismatch(KnnSelectError):
    pass


class NonBinaryInput(KnnSelectError):
    pass


class InvalidOrder(KnnSelectError):
    pass


class KTooLarge(KnnSelectError):
    pass


class TaskMismatch(KnnSelectError):
    pass


class TooFewClasses(KnnSelectError):
    pass


class ResponseMissing(KnnSelectError):
    pass


class SchemaMismatch(KnnSelectError):
    pass


class TooFewRows(KnnSelectError):
    pass


class EmptyInput(KnnSelectError):
    pass


class DegenerateSplit(KnnSelectError):
    pass


class InvalidCorrelation(KnnSelectError):
    pass


class InvalidConfig(KnnSelectError):
    pass


class CsvParseError(KnnSelectError):
    """A CSV cell could not be parsed. ``row`` is 1-based and counts the header."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        super().__init__(message)
