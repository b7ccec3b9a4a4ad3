"""Exception types raised across the package.

Every error derives from :class:`GradecastError` so callers can catch the
whole family; structured fields (row, column, feature name, label) are kept
on the exception for diagnostics.
"""

from __future__ import annotations


class GradecastError(Exception):
    """Base class for all package errors."""


class MissingColumn(GradecastError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"missing required column: {column}")


class NonNumericCell(GradecastError):
    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"non-numeric cell at row {row}, column {column!r}: {value!r}")


class OutOfScaleValue(GradecastError):
    def __init__(self, row: int, column: str, value: float, lo: float, hi: float):
        self.row = row
        self.column = column
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"value {value} at row {row}, column {column!r} outside [{lo}, {hi}]"
        )


class EmptyDataset(GradecastError):
    def __init__(self, message: str = "dataset has no samples"):
        super().__init__(message)


class WrongGranularity(GradecastError):
    def __init__(self, expected: str, actual: str):
        self.expected = expected
        self.actual = actual
        super().__init__(f"expected {expected}-level dataset, got {actual}-level")


class DegenerateFeature(GradecastError):
    def __init__(self, feature: str):
        self.feature = feature
        super().__init__(f"feature {feature!r} is constant; min-max scaling undefined")


class TooFewSamples(GradecastError):
    def __init__(self, needed: int, got: int):
        self.needed = needed
        self.got = got
        super().__init__(f"need at least {needed} samples, got {got}")


class NonFiniteInput(GradecastError):
    def __init__(self, where: str):
        super().__init__(f"non-finite value in {where}")


class MissingFeature(GradecastError):
    def __init__(self, feature: str):
        self.feature = feature
        super().__init__(f"missing feature: {feature}")


class SingularClassModel(GradecastError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"class model for label {label!r} is singular (zero columns)")


class DimensionMismatch(GradecastError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"expected vector of dimension {expected}, got {got}")


class EmptyInput(GradecastError):
    def __init__(self, message: str = "empty input"):
        super().__init__(message)


class InvalidPartition(GradecastError):
    def __init__(self, message: str = "left/right do not partition the targets"):
        super().__init__(message)


class EmptyPairs(GradecastError):
    def __init__(self, message: str = "no prediction pairs"):
        super().__init__(message)


class ZeroDenominator(GradecastError):
    def __init__(self, metric: str):
        self.metric = metric
        super().__init__(f"{metric} undefined: actual values are constant")
