"""Evaluation metrics: MAE, RMSE, relative errors, correlation, timings.

Relative errors are reported as percentages of the mean-predictor baseline;
correlation is Pearson's r with an in-band None when either side has zero
variance (constant predictors are legitimate baselines, not errors).
Durations use the monotonic wall clock and are reported at millisecond
resolution.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .dataset import Dataset
from .errors import (
    DimensionMismatch,
    EmptyPairs,
    GradecastError,
    NonFiniteInput,
    ZeroDenominator,
)

Predictor = Union[Callable[[Mapping[str, float]], float], object]


@dataclass(frozen=True)
class PredictionPairs:
    predicted: tuple

    actual: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "predicted", tuple(float(v) for v in self.predicted))
        object.__setattr__(self, "actual", tuple(float(v) for v in self.actual))
        if len(self.predicted) != len(self.actual):
            raise DimensionMismatch(len(self.actual), len(self.predicted))
        if not self.predicted:
            raise EmptyPairs("need at least one prediction pair")
        for label, values in (("predicted", self.predicted), ("actual", self.actual)):
            if not all(math.isfinite(v) for v in values):
                raise NonFiniteInput(f"{label} values")

    @property
    def n(self) -> int:
        return len(self.predicted)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.asarray(self.predicted, dtype=np.float64),
                np.asarray(self.actual, dtype=np.float64))


@dataclass(frozen=True)
class EvaluationReport:
    mae: float
    rmse: float
    rae_percent: float
    rrse_percent: float
    correlation: Optional[float]
    build_time_s: float
    test_time_s: float

    def __post_init__(self) -> None:
        for name in ("mae", "rmse", "rae_percent", "rrse_percent",
                     "build_time_s", "test_time_s"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise GradecastError(f"{name} must be finite and >= 0, got {value!r}")
        if self.correlation is not None and not -1.0 <= self.correlation <= 1.0:
            raise GradecastError(
                f"correlation must lie in [-1, 1], got {self.correlation!r}")

    def to_dict(self) -> dict:
        return {
            "mae": self.mae,
            "rmse": self.rmse,
            "rae_percent": self.rae_percent,
            "rrse_percent": self.rrse_percent,
            "correlation": self.correlation,
            "build_time_s": self.build_time_s,
            "test_time_s": self.test_time_s,
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Mapping) -> "EvaluationReport":
        correlation = data["correlation"]
        return cls(
            mae=float(data["mae"]),
            rmse=float(data["rmse"]),
            rae_percent=float(data["rae_percent"]),
            rrse_percent=float(data["rrse_percent"]),
            correlation=None if correlation is None else float(correlation),
            build_time_s=float(data["build_time_s"]),
            test_time_s=float(data["test_time_s"]),
        )

    @classmethod
    def from_json(cls, text: Union[str, bytes]) -> "EvaluationReport":
        return cls.from_dict(json.loads(text))


def mae(p: PredictionPairs) -> float:
    """Mean absolute error."""
    predicted, actual = p.arrays()
    return float(np.mean(np.abs(predicted - actual)))


def rmse(p: PredictionPairs) -> float:
    """Root mean squared error."""
    predicted, actual = p.arrays()
    return float(np.sqrt(np.mean((predicted - actual) ** 2)))


def rae(p: PredictionPairs) -> float:
    """Relative absolute error in percent of the mean-predictor baseline."""
    predicted, actual = p.arrays()
    denominator = float(np.sum(np.abs(actual - np.mean(actual))))
    if denominator == 0.0:
        raise ZeroDenominator("rae")
    return float(100.0 * np.sum(np.abs(predicted - actual)) / denominator)


def rrse(p: PredictionPairs) -> float:
    """Root relative squared error in percent of the mean-predictor baseline."""
    predicted, actual = p.arrays()
    denominator = float(np.sum((actual - np.mean(actual)) ** 2))
    if denominator == 0.0:
        raise ZeroDenominator("rrse")
    return float(100.0 * np.sqrt(np.sum((predicted - actual) ** 2) / denominator))


def correlation(p: PredictionPairs) -> Optional[float]:
    """Pearson's r, or None when either vector has zero variance."""
    predicted, actual = p.arrays()
    # all-equal is the exact zero-variance test; mean round-off would
    # otherwise leak a spurious near-zero r for constant predictors
    if np.all(predicted == predicted[0]) or np.all(actual == actual[0]):
        return None
    dp = predicted - np.mean(predicted)
    da = actual - np.mean(actual)
    ssp = float(np.sum(dp * dp))
    ssa = float(np.sum(da * da))
    if ssp == 0.0 or ssa == 0.0:
        return None
    r = float(np.sum(dp * da) / math.sqrt(ssp * ssa))
    return max(-1.0, min(1.0, r))


def _as_callable(model: Predictor) -> Callable[[Mapping[str, float]], float]:
    predict = getattr(model, "predict", None)
    if callable(predict):
        return predict
    if callable(model):
        return model
    raise GradecastError(f"{model!r} is neither callable nor has a predict method")


def predictions_for(model: Predictor, test: Dataset) -> PredictionPairs:
    """Run the model over every test sample and pair with the actual grades."""
    fn = _as_callable(model)
    predicted = tuple(float(fn(sample.features)) for sample in test.samples)
    actual = tuple(sample.target for sample in test.samples)
    return PredictionPairs(predicted=predicted, actual=actual)


def evaluate(model: Predictor, test: Dataset,
             build_time_s: float = 0.0) -> EvaluationReport:
    """Assemble the full report; test duration is measured here.

    build_time_s is whatever the caller clocked while fitting (0.0 when the
    model was not built in this process). Both durations are rounded to
    milliseconds.
    """
    start = time.monotonic()
    pairs = predictions_for(model, test)
    elapsed = time.monotonic() - start
    return EvaluationReport(
        mae=mae(pairs),
        rmse=rmse(pairs),
        rae_percent=rae(pairs),
        rrse_percent=rrse(pairs),
        correlation=correlation(pairs),
        build_time_s=round(build_time_s, 3),
        test_time_s=round(elapsed, 3),
    )
