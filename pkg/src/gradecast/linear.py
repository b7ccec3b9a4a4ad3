"""Linear models: ordinary least squares and subspace-distance classification.

OLS is solved through the normal equations. When the normal matrix's
condition estimate exceeds :data:`COND_THRESHOLD`, a small ridge term
``lambda = 1e-8 * trace(A) / n_samples`` is added and the fit is flagged
rank-deficient; with that tiny lambda the fitted values stay within 1e-6
of the pseudo-inverse solution.

The classifier projects a probe vector onto each class's training-column
subspace and picks the class with the smallest residual L2 distance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .dataset import Dataset
from .errors import (
    DimensionMismatch,
    GradecastError,
    MissingFeature,
    NonFiniteInput,
    SingularClassModel,
    TooFewSamples,
)

COND_THRESHOLD = 1e10


@dataclass(frozen=True)
class LinearModel:
    """Sparse affine model: intercept plus named coefficients.

    Features absent from the coefficient map contribute zero, which is how
    insignificant variables are represented.
    """

    coefficients: dict[str, float]
    intercept: float
    feature_order: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.feature_order:
            object.__setattr__(self, "feature_order", tuple(self.coefficients))
        elif set(self.feature_order) != set(self.coefficients):
            raise GradecastError(
                "feature_order must name exactly the coefficient features")
        values = list(self.coefficients.values()) + [self.intercept]
        if not np.all(np.isfinite(values)):
            raise NonFiniteInput("linear model parameters")

    def predict(self, x: Mapping[str, float]) -> float:
        return predict_linear(self, x)

    @property
    def n_params(self) -> int:
        # intercept counts as a parameter
        return len(self.coefficients) + 1

    def to_dict(self) -> dict:
        return {
            "intercept": self.intercept,
            "coefficients": {name: self.coefficients[name] for name in self.feature_order},
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, payload: dict) -> "LinearModel":
        coefficients = {k: float(v) for k, v in payload["coefficients"].items()}
        return cls(coefficients=coefficients, intercept=float(payload["intercept"]))

    @classmethod
    def from_json(cls, text: str) -> "LinearModel":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class FitDiagnostics:
    residual_sum_squares: float
    rank_deficient: bool = False
    ridge_used: float = 0.0


def _solve_least_squares(design: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, bool, float]:
    """Normal-equation solve with the ridge fallback; returns (beta, flag, lambda)."""
    a = design.T @ design
    b = design.T @ y
    cond = np.linalg.cond(a)
    ridge = 0.0
    rank_deficient = False
    if not np.isfinite(cond) or cond > COND_THRESHOLD:
        ridge = 1e-8 * float(np.trace(a)) / design.shape[0]
        rank_deficient = True
        if ridge <= 0.0:
            raise np.linalg.LinAlgError("normal matrix has zero trace")
        a = a + ridge * np.eye(a.shape[0])
    beta = np.linalg.solve(a, b)
    return beta, rank_deficient, ridge


def fit_ols(d: Dataset, features: list[str] | None = None) -> tuple[LinearModel, FitDiagnostics]:
    """Least-squares fit of the grade target on the named features."""
    names = list(features) if features is not None else list(d.feature_names)
    for name in names:
        if name not in d.feature_names:
            raise MissingFeature(name)
    if len(d.samples) < len(names) + 1:
        raise TooFewSamples(len(names) + 1, len(d.samples))

    x = np.array([[s.features[n] for n in names] for s in d.samples], dtype=np.float64)
    x = x.reshape(len(d.samples), len(names))
    y = d.targets()
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise NonFiniteInput("regression inputs")

    design = np.hstack([x, np.ones((x.shape[0], 1))])
    beta, rank_deficient, ridge = _solve_least_squares(design, y)
    residuals = y - design @ beta
    rss = float(residuals @ residuals)
    model = LinearModel(
        coefficients={name: float(beta[j]) for j, name in enumerate(names)},
        intercept=float(beta[-1]),
        feature_order=tuple(names),
    )
    return model, FitDiagnostics(rss, rank_deficient, ridge)


def predict_linear(m: LinearModel, x: Mapping[str, float]) -> float:
    """intercept + sum(coefficient * value); absent coefficients contribute 0."""
    total = m.intercept
    for name in m.feature_order:
        if name not in x:
            raise MissingFeature(name)
        total += m.coefficients[name] * x[name]
    return total


@dataclass(frozen=True)
class ClassModel:
    """Training vectors of one class, stacked as columns (q x p_i)."""

    label: float
    columns: np.ndarray

    def __post_init__(self):
        cols = np.asarray(self.columns, dtype=np.float64)
        if cols.ndim != 2 or cols.shape[1] < 1:
            raise GradecastError("class model needs a (q, p_i) matrix with p_i >= 1")
        if not np.all(np.isfinite(cols)):
            raise NonFiniteInput(f"class model for label {self.label!r}")
        object.__setattr__(self, "columns", cols)


@dataclass(frozen=True)
class LRCState:
    """Fitted classifier: per-class projection matrices, labels ascending."""

    labels: tuple[float, ...]
    hats: tuple[np.ndarray, ...] = field(repr=False)
    dim: int


def lrc_fit(classes: list[ClassModel]) -> LRCState:
    """Precompute each class's least-squares projection onto its column span."""
    if len(classes) < 2:
        raise GradecastError(f"need at least 2 classes, got {len(classes)}")
    dims = {c.columns.shape[0] for c in classes}
    if len(dims) != 1:
        raise DimensionMismatch(classes[0].columns.shape[0], dims.pop())
    q = dims.pop()

    ordered = sorted(classes, key=lambda c: c.label)
    hats = []
    for cls in ordered:
        x = cls.columns
        try:
            # hat = X (X^T X)^-1 X^T, ridge-stabilized like fit_ols
            a = x.T @ x
            cond = np.linalg.cond(a)
            if not np.isfinite(cond) or cond > COND_THRESHOLD:
                ridge = 1e-8 * float(np.trace(a)) / q
                if ridge <= 0.0:
                    raise np.linalg.LinAlgError("zero columns")
                a = a + ridge * np.eye(a.shape[0])
            hats.append(x @ np.linalg.solve(a, x.T))
        except np.linalg.LinAlgError:
            raise SingularClassModel(cls.label) from None
    return LRCState(labels=tuple(c.label for c in ordered), hats=tuple(hats), dim=q)


def lrc_classify(state: LRCState, y: np.ndarray) -> tuple[float, dict[float, float]]:
    """Label of the nearest class subspace, plus all residual distances.

    Ties go to the smallest label (labels are kept in ascending order, so
    the first strict minimum wins).
    """
    y = np.asarray(y, dtype=np.float64).ravel()
    if y.shape[0] != state.dim:
        raise DimensionMismatch(state.dim, y.shape[0])
    distances = {}
    best_label = None
    best = np.inf
    for label, hat in zip(state.labels, state.hats):
        d = float(np.linalg.norm(y - hat @ y))
        distances[label] = d
        if d < best:
            best = d
            best_label = label
    return best_label, distances


def class_models_from_dataset(d: Dataset) -> list[ClassModel]:
    """One ClassModel per distinct grade value; feature vectors as columns."""
    groups: dict[float, list[list[float]]] = {}
    for s in d.samples:
        vec = [s.features[n] for n in d.feature_names]
        groups.setdefault(s.target, []).append(vec)
    return [
        ClassModel(label, np.array(vectors, dtype=np.float64).T)
        for label, vectors in sorted(groups.items())
    ]
