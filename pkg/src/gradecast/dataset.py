"""Dataset ingestion, factor aggregation, normalization and splitting.

A dataset is a flat table of named numeric features plus a ``grade`` target.
Two granularities exist: ``variable`` (the raw x1..x70 items, or any ad-hoc
feature set) and ``factor`` (the 21 summed factor scores). CSV loading is
strict: unparsable or out-of-range cells raise with row/column diagnostics
rather than being silently dropped.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .errors import (
    DegenerateFeature,
    EmptyDataset,
    GradecastError,
    MissingColumn,
    NonNumericCell,
    OutOfScaleValue,
    TooFewSamples,
    WrongGranularity,
)
from .schema import (
    DEFAULT_GRADE_BOUNDS,
    FACTOR_FEATURES,
    FactorCode,
    QuestionnaireSchema,
    VARIABLE_IDS,
    builtin_schema,
    factor_members,
)

VARIABLE = "variable"
FACTOR = "factor"


@dataclass(frozen=True)
class Sample:
    """One respondent: feature map plus grade target."""

    features: dict[str, float]
    target: float


@dataclass(frozen=True)
class Dataset:
    feature_names: tuple[str, ...]
    samples: tuple[Sample, ...]
    granularity: str = VARIABLE

    def __post_init__(self):
        if self.granularity not in (VARIABLE, FACTOR):
            raise GradecastError(f"unknown granularity: {self.granularity!r}")
        names = set(self.feature_names)
        for i, sample in enumerate(self.samples):
            if set(sample.features) != names:
                raise GradecastError(f"sample {i} does not match declared features")
            if not math.isfinite(sample.target):
                raise GradecastError(f"sample {i} has non-finite target")
            for name, value in sample.features.items():
                if not math.isfinite(value):
                    raise GradecastError(f"sample {i} feature {name!r} non-finite")

    def __len__(self) -> int:
        return len(self.samples)

    def feature_matrix(self) -> np.ndarray:
        """Samples as a (n, p) float64 array in feature_names order."""
        return np.array(
            [[s.features[name] for name in self.feature_names] for s in self.samples],
            dtype=np.float64,
        ).reshape(len(self.samples), len(self.feature_names))

    def targets(self) -> np.ndarray:
        return np.array([s.target for s in self.samples], dtype=np.float64)

    def to_dict(self) -> dict:
        return {
            "granularity": self.granularity,
            "feature_names": list(self.feature_names),
            "samples": [
                {"features": dict(s.features), "grade": s.target} for s in self.samples
            ],
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, payload: dict) -> "Dataset":
        return cls(
            feature_names=tuple(payload["feature_names"]),
            samples=tuple(
                Sample({k: float(v) for k, v in entry["features"].items()},
                       float(entry["grade"]))
                for entry in payload["samples"]
            ),
            granularity=payload["granularity"],
        )


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise GradecastError(
                f"train_fraction must be in (0, 1), got {self.train_fraction}"
            )
        if self.seed < 0:
            raise GradecastError("seed must be non-negative")


def from_arrays(features: np.ndarray, targets: np.ndarray,
                feature_names: Iterable[str] | None = None,
                granularity: str = VARIABLE) -> Dataset:
    """Build a Dataset from a (n, p) matrix and an (n,) target vector."""
    features = np.asarray(features, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if features.ndim != 2 or features.shape[0] != targets.shape[0]:
        raise GradecastError("features must be (n, p) with matching targets")
    names = tuple(feature_names) if feature_names is not None else tuple(
        f"f{j}" for j in range(features.shape[1])
    )
    samples = tuple(
        Sample({name: float(row[j]) for j, name in enumerate(names)}, float(t))
        for row, t in zip(features, targets)
    )
    return Dataset(feature_names=names, samples=samples, granularity=granularity)


def _read_text(source: IO | bytes | str) -> str:
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _parse_cell(raw: str, row: int, column: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise NonNumericCell(row, column, raw) from None
    if not math.isfinite(value):
        raise NonNumericCell(row, column, raw)
    return value


def load_csv(
    source: IO | bytes | str,
    schema: QuestionnaireSchema | None = None,
    *,
    check_scale: bool = True,
    grade_bounds: tuple[float, float] = DEFAULT_GRADE_BOUNDS,
) -> Dataset:
    """Parse a CSV byte stream into a Dataset.

    The header decides the granularity: all of x1..x70 present means a
    variable-level survey table, all 21 lowercase factor codes means a
    factor-level table. Any other header with a ``grade`` column is loaded
    as a generic variable-level dataset (no scale checks apply there).
    ``source`` is the CSV content itself (text, bytes, or a file object),
    not a path. Row numbers in diagnostics are 1-based over data rows.
    """
    schema = schema or builtin_schema()
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise EmptyDataset("CSV has no header row") from None

    if "grade" not in header:
        raise MissingColumn("grade")

    columns = set(header)
    if all(v in columns for v in VARIABLE_IDS):
        granularity, names, survey = VARIABLE, VARIABLE_IDS, True
    elif all(f in columns for f in FACTOR_FEATURES):
        granularity, names, survey = FACTOR, FACTOR_FEATURES, True
    else:
        # Partial survey headers are an error; anything else is generic.
        present_vars = [v for v in VARIABLE_IDS if v in columns]
        if present_vars and len(present_vars) < len(VARIABLE_IDS):
            missing = next(v for v in VARIABLE_IDS if v not in columns)
            raise MissingColumn(missing)
        granularity = VARIABLE
        names = tuple(h for h in header if h != "grade")
        survey = False
        if not names:
            raise MissingColumn("at least one feature column")

    positions = {name: header.index(name) for name in names}
    grade_pos = header.index("grade")

    bounds: dict[str, tuple[float, float]] = {}
    if survey and check_scale:
        scale = schema.scale
        if granularity == VARIABLE:
            bounds = {name: (float(scale.min), float(scale.max)) for name in names}
        else:
            for code in FactorCode:
                m = len(factor_members(schema, code))
                bounds[code.value.lower()] = (float(m * scale.min), float(m * scale.max))

    samples = []
    for row_num, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise NonNumericCell(row_num, header[len(row)], "<missing>")
        features = {}
        for name in names:
            value = _parse_cell(row[positions[name]].strip(), row_num, name)
            if name in bounds:
                lo, hi = bounds[name]
                if not lo <= value <= hi:
                    raise OutOfScaleValue(row_num, name, value, lo, hi)
            features[name] = value
        target = _parse_cell(row[grade_pos].strip(), row_num, "grade")
        if survey and check_scale:
            lo, hi = grade_bounds
            if not lo <= target <= hi:
                raise OutOfScaleValue(row_num, "grade", target, lo, hi)
        samples.append(Sample(features, target))

    if not samples:
        raise EmptyDataset("CSV has a header but no data rows")
    return Dataset(feature_names=tuple(names), samples=tuple(samples),
                   granularity=granularity)


def serialize_csv(d: Dataset) -> str:
    """Inverse of load_csv: comma-separated, header row, '.' decimals."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(d.feature_names) + ["grade"])
    for sample in d.samples:
        writer.writerow(
            [repr(sample.features[n]) for n in d.feature_names] + [repr(sample.target)]
        )
    return out.getvalue()


def aggregate_factors(d: Dataset, schema: QuestionnaireSchema | None = None) -> Dataset:
    """Sum each factor's member variables into one factor-level feature."""
    if d.granularity != VARIABLE:
        raise WrongGranularity(VARIABLE, d.granularity)
    schema = schema or builtin_schema()
    missing = [v for v in VARIABLE_IDS if v not in d.feature_names]
    if missing:
        raise MissingColumn(missing[0])
    members = {code: factor_members(schema, code) for code in FactorCode}
    samples = tuple(
        Sample(
            {
                code.value.lower(): sum(s.features[m] for m in members[code])
                for code in FactorCode
            },
            s.target,
        )
        for s in d.samples
    )
    return Dataset(feature_names=FACTOR_FEATURES, samples=samples, granularity=FACTOR)


def aggregate_responses(responses: dict[str, float],
                        schema: QuestionnaireSchema | None = None) -> dict[str, float]:
    """Factor-sum a single variable-level response map."""
    schema = schema or builtin_schema()
    for v in VARIABLE_IDS:
        if v not in responses:
            raise MissingColumn(v)
    return {
        code.value.lower(): sum(responses[m] for m in factor_members(schema, code))
        for code in FactorCode
    }


def normalize(d: Dataset, method: str = "none") -> Dataset:
    """Rescale features; the grade target is never touched.

    ``none`` is the identity. ``minmax`` maps each feature to [0, 1] by
    (v - min) / (max - min) over this dataset's values.
    """
    if method == "none":
        return d
    if method != "minmax":
        raise GradecastError(f"unknown normalization method: {method!r}")
    matrix = d.feature_matrix()
    lo = matrix.min(axis=0)
    hi = matrix.max(axis=0)
    for j, name in enumerate(d.feature_names):
        if hi[j] == lo[j]:
            raise DegenerateFeature(name)
    scaled = (matrix - lo) / (hi - lo)
    samples = tuple(
        Sample({name: float(scaled[i, j]) for j, name in enumerate(d.feature_names)},
               s.target)
        for i, s in enumerate(d.samples)
    )
    return Dataset(d.feature_names, samples, d.granularity)


def split_train_test(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Deterministic seeded partition into (train, test).

    Shuffles with numpy's default PCG64 generator seeded by ``spec.seed``,
    then takes the first round(train_fraction * n) samples (clamped to
    [1, n-1]) as the training set. Identical seeds give identical splits.
    """
    n = len(d.samples)
    if n < 2:
        raise TooFewSamples(2, n)
    rng = np.random.default_rng(spec.seed)
    order = rng.permutation(n)
    k = min(max(round(spec.train_fraction * n), 1), n - 1)
    train = tuple(d.samples[i] for i in order[:k])
    test = tuple(d.samples[i] for i in order[k:])
    return (
        Dataset(d.feature_names, train, d.granularity),
        Dataset(d.feature_names, test, d.granularity),
    )
