"""Bundled grade-prediction models and coefficient-significance reporting.

Six reference models ship with the package: a linear regression classifier
and the first/final model-tree leaf models, each at variable granularity
(x1..x70) and at factor granularity (the 21 summed factors). Coefficients
were transcribed by hand and double-checked; a golden SHA-256 digest of each
model is stored under resources/ and reverified by verify_transcriptions.

Only the four *final* models are offered for prediction in the registry; the
two first-refinement models remain available for inspection.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Mapping, Optional, Sequence

from .dataset import aggregate_responses
from .errors import GradecastError
from .linear import LinearModel, predict_linear
from .schema import DEFAULT_GRADE_BOUNDS, FACTOR_FEATURES, VARIABLE_IDS
from .tree import ModelTree, TreeNode, predict_tree

DIGEST_RESOURCE = "model_digests.txt"


class PublishedModelId(str, Enum):
    LRC_VARIABLE = "lrc_variable"
    LRC_FACTOR = "lrc_factor"
    M5P_VARIABLE_FIRST = "m5p_variable_first"
    M5P_VARIABLE_FINAL = "m5p_variable_final"
    M5P_FACTOR_FIRST = "m5p_factor_first"
    M5P_FACTOR_FINAL = "m5p_factor_final"


# The four models exposed for prediction; the *_first pair is kept for
# inspection only (the final refinement is what predicts).
FINAL_MODEL_IDS = (
    PublishedModelId.LRC_VARIABLE,
    PublishedModelId.LRC_FACTOR,
    PublishedModelId.M5P_VARIABLE_FINAL,
    PublishedModelId.M5P_FACTOR_FINAL,
)

_LRC_VARIABLE_TERMS = (
    ("x1", 0.0444), ("x2", 0.3166), ("x3", 0.0746), ("x4", -0.0415),
    ("x5", -0.239), ("x6", 0.3153), ("x7", -0.1467), ("x8", 0.3464),
    ("x9", 0.6227), ("x11", -0.1404), ("x12", -0.3228), ("x13", 0.1179),
    ("x14", -0.4613), ("x15", -0.3948), ("x16", 0.4249), ("x17", -0.2241),
    ("x18", -0.1389), ("x19", 0.2025), ("x20", 0.0664), ("x21", 0.133),
    ("x22", 0.1745), ("x23", -0.3222), ("x24", -0.3334), ("x25", -0.2479),
    ("x26", -0.1623), ("x28", 0.0665), ("x29", -0.2556), ("x30", 0.2829),
    ("x31", -0.2215), ("x33", -0.4575), ("x34", 0.135), ("x35", 0.3312),
    ("x36", -0.2152), ("x37", 0.2407), ("x38", 0.1757), ("x39", -0.2986),
    ("x40", 0.1768), ("x41", -0.2375), ("x42", -0.1969), ("x43", 0.2352),
    ("x44", -0.098), ("x45", 0.4561), ("x46", -0.136), ("x47", -0.387),
    ("x48", 0.1525), ("x49", -0.2215), ("x50", 0.0481), ("x51", 0.1292),
    ("x52", 0.1508), ("x53", 0.4368), ("x54", -0.3313), ("x55", -0.1794),
    ("x56", -0.0523), ("x57", -0.3505), ("x58", 0.4718), ("x59", 0.269),
    ("x60", 0.086), ("x61", -0.3004), ("x62", -0.444), ("x63", 0.3544),
    ("x64", -0.2301), ("x65", -0.538), ("x66", 0.0899), ("x67", 0.2394),
    ("x68", -0.0681), ("x69", -0.1007), ("x70", -0.3858),
)

_LRC_FACTOR_TERMS = (
    ("sf", -0.074), ("satd", 0.0942), ("sat", 0.065), ("lat", 0.0449),
    ("lcs", -0.0448), ("la", -0.0407), ("oh", 0.0493), ("oe", 0.0814),
    ("uf", -0.0792), ("fi", 0.0621), ("fs", -0.0663), ("fpe", -0.0533),
    ("fpg", -0.1233),
)

_M5P_VARIABLE_FIRST_TERMS = (
    ("x1", 0.0297), ("x4", 0.0187), ("x5", -0.0376), ("x9", 0.1263),
    ("x12", -0.017), ("x14", -0.0826), ("x15", 0.021), ("x19", 0.0316),
    ("x22", -0.0209), ("x57", 0.0389), ("x59", 0.0211), ("x65", -0.0343),
    ("x69", -0.0217),
)

_M5P_VARIABLE_FINAL_TERMS = (
    ("x1", 0.0155), ("x4", 0.0098), ("x5", -0.0652), ("x7", 0.0552),
    ("x9", 0.1046), ("x12", -0.0089), ("x14", -0.0143), ("x15", 0.011),
    ("x19", -0.0503), ("x22", -0.1112), ("x29", 0.032), ("x33", -0.0288),
    ("x59", 0.0324), ("x65", -0.06), ("x69", -0.188),
)

_M5P_FACTOR_FIRST_TERMS = (
    ("ssh", 0.0481), ("sf", 0.1057), ("satd", 0.0343), ("sat", 0.0084),
    ("st", -0.0083), ("lat", 0.0127), ("lcs", 0.0475), ("la", -0.1963),
    ("oe", 0.0141), ("ucp", 0.0232), ("fs", -0.0248), ("fpe", -0.0097),
    ("fpg", -0.0293),
)

_M5P_FACTOR_FINAL_TERMS = (
    ("sf", -0.0144), ("satd", 0.0307), ("sat", 0.0106), ("st", -0.0101),
    ("lat", 0.0045), ("lcs", -0.0548), ("ld", 0.0202), ("oe", 0.0273),
    ("ob", 0.0675), ("ult", -0.0159), ("fs", -0.0466), ("fpe", -0.0034),
    ("fpg", -0.0321),
)

_TERMS = {
    PublishedModelId.LRC_VARIABLE: (_LRC_VARIABLE_TERMS, 9.8865),
    PublishedModelId.LRC_FACTOR: (_LRC_FACTOR_TERMS, 5.6703),
    PublishedModelId.M5P_VARIABLE_FIRST: (_M5P_VARIABLE_FIRST_TERMS, 3.9539),
    PublishedModelId.M5P_VARIABLE_FINAL: (_M5P_VARIABLE_FINAL_TERMS, 5.9906),
    PublishedModelId.M5P_FACTOR_FIRST: (_M5P_FACTOR_FIRST_TERMS, 5.0805),
    PublishedModelId.M5P_FACTOR_FINAL: (_M5P_FACTOR_FINAL_TERMS, 4.0297),
}

MODEL_DESCRIPTIONS = {
    PublishedModelId.LRC_VARIABLE:
        "Linear regression classifier over the 70 questionnaire variables",
    PublishedModelId.LRC_FACTOR:
        "Linear regression classifier over the 21 summed factors",
    PublishedModelId.M5P_VARIABLE_FIRST:
        "Model tree, first refinement, variable granularity (inspection only)",
    PublishedModelId.M5P_VARIABLE_FINAL:
        "Model tree, final refinement, over the 70 questionnaire variables",
    PublishedModelId.M5P_FACTOR_FIRST:
        "Model tree, first refinement, factor granularity (inspection only)",
    PublishedModelId.M5P_FACTOR_FINAL:
        "Model tree, final refinement, over the 21 summed factors",
}

_CACHE: dict = {}


def model_granularity(model_id: PublishedModelId) -> str:
    if model_id in (PublishedModelId.LRC_VARIABLE,
                    PublishedModelId.M5P_VARIABLE_FIRST,
                    PublishedModelId.M5P_VARIABLE_FINAL):
        return "variable"
    return "factor"


def builtin_model(model_id: PublishedModelId) -> LinearModel:
    """The bundled LinearModel for the given id; coefficients are verbatim."""
    model_id = PublishedModelId(model_id)
    if model_id not in _CACHE:
        terms, intercept = _TERMS[model_id]
        _CACHE[model_id] = LinearModel(coefficients=dict(terms),
                                       intercept=intercept)
    return _CACHE[model_id]


@dataclass(frozen=True)
class PublishedPrediction:
    raw: float
    clamped: float
    # Factor sums echoed when the inputs were variable-level responses that
    # this call aggregated; None when no aggregation happened.
    factor_values: Optional[dict] = None


def clamp_grade(value: float,
                bounds: tuple = DEFAULT_GRADE_BOUNDS) -> float:
    lo, hi = bounds
    return min(max(value, lo), hi)


def model_features(model) -> frozenset:
    """Every feature a model reads: coefficients, or splits plus leaf models."""
    if isinstance(model, LinearModel):
        return frozenset(model.feature_order)

    def walk(node: TreeNode) -> frozenset:
        names = frozenset(node.model.feature_order)
        if node.is_leaf:
            return names
        return names | {node.feature} | walk(node.left) | walk(node.right)

    return walk(model.root)


def predict_model(model, responses: Mapping[str, float],
                  grade_bounds: tuple = DEFAULT_GRADE_BOUNDS,
                  ) -> PublishedPrediction:
    """Evaluate a LinearModel or ModelTree on a response map.

    Factor-granularity models (features within the 21 factor codes) accept
    either the factor sums directly or a full variable-level map, which is
    aggregated here. The clamp applies to the displayed value only; raw is
    the model output.
    """
    features = model_features(model)
    inputs: Mapping[str, float] = responses
    factor_values = None
    if features <= frozenset(FACTOR_FEATURES) and not all(
            name in responses for name in features):
        factor_values = aggregate_responses(dict(responses))
        inputs = factor_values
    if isinstance(model, ModelTree):
        raw = predict_tree(model, inputs)
    else:
        raw = predict_linear(model, inputs)
    return PublishedPrediction(raw=raw, clamped=clamp_grade(raw, grade_bounds),
                               factor_values=factor_values)


def predict_published(model_id: PublishedModelId,
                      responses: Mapping[str, float],
                      grade_bounds: tuple = DEFAULT_GRADE_BOUNDS,
                      ) -> PublishedPrediction:
    """Evaluate a bundled model on a response map; see predict_model."""
    model_id = PublishedModelId(model_id)
    return predict_model(builtin_model(model_id), responses, grade_bounds)


@dataclass(frozen=True)
class SignificanceReport:
    positive: tuple
    negative: tuple
    insignificant: tuple

    def to_dict(self) -> dict:
        return {
            "positive": list(self.positive),
            "negative": list(self.negative),
            "insignificant": list(self.insignificant),
        }


def classify_significance(m: LinearModel,
                          universe: Sequence[str]) -> SignificanceReport:
    """Partition the universe by the sign of each name's coefficient.

    Names absent from the model (or carrying an exactly-zero coefficient,
    which contributes nothing) are insignificant. Universe order is kept.
    """
    if not universe:
        raise GradecastError("significance universe must be nonempty")
    positive, negative, insignificant = [], [], []
    for name in universe:
        coefficient = m.coefficients.get(name, 0.0)
        if coefficient > 0:
            positive.append(name)
        elif coefficient < 0:
            negative.append(name)
        else:
            insignificant.append(name)
    return SignificanceReport(positive=tuple(positive),
                              negative=tuple(negative),
                              insignificant=tuple(insignificant))


def significance_universe(m: LinearModel) -> tuple:
    """Natural universe for a model: the variable ids, the factor features,
    or (for anything else) the model's own features."""
    names = set(m.feature_order)
    if names <= set(VARIABLE_IDS):
        return tuple(VARIABLE_IDS)
    if names <= set(FACTOR_FEATURES):
        return tuple(FACTOR_FEATURES)
    return tuple(m.feature_order)


def transcription_digest(model: LinearModel) -> str:
    """SHA-256 over the intercept and the name-sorted coefficient list."""
    lines = [f"intercept={model.intercept!r}"]
    lines.extend(sorted(f"{name}={value!r}"
                        for name, value in model.coefficients.items()))
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def golden_digests() -> dict:
    """id -> digest map from the checked-in golden file."""
    text = (resources.files("gradecast") / "resources" / DIGEST_RESOURCE
            ).read_text(encoding="utf-8")
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        model_id, digest = line.split()
        out[PublishedModelId(model_id)] = digest
    return out


def verify_transcriptions() -> None:
    """Raise when any bundled model drifts from its golden digest."""
    golden = golden_digests()
    for model_id in PublishedModelId:
        if model_id not in golden:
            raise GradecastError(f"no golden digest for {model_id.value}")
        actual = transcription_digest(builtin_model(model_id))
        if actual != golden[model_id]:
            raise GradecastError(
                f"coefficient digest mismatch for {model_id.value}: "
                f"{actual} != {golden[model_id]}")
