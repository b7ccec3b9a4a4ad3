"""Gradecast: questionnaire-driven student grade prediction.

Core pipeline: load Likert questionnaire data (70 variables grouped into 21
factors), fit linear or model-tree regressors, evaluate them, and serve
bundled reference models over a CLI and a small HTTP API.
"""

from .schema import (
    DEFAULT_GRADE_BOUNDS,
    FACTOR_FEATURES,
    FACTOR_RANGES,
    N_VARIABLES,
    VARIABLE_IDS,
    FactorCode,
    QuestionnaireSchema,
    ResponseScale,
    Variable,
    active_schema,
    builtin_schema,
    factor_members,
    variable_id,
    variable_index,
)
from .dataset import (
    FACTOR,
    VARIABLE,
    Dataset,
    Sample,
    SplitSpec,
    aggregate_factors,
    aggregate_responses,
    from_arrays,
    load_csv,
    normalize,
    serialize_csv,
    split_train_test,
)
from .errors import (
    DegenerateFeature,
    DimensionMismatch,
    EmptyDataset,
    EmptyInput,
    EmptyPairs,
    GradecastError,
    InvalidPartition,
    MissingColumn,
    MissingFeature,
    NonFiniteInput,
    NonNumericCell,
    OutOfScaleValue,
    SingularClassModel,
    TooFewSamples,
    WrongGranularity,
    ZeroDenominator,
)
from .linear import (
    ClassModel,
    FitDiagnostics,
    LinearModel,
    LRCState,
    class_models_from_dataset,
    fit_ols,
    lrc_classify,
    lrc_fit,
    predict_linear,
)
from .tree import (
    ModelTree,
    SplitCandidate,
    TreeNode,
    TreeParams,
    best_split,
    build_tree,
    predict_tree,
    prune,
    sdr,
    standard_deviation,
)
from .metrics import (
    EvaluationReport,
    PredictionPairs,
    correlation,
    evaluate,
    mae,
    predictions_for,
    rae,
    rmse,
    rrse,
)
from .published import (
    FINAL_MODEL_IDS,
    MODEL_DESCRIPTIONS,
    PublishedModelId,
    PublishedPrediction,
    SignificanceReport,
    builtin_model,
    clamp_grade,
    classify_significance,
    model_features,
    model_granularity,
    predict_model,
    predict_published,
    significance_universe,
    transcription_digest,
    verify_transcriptions,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GRADE_BOUNDS", "FACTOR_FEATURES", "FACTOR_RANGES", "N_VARIABLES",
    "VARIABLE_IDS", "FactorCode", "QuestionnaireSchema", "ResponseScale",
    "Variable", "active_schema", "builtin_schema", "factor_members",
    "variable_id", "variable_index",
    "FACTOR", "VARIABLE", "Dataset", "Sample", "SplitSpec",
    "aggregate_factors", "aggregate_responses", "from_arrays", "load_csv",
    "normalize", "serialize_csv", "split_train_test",
    "DegenerateFeature", "DimensionMismatch", "EmptyDataset", "EmptyInput",
    "EmptyPairs", "GradecastError", "InvalidPartition", "MissingColumn",
    "MissingFeature", "NonFiniteInput", "NonNumericCell", "OutOfScaleValue",
    "SingularClassModel", "TooFewSamples", "WrongGranularity",
    "ZeroDenominator",
    "ClassModel", "FitDiagnostics", "LinearModel", "LRCState",
    "class_models_from_dataset", "fit_ols", "lrc_classify", "lrc_fit",
    "predict_linear",
    "ModelTree", "SplitCandidate", "TreeNode", "TreeParams", "best_split",
    "build_tree", "predict_tree", "prune", "sdr", "standard_deviation",
    "EvaluationReport", "PredictionPairs", "correlation", "evaluate", "mae",
    "predictions_for", "rae", "rmse", "rrse",
    "FINAL_MODEL_IDS", "MODEL_DESCRIPTIONS", "PublishedModelId",
    "PublishedPrediction", "SignificanceReport", "builtin_model",
    "clamp_grade", "classify_significance", "model_features",
    "model_granularity", "predict_model", "predict_published",
    "significance_universe", "transcription_digest", "verify_transcriptions",
    "__version__",
]
