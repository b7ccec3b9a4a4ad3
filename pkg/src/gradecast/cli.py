"""Command-line driver.

stdout carries exactly one machine-readable JSON payload per invocation;
every diagnostic goes to stderr. Exit codes: 0 success, 2 input/data error,
3 computation/fit error. All commands are deterministic for identical
inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional, Sequence, Union

import numpy as np

from . import __version__
from .dataset import (
    FACTOR,
    VARIABLE,
    Dataset,
    SplitSpec,
    aggregate_factors,
    load_csv,
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
from .linear import LinearModel, fit_ols
from .metrics import evaluate
from .published import (
    PublishedModelId,
    builtin_model,
    classify_significance,
    predict_model,
    significance_universe,
)
from .schema import active_schema
from .tree import ModelTree, TreeParams, build_tree

# Problems with what the user handed us (files, columns, ids, feature maps).
_DATA_ERRORS = (
    MissingColumn, NonNumericCell, OutOfScaleValue, EmptyDataset,
    WrongGranularity, DegenerateFeature, MissingFeature, EmptyInput,
    NonFiniteInput, OSError, json.JSONDecodeError,
)
# Problems arising inside the numerics.
_COMPUTE_ERRORS = (
    TooFewSamples, SingularClassModel, DimensionMismatch, EmptyPairs,
    InvalidPartition, ZeroDenominator, np.linalg.LinAlgError,
)

EXIT_OK = 0
EXIT_DATA = 2
EXIT_COMPUTE = 3


def _emit(payload, pretty: bool) -> None:
    if pretty:
        text = json.dumps(payload, indent=2)
    else:
        text = json.dumps(payload, separators=(",", ":"))
    sys.stdout.write(text + "\n")


def _note(message: str) -> None:
    sys.stderr.write(message + "\n")


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load_dataset(path: str, granularity: Optional[str]) -> Dataset:
    d = load_csv(_read_source(path), schema=active_schema())
    if granularity == FACTOR and d.granularity == VARIABLE:
        d = aggregate_factors(d)
    elif granularity is not None and granularity != d.granularity:
        raise WrongGranularity(granularity, d.granularity)
    return d


def _load_model(ref: str) -> Union[LinearModel, ModelTree]:
    """Resolve a bundled model id or a model JSON file path."""
    try:
        return builtin_model(PublishedModelId(ref))
    except ValueError:
        pass
    if not os.path.exists(ref):
        raise GradecastError(f"unknown model id or missing file: {ref!r}")
    payload = json.loads(_read_source(ref))
    if isinstance(payload, dict) and "root" in payload:
        return ModelTree.from_dict(payload)
    if isinstance(payload, dict) and "intercept" in payload:
        return LinearModel.from_dict(payload)
    raise GradecastError(f"{ref!r} holds neither a linear model nor a tree")


def cmd_train(args: argparse.Namespace) -> int:
    d = _load_dataset(args.csv, args.granularity)
    if args.train_fraction is not None:
        d, _ = split_train_test(d, SplitSpec(args.train_fraction, args.seed))
    start = time.monotonic()
    if args.algo == "ols":
        model, diagnostics = fit_ols(d)
        payload = model.to_dict()
        if diagnostics.rank_deficient:
            _note(f"note: rank-deficient fit, ridge {diagnostics.ridge_used:g}")
    else:
        params = TreeParams(min_split=args.min_split,
                            smoothing_k=args.smoothing_k,
                            prune=not args.no_prune)
        payload = build_tree(d, params).to_dict()
    build_time_s = round(time.monotonic() - start, 3)
    text = json.dumps(payload, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        _emit({"out": args.out, "algo": args.algo,
               "granularity": d.granularity, "n_train": len(d),
               "build_time_s": build_time_s}, args.pretty)
    else:
        _note(f"build_time_s: {build_time_s}")
        sys.stdout.write(text)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    d = _load_dataset(args.csv, args.granularity)
    if args.train_fraction is not None:
        _, d = split_train_test(d, SplitSpec(args.train_fraction, args.seed))
    model = _load_model(args.model)
    report = evaluate(lambda features: predict_model(model, features).raw, d)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(report.to_json() + "\n")
    _emit(report.to_dict(), args.pretty)
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    responses = json.loads(_read_source(args.responses))
    if not isinstance(responses, dict):
        raise GradecastError("responses JSON must be an object of feature: value")
    responses = {str(k): float(v) for k, v in responses.items()}
    model = _load_model(args.model)
    prediction = predict_model(model, responses)
    _emit({"raw": prediction.raw, "clamped": prediction.clamped,
           "model": args.model}, args.pretty)
    return EXIT_OK


def cmd_schema(args: argparse.Namespace) -> int:
    _emit(active_schema().to_dict(), args.pretty)
    return EXIT_OK


def cmd_significance(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if not isinstance(model, LinearModel):
        raise GradecastError(
            "significance needs a linear model; got a model tree")
    schema = active_schema()
    prompts = {v.id: v.prompt for v in schema.variables}
    universe = significance_universe(model)
    report = classify_significance(model, universe)

    def entry(name: str, with_coefficient: bool) -> dict:
        item: dict = {"id": name}
        if with_coefficient:
            item["coefficient"] = model.coefficients[name]
        item["prompt"] = prompts.get(name)
        return item

    _emit({
        "model": args.model,
        "counts": {"positive": len(report.positive),
                   "negative": len(report.negative),
                   "insignificant": len(report.insignificant)},
        "positive": [entry(n, True) for n in report.positive],
        "negative": [entry(n, True) for n in report.negative],
        "insignificant": [entry(n, False) for n in report.insignificant],
    }, args.pretty)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    static_dir = os.path.join("frontend", "dist")
    app = create_app(static_dir=static_dir if os.path.isdir(static_dir) else None)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradecast",
        description="Questionnaire-driven student grade prediction.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pretty", action="store_true",
                       help="indent the JSON output")

    p_train = sub.add_parser("train", help="fit a model and write it as JSON")
    p_train.add_argument("csv", help="training CSV path, or - for stdin")
    p_train.add_argument("--algo", choices=["ols", "m5p"], required=True)
    p_train.add_argument("--granularity", choices=[VARIABLE, FACTOR],
                         help="aggregate variable CSVs to factors on demand")
    p_train.add_argument("--min-split", type=int, default=4)
    p_train.add_argument("--smoothing-k", type=float, default=15.0)
    p_train.add_argument("--no-prune", action="store_true")
    p_train.add_argument("--train-fraction", type=float,
                         help="train on a seeded fraction instead of every row")
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--out", help="model file path (default: stdout)")
    add_common(p_train)
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("evaluate", help="evaluate a model against a CSV")
    p_eval.add_argument("csv", help="evaluation CSV path, or - for stdin")
    p_eval.add_argument("--model", required=True,
                        help="bundled model id or model JSON path")
    p_eval.add_argument("--granularity", choices=[VARIABLE, FACTOR])
    p_eval.add_argument("--train-fraction", type=float,
                        help="evaluate on the held-out remainder of the split")
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--out", help="also write the report to this path")
    add_common(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_pred = sub.add_parser("predict", help="predict one response map")
    p_pred.add_argument("responses", help="responses JSON path, or - for stdin")
    p_pred.add_argument("--model", required=True,
                        help="bundled model id or model JSON path")
    add_common(p_pred)
    p_pred.set_defaults(func=cmd_predict)

    p_schema = sub.add_parser("schema", help="print the active questionnaire")
    add_common(p_schema)
    p_schema.set_defaults(func=cmd_schema)

    p_sig = sub.add_parser("significance",
                           help="report coefficient significance by sign")
    p_sig.add_argument("--model", required=True,
                       help="bundled model id or linear-model JSON path")
    add_common(p_sig)
    p_sig.set_defaults(func=cmd_significance)

    p_serve = sub.add_parser("serve", help="run the HTTP prediction service")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--host", default="127.0.0.1")
    add_common(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _COMPUTE_ERRORS as exc:
        _note(f"error: {exc}")
        return EXIT_COMPUTE
    except _DATA_ERRORS as exc:
        _note(f"error: {exc}")
        return EXIT_DATA
    except GradecastError as exc:
        _note(f"error: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
