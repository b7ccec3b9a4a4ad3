"""Model-tree induction: SDR splitting, leaf linear models, pruning, smoothing.

The tree is grown by recursive partitioning. At each node every feature and
every midpoint between consecutive sorted distinct values is evaluated; the
candidate maximizing the standard deviation reduction

    sd(T) - sum_i (|T_i|/|T|) * sd(T_i)

is chosen (population sd throughout). Recursion stops when a node is too
small, nearly pure relative to the root, or no candidate qualifies.

Every node stores a linear model fit over the features tested in the subtree
below it; nodes whose subtree tests nothing (terminal leaves, or a root that
never split) fall back to all dataset features, which keeps the unpruned
tree's training RMSE at or below a single global OLS fit. Pruning compares
error estimates inflated by (n + v)/(n - v) bottom-up and collapses nodes
whose own model estimates no worse than their subtree. Prediction optionally
smooths the leaf value through its ancestors' node models.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import IO, Mapping, Optional, Sequence, Union

import numpy as np

from .dataset import Dataset
from .errors import (
    EmptyDataset,
    EmptyInput,
    GradecastError,
    InvalidPartition,
    MissingFeature,
)
from .linear import LinearModel, _solve_least_squares, predict_linear
from ._kernels import scan_feature

# Error-estimate inflation when a node has no spare degrees of freedom.
PENALTY_FACTOR = 10.0


@dataclass(frozen=True)
class SplitCandidate:
    """A candidate cut: route value <= threshold to the left child."""

    feature: str
    threshold: float
    gain: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.threshold):
            raise GradecastError(f"non-finite threshold {self.threshold!r}")
        if not math.isfinite(self.gain):
            raise GradecastError(f"non-finite gain {self.gain!r}")


@dataclass(frozen=True)
class TreeParams:
    min_split: int = 4
    sd_threshold_fraction: float = 0.05
    smoothing_k: float = 15.0
    prune: bool = True

    def __post_init__(self) -> None:
        if self.min_split < 2:
            raise GradecastError(f"min_split must be >= 2, got {self.min_split}")
        if not math.isfinite(self.sd_threshold_fraction) or self.sd_threshold_fraction < 0:
            raise GradecastError(
                f"sd_threshold_fraction must be finite and >= 0, "
                f"got {self.sd_threshold_fraction!r}")
        if not math.isfinite(self.smoothing_k) or self.smoothing_k < 0:
            raise GradecastError(
                f"smoothing_k must be finite and >= 0, got {self.smoothing_k!r}")

    def to_dict(self) -> dict:
        return {
            "min_split": self.min_split,
            "sd_threshold_fraction": self.sd_threshold_fraction,
            "smoothing_k": self.smoothing_k,
            "prune": self.prune,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TreeParams":
        return cls(
            min_split=int(data["min_split"]),
            sd_threshold_fraction=float(data["sd_threshold_fraction"]),
            smoothing_k=float(data["smoothing_k"]),
            prune=bool(data["prune"]),
        )


@dataclass(frozen=True)
class TreeNode:
    """Leaf (feature is None) or split node; splits route value <= threshold left."""

    model: LinearModel
    n: int
    feature: Optional[str] = None
    threshold: Optional[float] = None
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GradecastError(f"node sample count must be >= 1, got {self.n}")
        children = (self.left, self.right)
        if self.feature is None:
            if any(c is not None for c in children) or self.threshold is not None:
                raise GradecastError("leaf nodes cannot carry a split or children")
        else:
            if any(c is None for c in children) or self.threshold is None:
                raise GradecastError("split nodes need a threshold and two children")
            if not math.isfinite(self.threshold):
                raise GradecastError(f"non-finite threshold {self.threshold!r}")
            if self.left.n + self.right.n != self.n:
                raise GradecastError(
                    f"children cover {self.left.n + self.right.n} samples, "
                    f"node claims {self.n}")

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"leaf": True, "model": self.model.to_dict(), "n": self.n}
        return {
            "split": {"feature": self.feature, "threshold": self.threshold},
            "model": self.model.to_dict(),
            "n": self.n,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "TreeNode":
        model = LinearModel.from_dict(data["model"])
        n = int(data["n"])
        if data.get("leaf"):
            return cls(model=model, n=n)
        split = data["split"]
        return cls(
            model=model,
            n=n,
            feature=str(split["feature"]),
            threshold=float(split["threshold"]),
            left=cls.from_dict(data["left"]),
            right=cls.from_dict(data["right"]),
        )


@dataclass(frozen=True)
class ModelTree:
    root: TreeNode
    params: TreeParams = field(default_factory=TreeParams)
    smoothed: bool = True

    def predict(self, x: Mapping[str, float]) -> float:
        return predict_tree(self, x)

    def leaf_count(self) -> int:
        def count(node: TreeNode) -> int:
            if node.is_leaf:
                return 1
            return count(node.left) + count(node.right)

        return count(self.root)

    def depth(self) -> int:
        def walk(node: TreeNode) -> int:
            if node.is_leaf:
                return 0
            return 1 + max(walk(node.left), walk(node.right))

        return walk(self.root)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "smoothed": self.smoothed,
            "root": self.root.to_dict(),
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: Mapping) -> "ModelTree":
        return cls(
            root=TreeNode.from_dict(data["root"]),
            params=TreeParams.from_dict(data["params"]),
            smoothed=bool(data["smoothed"]),
        )

    @classmethod
    def from_json(cls, text: Union[str, bytes]) -> "ModelTree":
        return cls.from_dict(json.loads(text))


def standard_deviation(values: Sequence[float]) -> float:
    """Population standard deviation (divisor n)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("standard_deviation needs at least one value")
    return float(np.std(arr))


def sdr(targets: Sequence[float],
        left_targets: Sequence[float],
        right_targets: Sequence[float]) -> float:
    """Standard deviation reduction of splitting targets into left/right."""
    total = np.asarray(targets, dtype=np.float64)
    left = np.asarray(left_targets, dtype=np.float64)
    right = np.asarray(right_targets, dtype=np.float64)
    if left.size == 0 or right.size == 0:
        raise InvalidPartition("both sides of a partition must be nonempty")
    if left.size + right.size != total.size or not np.array_equal(
            np.sort(np.concatenate([left, right])), np.sort(total)):
        raise InvalidPartition("left and right must partition the targets")
    n = total.size
    return float(np.std(total)
                 - (left.size / n) * np.std(left)
                 - (right.size / n) * np.std(right))


def _scan_features(matrix: np.ndarray, y: np.ndarray,
                   ordered: Sequence[tuple[str, int]],
                   min_split: int) -> Optional[SplitCandidate]:
    """Best candidate over features visited in lexicographic name order.

    Strict improvement keeps the earlier feature on exact gain ties, and the
    kernel keeps the first (lowest) threshold within a feature, which realizes
    the documented tie-break.
    """
    if y.size < 2 * min_split or np.all(y == y[0]):
        return None
    sd_parent = float(np.std(y))
    best: Optional[SplitCandidate] = None
    for name, col in ordered:
        gain, threshold, found = scan_feature(matrix[:, col], y, min_split, sd_parent)
        if found and gain > 0.0 and (best is None or gain > best.gain):
            best = SplitCandidate(feature=name, threshold=float(threshold),
                                  gain=float(gain))
    return best


def best_split(d: Dataset, min_split: int = 4) -> Optional[SplitCandidate]:
    """Exhaustive best cut over every feature and distinct-value midpoint.

    Both children must keep at least min_split samples; returns None when no
    candidate qualifies (too few samples, constant target, or no positive
    gain). Ties break by higher gain, then lexicographic feature name, then
    lower threshold.
    """
    ordered = sorted((name, col) for col, name in enumerate(d.feature_names))
    return _scan_features(d.feature_matrix(), d.targets(), ordered, min_split)


def _fit_node_model(matrix: np.ndarray, y: np.ndarray, idx: np.ndarray,
                    features: Sequence[str],
                    columns: Sequence[int]) -> LinearModel:
    """Least-squares model over the given columns, ridge-stabilized.

    Unlike fit_ols this never rejects underdetermined systems: small leaves
    legitimately have fewer samples than regressors and rely on the ridge
    fallback of the shared solver.
    """
    rows = matrix[idx][:, list(columns)]
    design = np.hstack([rows, np.ones((idx.size, 1))])
    beta, _, _ = _solve_least_squares(design, y[idx])
    coefficients = {name: float(b) for name, b in zip(features, beta[:-1])}
    return LinearModel(coefficients=coefficients, intercept=float(beta[-1]),
                       feature_order=tuple(features))


def build_tree(d: Dataset, params: TreeParams = TreeParams()) -> ModelTree:
    """Grow a model tree on d; prunes afterwards when params.prune is set.

    Stops splitting when a node has fewer than 2*min_split samples, its
    target sd falls below sd_threshold_fraction of the root sd, or no
    qualifying split exists. The returned tree has smoothing enabled; use
    dataclasses.replace(tree, smoothed=False) for raw leaf predictions.
    """
    if len(d) == 0:
        raise EmptyDataset("cannot build a tree on an empty dataset")
    matrix = d.feature_matrix()
    y = d.targets()
    names = d.feature_names
    col_of = {name: col for col, name in enumerate(names)}
    ordered = sorted((name, col) for col, name in enumerate(names))
    root_sd = float(np.std(y))

    def fit(idx: np.ndarray, tested: frozenset) -> LinearModel:
        chosen = [name for name in names if name in tested] if tested else list(names)
        return _fit_node_model(matrix, y, idx, chosen,
                               [col_of[name] for name in chosen])

    def grow(idx: np.ndarray) -> tuple[TreeNode, frozenset]:
        n = idx.size
        candidate = None
        if n >= 2 * params.min_split and (
                float(np.std(y[idx])) >= params.sd_threshold_fraction * root_sd):
            candidate = _scan_features(matrix[idx], y[idx], ordered,
                                       params.min_split)
        if candidate is None:
            return TreeNode(model=fit(idx, frozenset()), n=n), frozenset()
        col = col_of[candidate.feature]
        mask = matrix[idx, col] <= candidate.threshold
        left, left_tested = grow(idx[mask])
        right, right_tested = grow(idx[~mask])
        tested = frozenset({candidate.feature}) | left_tested | right_tested
        return TreeNode(model=fit(idx, tested), n=n,
                        feature=candidate.feature,
                        threshold=candidate.threshold,
                        left=left, right=right), tested

    root, _ = grow(np.arange(len(d)))
    tree = ModelTree(root=root, params=params, smoothed=True)
    if params.prune:
        tree = prune(tree, d)
    return tree


def _error_factor(n: int, v: int) -> float:
    """Inflation (n + v)/(n - v) for v model parameters on n samples."""
    if n <= v:
        return PENALTY_FACTOR
    return (n + v) / (n - v)


def prune(t: ModelTree, d: Dataset) -> ModelTree:
    """Collapse subtrees whose node model estimates no worse, leaves first.

    Estimated error is the training MAE times (n + v)/(n - v), where v counts
    model parameters; a subtree's v is the children's total plus one for the
    split. Estimates use raw (unsmoothed) routed predictions. Idempotent.
    """
    matrix = d.feature_matrix()
    y = d.targets()
    col_of = {name: col for col, name in enumerate(d.feature_names)}

    def evaluate(model: LinearModel, idx: np.ndarray) -> np.ndarray:
        out = np.full(idx.size, model.intercept)
        for name in model.feature_order:
            if name not in col_of:
                raise MissingFeature(name)
            out += model.coefficients[name] * matrix[idx, col_of[name]]
        return out

    def walk(node: TreeNode, idx: np.ndarray) -> tuple[TreeNode, np.ndarray, int]:
        node_preds = evaluate(node.model, idx)
        if node.is_leaf:
            return node, node_preds, node.model.n_params
        mask = matrix[idx, col_of[node.feature]] <= node.threshold
        left, left_preds, left_v = walk(node.left, idx[mask])
        right, right_preds, right_v = walk(node.right, idx[~mask])
        subtree_preds = np.empty(idx.size)
        subtree_preds[mask] = left_preds
        subtree_preds[~mask] = right_preds
        subtree_v = left_v + right_v + 1
        n = idx.size
        node_est = float(np.mean(np.abs(y[idx] - node_preds))) * _error_factor(
            n, node.model.n_params)
        subtree_est = float(np.mean(np.abs(y[idx] - subtree_preds))) * _error_factor(
            n, subtree_v)
        if node_est <= subtree_est:
            return TreeNode(model=node.model, n=n), node_preds, node.model.n_params
        rebuilt = TreeNode(model=node.model, n=n, feature=node.feature,
                           threshold=node.threshold, left=left, right=right)
        return rebuilt, subtree_preds, subtree_v

    if len(d) != t.root.n:
        raise GradecastError(
            f"tree was built on {t.root.n} samples, dataset has {len(d)}")
    root, _, _ = walk(t.root, np.arange(len(d)))
    return replace(t, root=root)


def predict_tree(t: ModelTree, x: Mapping[str, float]) -> float:
    """Route x to a leaf; smooth back through ancestors when t.smoothed."""
    path: list[TreeNode] = []
    node = t.root
    while not node.is_leaf:
        if node.feature not in x:
            raise MissingFeature(node.feature)
        path.append(node)
        node = node.left if x[node.feature] <= node.threshold else node.right
    prediction = predict_linear(node.model, x)
    k = t.params.smoothing_k
    if not t.smoothed or k == 0:
        return prediction
    child = node
    for ancestor in reversed(path):
        prediction = (child.n * prediction
                      + k * predict_linear(ancestor.model, x)) / (child.n + k)
        child = ancestor
    return prediction
