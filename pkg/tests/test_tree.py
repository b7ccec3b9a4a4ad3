import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

import gradecast as g
from gradecast.errors import (
    EmptyInput,
    GradecastError,
    InvalidPartition,
    MissingFeature,
)
from _util import linear_dataset


def two_cluster_dataset():
    """Six points split cleanly by f0 at 3.0 with constant targets per side."""
    x = np.array([[1.0, 9.0], [1.5, 8.5], [2.0, 7.0], [4.0, 1.0], [4.5, 2.5], [5.0, 3.0]])
    y = np.array([1.0, 1.0, 1.0, 10.0, 10.0, 10.0])
    return g.from_arrays(x, y)


# --- standard deviation and the split criterion ---

def test_standard_deviation_population():
    assert g.standard_deviation([1.0, 1.0, 5.0, 5.0]) == 2.0
    assert g.standard_deviation([4.0, 4.0, 4.0]) == 0.0
    assert g.standard_deviation([2.5]) == 0.0


def test_standard_deviation_empty():
    with pytest.raises(EmptyInput):
        g.standard_deviation([])


def test_sdr_worked_example():
    targets = [1.0, 1.0, 5.0, 5.0]
    assert g.sdr(targets, [1.0, 1.0], [5.0, 5.0]) == 2.0


def test_sdr_weights_sides_by_size():
    targets = [0.0, 0.0, 0.0, 10.0]
    got = g.sdr(targets, [0.0, 0.0, 0.0], [10.0])
    want = g.standard_deviation(targets)  # both sides constant
    assert got == pytest.approx(want, abs=1e-12)


def test_sdr_rejects_empty_side():
    with pytest.raises(InvalidPartition):
        g.sdr([1.0, 2.0], [], [1.0, 2.0])


def test_sdr_rejects_non_partition():
    with pytest.raises(InvalidPartition):
        g.sdr([1.0, 2.0, 3.0], [1.0], [2.0, 4.0])


def test_sdr_accepts_reordered_partition():
    targets = [3.0, 1.0, 2.0, 4.0]
    got = g.sdr(targets, [4.0, 1.0], [2.0, 3.0])
    assert np.isfinite(got)


def test_best_split_on_clean_clusters():
    cand = g.best_split(two_cluster_dataset(), min_split=2)
    assert cand is not None
    assert cand.feature == "f0"
    assert cand.threshold == 3.0
    assert cand.gain == pytest.approx(4.5, abs=1e-12)  # sd drops to zero


def test_best_split_none_when_target_constant():
    x = np.arange(12, dtype=np.float64).reshape(-1, 1)
    d = g.from_arrays(x, np.full(12, 3.0))
    assert g.best_split(d) is None


def test_best_split_none_when_too_small():
    x = np.arange(7, dtype=np.float64).reshape(-1, 1)
    d = g.from_arrays(x, np.arange(7, dtype=np.float64))
    assert g.best_split(d, min_split=4) is None


def test_best_split_none_when_features_constant():
    x = np.ones((12, 2))
    d = g.from_arrays(x, np.arange(12, dtype=np.float64))
    assert g.best_split(d) is None


def test_best_split_requires_min_split_on_both_sides():
    d = two_cluster_dataset()
    assert g.best_split(d, min_split=4) is None


def test_best_split_tie_prefers_lexicographic_feature():
    x = np.array([[1.0], [2.0], [5.0], [6.0]])
    dup = np.hstack([x, x])  # identical columns -> identical gains
    d = g.from_arrays(dup, np.array([0.0, 0.0, 9.0, 9.0]))
    cand = g.best_split(d, min_split=2)
    assert cand.feature == "f0"


def test_best_split_tie_prefers_lower_threshold():
    x = np.arange(6, dtype=np.float64).reshape(-1, 1)
    d = g.from_arrays(x, np.array([1.0, 1.0, 5.0, 5.0, 1.0, 1.0]))
    cand = g.best_split(d, min_split=2)
    assert cand.threshold == 1.5


def test_best_split_brute_force_oracle(rng):
    for _ in range(30):
        n = int(rng.integers(8, 60))
        p = int(rng.integers(1, 5))
        d = linear_dataset(rng, n, p, noise=1.0, rounded=bool(rng.random() < 0.5))
        cand = g.best_split(d, min_split=2)
        want = brute_best(d, min_split=2)
        if want is None:
            assert cand is None
            continue
        assert cand is not None
        assert (cand.feature, cand.threshold) == (want[0], want[1])
        assert cand.gain == pytest.approx(want[2], abs=1e-9)


def brute_best(d, min_split):
    """Independent scan: every feature, every boundary, np.std arithmetic."""
    y = d.targets()
    n = len(y)
    if n < 2 * min_split or np.all(y == y[0]):
        return None
    sd = float(np.std(y))
    best = None
    for name in sorted(d.feature_names):
        col = d.feature_matrix()[:, d.feature_names.index(name)]
        order = np.argsort(col, kind="mergesort")
        v, t = col[order], y[order]
        for i in range(min_split, n - min_split + 1):
            if v[i] <= v[i - 1]:
                continue
            gain = sd - (i / n) * np.std(t[:i]) - ((n - i) / n) * np.std(t[i:])
            if gain > 0.0 and (best is None or gain > best[2]):
                best = (name, (v[i - 1] + v[i]) / 2.0, gain)
    return best


def test_split_candidate_validation():
    with pytest.raises(GradecastError):
        g.SplitCandidate(feature="f0", threshold=np.nan, gain=1.0)
    with pytest.raises(GradecastError):
        g.SplitCandidate(feature="f0", threshold=1.0, gain=np.inf)


# --- growing ---

def test_tiny_dataset_is_single_leaf_with_full_fit():
    rng = np.random.default_rng(3)
    d = linear_dataset(rng, 5, 2)
    t = g.build_tree(d, g.TreeParams(min_split=4, prune=False))
    assert t.root.is_leaf
    assert t.root.n == 5
    ols, _ = g.fit_ols(d)
    for name in d.feature_names:
        assert t.root.model.coefficients[name] == pytest.approx(ols.coefficients[name], abs=1e-9)
    assert t.root.model.intercept == pytest.approx(ols.intercept, abs=1e-9)


def test_two_clusters_give_depth_one_tree():
    d = two_cluster_dataset()
    t = g.build_tree(d, g.TreeParams(min_split=2, smoothing_k=0.0, prune=False))
    assert not t.root.is_leaf
    assert t.root.feature == "f0" and t.root.threshold == 3.0
    assert t.root.left.is_leaf and t.root.right.is_leaf
    assert t.root.left.n == 3 and t.root.right.n == 3
    for s in d.samples:
        assert g.predict_tree(t, s.features) == pytest.approx(s.target, abs=1e-9)


def test_sd_stop_rule_freezes_near_constant_branches():
    # left region's sd (~0.005) is under 5% of the root sd (~83), so it
    # becomes a leaf even though a positive-gain split is still available
    x = np.arange(16, dtype=np.float64).reshape(-1, 1)
    y = np.array([0.0] * 4 + [0.01] * 4 + [100.0] * 4 + [200.0] * 4)
    d = g.from_arrays(x, y)
    t = g.build_tree(d, g.TreeParams(min_split=2, prune=False))
    assert not t.root.is_leaf
    assert t.root.threshold == 7.5
    assert t.root.left.is_leaf
    assert not t.root.right.is_leaf


def test_node_counts_track_sample_counts(rng):
    d = linear_dataset(rng, 80, 3, noise=2.0)
    t = g.build_tree(d, g.TreeParams(prune=False))

    def walk(node):
        if node.is_leaf:
            return node.n
        assert node.n == node.left.n + node.right.n
        return walk(node.left) + walk(node.right)

    assert walk(t.root) == 80


def test_build_is_deterministic(rng):
    d = linear_dataset(rng, 60, 3, noise=1.0)
    t1 = g.build_tree(d)
    t2 = g.build_tree(d)
    assert t1.to_json() == t2.to_json()


def test_unpruned_tree_beats_global_fit_on_training_data(rng):
    for _ in range(8):
        n = int(rng.integers(20, 120))
        p = int(rng.integers(1, 6))
        d = linear_dataset(rng, n, p, noise=1.0)
        t = g.build_tree(d, g.TreeParams(smoothing_k=0.0, prune=False))
        ols, _ = g.fit_ols(d)
        tree_rmse = g.rmse(g.predictions_for(lambda f: g.predict_tree(t, f), d))
        ols_rmse = g.rmse(g.predictions_for(ols, d))
        assert tree_rmse <= ols_rmse + 1e-9


# --- pruning ---

def noise_dataset(seed):
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, 5.0, size=(60, 2))
    return g.from_arrays(x, rng.normal(0.0, 1.0, size=60))


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4, 5])
def test_pure_noise_collapses_to_single_leaf(seed):
    d = noise_dataset(seed)
    t = g.build_tree(d, g.TreeParams(min_split=10, prune=True))
    assert t.root.is_leaf
    assert t.root.n == 60


def test_pruning_keeps_genuine_structure():
    d = two_cluster_dataset()
    t = g.build_tree(d, g.TreeParams(min_split=2, prune=True))
    assert not t.root.is_leaf


def test_prune_is_idempotent(rng):
    d = linear_dataset(rng, 70, 3, noise=3.0)
    t = g.build_tree(d, g.TreeParams(prune=True))
    assert g.prune(t, d).to_json() == t.to_json()


def oracle_prune_shape(d, grown):
    """Recompute collapse decisions from scratch: penalized training MAE,
    factor (n+v)/(n-v) with 10.0 once n <= v, bottom-up, routed predictions."""
    matrix = d.feature_matrix()
    names = list(d.feature_names)
    y = d.targets()

    def factor(n, v):
        return 10.0 if n <= v else (n + v) / (n - v)

    def model_preds(node, idx):
        return np.array(
            [g.predict_linear(node.model, dict(zip(names, matrix[i]))) for i in idx]
        )

    def walk(node, idx):
        """Return (shape, preds, v) where shape mirrors the pruned structure."""
        if node.is_leaf:
            preds = model_preds(node, idx)
            return "leaf", preds, node.model.n_params
        col = names.index(node.feature)
        mask = matrix[idx, col] <= node.threshold
        ls, lp, lv = walk(node.left, idx[mask])
        rs, rp, rv = walk(node.right, idx[~mask])
        preds = np.empty(len(idx))
        preds[mask], preds[~mask] = lp, rp
        v_sub = lv + rv + 1
        sub_est = float(np.mean(np.abs(preds - y[idx]))) * factor(len(idx), v_sub)
        own = model_preds(node, idx)
        node_est = float(np.mean(np.abs(own - y[idx]))) * factor(len(idx), node.model.n_params)
        if node_est <= sub_est:
            return "leaf", own, node.model.n_params
        return ("split", node.feature, node.threshold, ls, rs), preds, v_sub

    shape, _, _ = walk(grown.root, np.arange(len(d)))
    return shape


def tree_shape(node):
    if node.is_leaf:
        return "leaf"
    return ("split", node.feature, node.threshold,
            tree_shape(node.left), tree_shape(node.right))


@pytest.mark.parametrize("seed", [7, 8, 9, 10])
def test_prune_decisions_match_penalized_error_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(40, 90))
    x = rng.uniform(0.0, 5.0, size=(n, 2))
    w = rng.normal(size=2) * (seed % 2)  # alternate pure noise and signal
    y = x @ w + rng.normal(0.0, 1.0, size=n)
    d = g.from_arrays(x, y)
    params = g.TreeParams(min_split=6, prune=False)
    grown = g.build_tree(d, params)
    pruned = g.prune(grown, d)
    assert tree_shape(pruned.root) == oracle_prune_shape(d, grown)


def test_pruned_tree_smaller_or_equal(rng):
    d = linear_dataset(rng, 90, 4, noise=2.0)
    grown = g.build_tree(d, g.TreeParams(prune=False))
    pruned = g.build_tree(d, g.TreeParams(prune=True))
    assert pruned.leaf_count() <= grown.leaf_count()


def test_prune_requires_matching_dataset(rng):
    d = linear_dataset(rng, 30, 2)
    other = linear_dataset(rng, 29, 2)
    t = g.build_tree(d, g.TreeParams(prune=False))
    with pytest.raises(GradecastError):
        g.prune(t, other)


# --- prediction and smoothing ---

def hand_tree(k=15.0):
    """Depth-1 tree with hand-set models for exact smoothing arithmetic."""
    leaf_l = g.TreeNode(model=g.LinearModel(coefficients={"f0": 1.0}, intercept=0.0), n=10)
    leaf_r = g.TreeNode(model=g.LinearModel(coefficients={"f0": -1.0}, intercept=8.0), n=10)
    root = g.TreeNode(
        model=g.LinearModel(coefficients={"f0": 0.5}, intercept=1.0),
        n=20, feature="f0", threshold=2.0, left=leaf_l, right=leaf_r,
    )
    return g.ModelTree(root=root, params=g.TreeParams(smoothing_k=k), smoothed=True)


def test_smoothing_blends_leaf_with_ancestors():
    t = hand_tree(k=15.0)
    x = {"f0": 1.0}
    leaf_pred = 1.0        # left leaf: 1*1 + 0
    root_pred = 1.5        # root model: 0.5*1 + 1
    want = (10 * leaf_pred + 15.0 * root_pred) / (10 + 15.0)
    assert g.predict_tree(t, x) == pytest.approx(want, abs=1e-12)


def test_smoothing_weights_follow_child_counts():
    t = hand_tree(k=15.0)
    x = {"f0": 5.0}
    leaf_pred = 3.0        # right leaf: -5 + 8
    root_pred = 3.5
    want = (10 * leaf_pred + 15.0 * root_pred) / 25.0
    assert g.predict_tree(t, x) == pytest.approx(want, abs=1e-12)


def test_zero_smoothing_equals_leaf_model_exactly():
    t = hand_tree(k=0.0)
    assert g.predict_tree(t, {"f0": 1.0}) == 1.0
    assert g.predict_tree(t, {"f0": 5.0}) == 3.0


def test_unsmoothed_flag_equals_leaf_model_exactly(rng):
    from dataclasses import replace

    d = linear_dataset(rng, 50, 2, noise=1.0)
    t = g.build_tree(d, g.TreeParams(smoothing_k=15.0, prune=False))
    bare = replace(t, smoothed=False)
    zero = replace(t, params=replace(t.params, smoothing_k=0.0))
    for s in d.samples[:10]:
        assert g.predict_tree(bare, s.features) == g.predict_tree(zero, s.features)


def test_boundary_value_routes_left():
    t = hand_tree(k=0.0)
    assert g.predict_tree(t, {"f0": 2.0}) == 2.0  # left leaf at the threshold


def test_missing_split_feature_raises():
    t = hand_tree()
    with pytest.raises(MissingFeature):
        g.predict_tree(t, {"f1": 1.0})


def test_single_leaf_tree_matches_linear_model(rng):
    d = linear_dataset(rng, 5, 2)
    t = g.build_tree(d, g.TreeParams(min_split=4))
    for s in d.samples:
        assert g.predict_tree(t, s.features) == g.predict_linear(t.root.model, s.features)


def test_predictions_are_piecewise_affine(rng):
    d = linear_dataset(rng, 60, 2, noise=1.0)
    t = g.build_tree(d, g.TreeParams(prune=False))
    f = lambda a, b: g.predict_tree(t, {"f0": a, "f1": b})

    def same_leaf(points):
        def leaf_of(a, b):
            node = t.root
            x = {"f0": a, "f1": b}
            while not node.is_leaf:
                node = node.left if x[node.feature] <= node.threshold else node.right
            return id(node)
        return len({leaf_of(a, b) for a, b in points}) == 1

    for _ in range(200):
        a, b = rng.uniform(0.5, 4.5, size=2)
        da, db = rng.uniform(-0.05, 0.05, size=2)
        pts = [(a, b), (a + da, b + db), (a + 2 * da, b + 2 * db)]
        if not same_leaf(pts):
            continue
        mid = f(*pts[1])
        assert mid == pytest.approx((f(*pts[0]) + f(*pts[2])) / 2.0, abs=1e-9)


# --- serialization and structure ---

def test_tree_json_round_trip(rng):
    d = linear_dataset(rng, 60, 3, noise=1.0)
    t = g.build_tree(d)
    back = g.ModelTree.from_json(t.to_json())
    assert back == t
    for s in d.samples[:10]:
        assert g.predict_tree(back, s.features) == g.predict_tree(t, s.features)


def test_tree_dict_shape():
    t = hand_tree()
    doc = t.to_dict()
    assert set(doc) == {"params", "smoothed", "root"}
    root = doc["root"]
    assert set(root) == {"split", "model", "n", "left", "right"}
    assert root["split"] == {"feature": "f0", "threshold": 2.0}
    assert set(root["left"]) == {"leaf", "model", "n"}
    assert root["left"]["leaf"] is True


def test_tree_params_round_trip():
    p = g.TreeParams(min_split=7, sd_threshold_fraction=0.1, smoothing_k=2.0, prune=False)
    assert g.TreeParams.from_dict(p.to_dict()) == p


def test_tree_params_validation():
    with pytest.raises(GradecastError):
        g.TreeParams(min_split=1)
    with pytest.raises(GradecastError):
        g.TreeParams(sd_threshold_fraction=-0.1)
    with pytest.raises(GradecastError):
        g.TreeParams(smoothing_k=-1.0)


def test_tree_node_shape_validation():
    leaf = g.TreeNode(model=g.LinearModel(coefficients={}, intercept=0.0), n=3)
    with pytest.raises(GradecastError):
        g.TreeNode(model=leaf.model, n=3, feature="f0")  # split needs both children
    with pytest.raises(GradecastError):
        g.TreeNode(model=leaf.model, n=7, feature="f0", threshold=1.0, left=leaf, right=leaf)


def test_leaf_count_and_depth():
    t = hand_tree()
    assert t.root.is_leaf is False
    assert t.leaf_count() == 2
    assert t.depth() == 1


def test_leaf_models_cover_all_dataset_features_when_unsplit(rng):
    # a stump's only leaf must regress on every feature
    d = linear_dataset(rng, 6, 3)
    t = g.build_tree(d, g.TreeParams(min_split=4))
    assert set(t.root.model.coefficients) == set(d.feature_names)


def test_internal_models_use_subtree_split_features_only():
    d = two_cluster_dataset()
    t = g.build_tree(d, g.TreeParams(min_split=2, prune=False))
    assert set(t.root.model.coefficients) <= {"f0"}


@given(st.integers(min_value=0, max_value=10_000))
def test_grown_tree_predicts_finite_values(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(8, 40))
    x = rng.uniform(0.0, 5.0, size=(n, 2))
    y = rng.normal(size=n)
    d = g.from_arrays(x, y)
    t = g.build_tree(d)
    probe = {"f0": float(rng.uniform(0, 5)), "f1": float(rng.uniform(0, 5))}
    assert np.isfinite(g.predict_tree(t, probe))
