"""Shared CART machinery for the tree-based families.

Trees are built iteratively (explicit stack, no recursion limit issues) and
stored as nested dicts that serialize straight to JSON. Split search is
vectorized per node: cumulative class counts over the sorted feature column
give every candidate midpoint's impurity in one pass.

Tie-breaks are fixed so runs reproduce across platforms: equal split scores
go to the lowest feature index, then to the lowest threshold.
"""

from __future__ import annotations

import math

import numpy as np


def resolve_max_features(spec, n_features: int) -> int:
    """Number of features sampled per split. None means all."""
    if spec is None or spec == "all":
        return n_features
    if spec == "sqrt":
        return min(n_features, math.ceil(math.sqrt(n_features)))
    if spec == "log2":
        return min(n_features, max(1, math.ceil(math.log2(n_features))))
    if isinstance(spec, (int, float)) and not isinstance(spec, bool):
        if isinstance(spec, float) and 0.0 < spec <= 1.0:
            return max(1, int(spec * n_features))
        if isinstance(spec, int) and spec >= 1:
            return min(n_features, spec)
    raise ValueError(f"invalid max_features: {spec!r}")


def gini_impurity(n0, n1):
    n = n0 + n1
    p0 = n0 / n
    p1 = n1 / n
    return 1.0 - p0 * p0 - p1 * p1


def entropy_impurity(n0, n1):
    n = n0 + n1
    out = np.zeros_like(np.asarray(n, dtype=np.float64))
    for cnt in (n0, n1):
        p = cnt / n
        term = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        out = out - term
    return out


_IMPURITY = {"gini": gini_impurity, "entropy": entropy_impurity}


def _candidate_positions(xs: np.ndarray) -> np.ndarray:
    """Indices i such that a split between xs[i] and xs[i+1] separates values."""
    return np.nonzero(xs[1:] != xs[:-1])[0]


def _weighted_class_impurity(ys: np.ndarray, pos: np.ndarray, criterion: str):
    """Weighted child impurity for every candidate position at once."""
    n = ys.size
    ones = np.cumsum(ys)
    n_left = pos + 1.0
    n1_left = ones[pos].astype(np.float64)
    n0_left = n_left - n1_left
    n_right = n - n_left
    n1_right = ones[-1] - n1_left
    n0_right = n_right - n1_right
    impurity = _IMPURITY[criterion]
    return (n_left * impurity(n0_left, n1_left) + n_right * impurity(n0_right, n1_right)) / n


def _sample_features(rng, n_features: int, m: int) -> np.ndarray:
    if m >= n_features:
        return np.arange(n_features)
    return np.sort(rng.choice(n_features, size=m, replace=False))


def best_classification_split(X, y, idx, features, criterion):
    """(score, feature, threshold) minimizing weighted impurity, or None."""
    best = None
    for f in features:
        x = X[idx, f]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        pos = _candidate_positions(xs)
        if pos.size == 0:
            continue
        weighted = _weighted_class_impurity(y[idx][order], pos, criterion)
        i = int(np.argmin(weighted))
        if best is None or weighted[i] < best[0]:
            threshold = 0.5 * (xs[pos[i]] + xs[pos[i] + 1])
            best = (float(weighted[i]), int(f), float(threshold))
    return best


def random_classification_split(X, y, idx, features, criterion, rng):
    """One uniform threshold per sampled feature; best of those, or None."""
    best = None
    for f in features:
        x = X[idx, f]
        lo, hi = float(x.min()), float(x.max())
        if lo == hi:
            continue
        threshold = float(rng.uniform(lo, hi))
        left = x <= threshold
        n_left = int(left.sum())
        if n_left == 0 or n_left == idx.size:
            continue
        y_node = y[idx]
        n1_left = int(y_node[left].sum())
        n1_right = int(y_node.sum()) - n1_left
        impurity = _IMPURITY[criterion]
        weighted = (
            n_left * float(impurity(float(n_left - n1_left), float(n1_left)))
            + (idx.size - n_left) * float(impurity(float(idx.size - n_left - n1_right), float(n1_right)))
        ) / idx.size
        if best is None or weighted < best[0]:
            best = (weighted, int(f), threshold)
    return best


def build_classification_tree(X, y, *, criterion, max_depth, max_features, splitter, rng):
    """Grow a CART classification tree; returns the root node dict.

    Splits whenever any candidate separates the node (CART convention: a
    zero-gain split is still taken, which is what lets an unbounded tree
    memorize XOR-style data). Leaves keep raw class counts; probability of
    class 1 is their vote fraction.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    m = resolve_max_features(max_features, X.shape[1])

    def make_leaf(idx):
        n1 = int(y[idx].sum())
        return {"kind": "leaf", "n0": int(idx.size - n1), "n1": n1}

    root: dict = {}
    stack = [(root, np.arange(X.shape[0]), 0)]
    while stack:
        node, idx, depth = stack.pop()
        n1 = int(y[idx].sum())
        if (
            idx.size < 2
            or n1 == 0
            or n1 == idx.size
            or (max_depth is not None and depth >= max_depth)
        ):
            node.update(make_leaf(idx))
            continue
        features = _sample_features(rng, X.shape[1], m)
        if splitter == "best":
            split = best_classification_split(X, y, idx, features, criterion)
        else:
            split = random_classification_split(X, y, idx, features, criterion, rng)
        if split is None:
            node.update(make_leaf(idx))
            continue
        _, f, threshold = split
        mask = X[idx, f] <= threshold
        left, right = {}, {}
        node.update({"kind": "split", "feature": f, "threshold": threshold, "left": left, "right": right})
        # Push right first so the left child is built first (stable rng order).
        stack.append((right, idx[~mask], depth + 1))
        stack.append((left, idx[mask], depth + 1))
    return root


def build_regression_tree(X, target, leaf_value, *, max_depth):
    """Least-squares regression tree over all features, best splitter.

    ``leaf_value(idx)`` computes the value stored at a leaf, which lets the
    boosting stage plug in its Newton-step aggregation.
    """
    X = np.asarray(X, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)

    root: dict = {}
    stack = [(root, np.arange(X.shape[0]), 0)]
    while stack:
        node, idx, depth = stack.pop()
        t_node = target[idx]
        if idx.size < 2 or (max_depth is not None and depth >= max_depth) or np.ptp(t_node) == 0.0:
            node.update({"kind": "leaf", "value": float(leaf_value(idx))})
            continue
        best = None
        for f in range(X.shape[1]):
            x = X[idx, f]
            order = np.argsort(x, kind="stable")
            xs = x[order]
            pos = _candidate_positions(xs)
            if pos.size == 0:
                continue
            ts = t_node[order]
            csum = np.cumsum(ts)
            csq = np.cumsum(ts * ts)
            n_left = pos + 1.0
            n_right = idx.size - n_left
            sse_left = csq[pos] - csum[pos] ** 2 / n_left
            sse_right = (csq[-1] - csq[pos]) - (csum[-1] - csum[pos]) ** 2 / n_right
            total = sse_left + sse_right
            i = int(np.argmin(total))
            if best is None or total[i] < best[0]:
                best = (float(total[i]), int(f), float(0.5 * (xs[pos[i]] + xs[pos[i] + 1])))
        if best is None:
            node.update({"kind": "leaf", "value": float(leaf_value(idx))})
            continue
        _, f, threshold = best
        mask = X[idx, f] <= threshold
        left, right = {}, {}
        node.update({"kind": "split", "feature": f, "threshold": threshold, "left": left, "right": right})
        stack.append((right, idx[~mask], depth + 1))
        stack.append((left, idx[mask], depth + 1))
    return root


def tree_apply(node: dict, X: np.ndarray) -> np.ndarray:
    """Evaluate a tree on a feature matrix.

    Classification leaves yield the probability of class 1 (vote fraction),
    regression leaves their stored value.
    """
    X = np.asarray(X, dtype=np.float64)
    out = np.empty(X.shape[0], dtype=np.float64)
    if X.shape[0] == 0:
        return out
    stack = [(node, np.arange(X.shape[0]))]
    while stack:
        current, idx = stack.pop()
        if current["kind"] == "leaf":
            if "value" in current:
                out[idx] = current["value"]
            else:
                total = current["n0"] + current["n1"]
                out[idx] = current["n1"] / total if total else 0.0
            continue
        mask = X[idx, current["feature"]] <= current["threshold"]
        stack.append((current["left"], idx[mask]))
        stack.append((current["right"], idx[~mask]))
    return out


def tree_depth(node: dict) -> int:
    depth = 0
    stack = [(node, 0)]
    while stack:
        current, d = stack.pop()
        depth = max(depth, d)
        if current["kind"] == "split":
            stack.append((current["left"], d + 1))
            stack.append((current["right"], d + 1))
    return depth
