"""Binary classification metrics: confusion counts, the four ratio metrics,
and ROC-AUC with exportable curve points. Demented is the positive class."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def confusion(predicted, truth) -> ConfusionMatrix:
    predicted = np.asarray(predicted).astype(int)
    truth = np.asarray(truth).astype(int)
    if predicted.shape != truth.shape:
        raise ValueError(f"length mismatch: {predicted.shape} vs {truth.shape}")
    return ConfusionMatrix(
        tp=int(((predicted == 1) & (truth == 1)).sum()),
        tn=int(((predicted == 0) & (truth == 0)).sum()),
        fp=int(((predicted == 1) & (truth == 0)).sum()),
        fn=int(((predicted == 0) & (truth == 1)).sum()),
    )


@dataclass(frozen=True)
class MetricSummary:
    accuracy: float
    precision: float
    recall: float
    f1: float
    # names of metrics whose denominator was zero (reported as 0, not NaN)
    degenerate: tuple = field(default=())


def summary(cm: ConfusionMatrix) -> MetricSummary:
    if cm.total < 1:
        raise ValueError("confusion matrix is empty")
    degenerate = []
    accuracy = (cm.tp + cm.tn) / cm.total
    if cm.tp + cm.fp > 0:
        precision = cm.tp / (cm.tp + cm.fp)
    else:
        precision = 0.0
        degenerate.append("precision")
    if cm.tp + cm.fn > 0:
        recall = cm.tp / (cm.tp + cm.fn)
    else:
        recall = 0.0
        degenerate.append("recall")
    if precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        degenerate.append("f1")
    return MetricSummary(accuracy, precision, recall, f1, tuple(degenerate))


def roc_auc(scores, truth):
    """AUC by threshold sweep + trapezoidal integration, plus curve points.

    Returns (auc, points) where points is a list of (threshold, fpr, tpr)
    starting at the all-negative corner. Equal scores are grouped, which makes
    the trapezoid rule equal to the pairwise concordance statistic with ties
    counted one half.
    """
    scores = np.asarray(scores, dtype=np.float64)
    truth = np.asarray(truth).astype(int)
    if scores.shape != truth.shape:
        raise ValueError("scores and labels must have equal length")
    n_pos = int((truth == 1).sum())
    n_neg = int((truth == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC-AUC requires both classes to be present")
    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_truth = truth[order]
    points = [(float("inf"), 0.0, 0.0)]
    tp = fp = 0
    auc = 0.0
    prev_fpr, prev_tpr = 0.0, 0.0
    i = 0
    n = len(scores)
    while i < n:
        j = i
        while j < n and sorted_scores[j] == sorted_scores[i]:
            j += 1
        tp += int((sorted_truth[i:j] == 1).sum())
        fp += int((sorted_truth[i:j] == 0).sum())
        tpr = tp / n_pos
        fpr = fp / n_neg
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0
        points.append((float(sorted_scores[i]), fpr, tpr))
        prev_fpr, prev_tpr = fpr, tpr
        i = j
    return float(auc), points


def write_roc_csv(path, points):
    """ROC curve export: threshold,fpr,tpr."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "fpr", "tpr"])
        for threshold, fpr, tpr in points:
            writer.writerow(
                ["inf" if np.isinf(threshold) else f"{threshold:.9g}",
                 f"{fpr:.9g}", f"{tpr:.9g}"]
            )
