"""Matplotlib figure rendering for the CLI report paths.

Every report command writes its figures next to the delimited output it
produces: training emits accuracy/loss curves beside the epoch-log CSV,
evaluation emits the ROC curve and confusion-matrix heatmap beside the
metrics report, and feature-map extraction emits a per-filter grid.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402


def save_training_curves(rows, accuracy_path, loss_path):
    """Accuracy-vs-epoch and loss-vs-epoch figures from epoch-log rows."""
    epochs = [r.epoch for r in rows]
    has_val = rows and not math.isnan(rows[0].val_loss)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(epochs, [r.train_acc for r in rows], label="train")
    if has_val:
        ax.plot(epochs, [r.val_acc for r in rows], label="validation")
    ax.set_xlabel("epoch")
    ax.set_ylabel("accuracy")
    ax.set_title("Accuracy vs Epoch")
    ax.legend()
    fig.tight_layout()
    fig.savefig(accuracy_path, dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(epochs, [r.train_loss for r in rows], label="train")
    if has_val:
        ax.plot(epochs, [r.val_loss for r in rows], label="validation")
    ax.set_xlabel("epoch")
    ax.set_ylabel("loss")
    ax.set_title("Loss vs Epoch")
    ax.legend()
    fig.tight_layout()
    fig.savefig(loss_path, dpi=120)
    plt.close(fig)


def save_roc_curve(points, auc, path):
    fpr = [p[1] for p in points]
    tpr = [p[2] for p in points]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(fpr, tpr, label=f"AUC = {auc:.4f}")
    ax.plot([0, 1], [0, 1], linestyle="--", color="gray", linewidth=0.8)
    ax.set_xlabel("false positive rate")
    ax.set_ylabel("true positive rate")
    ax.set_title("ROC Curve")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_confusion_figure(cm, path):
    grid = np.array([[cm.tp, cm.fn], [cm.fp, cm.tn]])
    fig, ax = plt.subplots(figsize=(4.5, 4))
    im = ax.imshow(grid, cmap="Blues")
    for (i, j), v in np.ndenumerate(grid):
        ax.text(j, i, str(v), ha="center", va="center",
                color="black" if v < grid.max() * 0.6 else "white")
    ax.set_xticks([0, 1], ["demented", "non-demented"])
    ax.set_yticks([0, 1], ["demented", "non-demented"])
    ax.set_xlabel("predicted")
    ax.set_ylabel("actual")
    ax.set_title("Confusion Matrix")
    fig.colorbar(im, shrink=0.8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_feature_map_grid(maps, path, title=None):
    """Grid of per-filter activation maps, one tile per filter."""
    n = len(maps)
    cols = int(math.ceil(math.sqrt(n)))
    rows = int(math.ceil(n / cols))
    fig, axes = plt.subplots(rows, cols, figsize=(cols * 1.2, rows * 1.2))
    axes = np.atleast_1d(axes).ravel()
    for ax in axes:
        ax.axis("off")
    for ax, fmap in zip(axes, maps):
        ax.imshow(fmap, cmap="viridis", vmin=0.0, vmax=1.0)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
