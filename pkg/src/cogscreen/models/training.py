"""Deterministic minibatch training with per-epoch metric logging."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from ..nn import AdamState, ModelGraph, adam_step, bce_loss
from .architectures import demented_score, targets_for_labels


@dataclass
class Mod1DConfig:
    learning_rate: float = 0.001
    epochs: int = 200
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate < 0 or self.epochs < 0 or self.batch_size <= 0:
            raise ValueError("rates and counts must be positive")


@dataclass
class Mod2DConfig(Mod1DConfig):
    learning_rate: float = 0.0001
    epochs: int = 50


@dataclass
class EpochRow:
    epoch: int
    train_loss: float
    train_acc: float
    val_loss: float
    val_acc: float


class TrainingDivergedError(RuntimeError):
    def __init__(self, epoch, batch, loss):
        super().__init__(f"non-finite loss {loss} at epoch {epoch}, batch {batch}")
        self.epoch = epoch
        self.batch = batch


def _epoch_batches(x, y, batch_size, rng):
    order = rng.permutation(len(x))
    for start in range(0, len(x), batch_size):
        idx = order[start : start + batch_size]
        yield x[idx], y[idx]


def evaluate_model(model: ModelGraph, x, y, batch_size=32):
    """(mean BCE loss, accuracy) of the model on (x, labels) without training."""
    losses = []
    correct = 0
    for start in range(0, len(x), batch_size):
        xb = x[start : start + batch_size]
        yb = y[start : start + batch_size]
        out = model.forward(xb, training=False)
        loss, _ = bce_loss(out, targets_for_labels(model, yb))
        losses.append(loss * len(xb))
        preds = (demented_score(model, out) > 0.5).astype(int)
        correct += int((preds == yb).sum())
    return float(np.sum(losses) / len(x)), correct / len(x)


def train(model: ModelGraph, train_data, config, val_xy=None, progress=None):
    """Minimize BCE with Adam over config.epochs; returns per-epoch rows.

    train_data is either an (inputs, labels) array pair or a callable taking
    the training rng and yielding (inputs, labels) batches for one epoch
    (used when augmentation must resample every epoch). Fully deterministic
    given config.seed: the same seed reproduces the batch order, dropout
    masks, and final weights bit for bit.
    """
    if callable(train_data):
        batch_source = train_data
    else:
        x, y = train_data
        x = np.asarray(x, dtype=model.dtype)
        y = np.asarray(y)

        def batch_source(rng):
            return _epoch_batches(x, y, config.batch_size, rng)

    state = AdamState(model.parameters(), learning_rate=config.learning_rate)
    rng = np.random.default_rng(config.seed)
    log: list[EpochRow] = []
    for epoch in range(1, config.epochs + 1):
        epoch_loss = 0.0
        correct = 0
        n_seen = 0
        for batch_no, (xb, yb) in enumerate(batch_source(rng)):
            out = model.forward(xb, training=True, rng=rng)
            targets = targets_for_labels(model, yb)
            loss, dy = bce_loss(out, targets)
            if not math.isfinite(loss):
                raise TrainingDivergedError(epoch, batch_no, loss)
            grads = model.backward(dy)
            adam_step(model.parameters(), grads, state)
            epoch_loss += loss * len(xb)
            preds = (demented_score(model, out) > 0.5).astype(int)
            correct += int((preds == np.asarray(yb)).sum())
            n_seen += len(xb)
        train_loss = epoch_loss / n_seen
        train_acc = correct / n_seen
        if val_xy is not None:
            val_loss, val_acc = evaluate_model(model, *val_xy, batch_size=config.batch_size)
        else:
            val_loss, val_acc = float("nan"), float("nan")
        row = EpochRow(epoch, train_loss, train_acc, val_loss, val_acc)
        log.append(row)
        if progress is not None:
            progress(row)
    model.clear_caches()
    return log


def write_epoch_log(path, rows):
    """Epoch log CSV: epoch,train_loss,train_acc,val_loss,val_acc."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "train_loss", "train_acc", "val_loss", "val_acc"])
        for r in rows:
            writer.writerow([r.epoch, f"{r.train_loss:.6f}", f"{r.train_acc:.6f}",
                             f"{r.val_loss:.6f}", f"{r.val_acc:.6f}"])
