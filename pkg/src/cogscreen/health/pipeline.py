"""Raw health records -> class-coded, balanced, standardized training arrays.

The stages, in pipeline order: categorize each record into per-feature class
codes, split train/validation/test, oversample the minority class on the
training partition only, fit standard scaling on the (oversampled) training
features, and batch for the 1D network.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

# fixed input ordering for the 1D network; identical at train and inference
FEATURE_ORDER = ("diabetic", "blood_oxygen", "body_temp", "heart_rate", "weight", "age")

CSV_HEADER = ["age", "blood_oxygen", "heart_rate", "body_temp", "weight", "diabetic", "dementia"]


@dataclass
class HealthRecord:
    age: float
    blood_oxygen: float
    heart_rate: float
    body_temp: float
    weight: float
    diabetic: int
    dementia_label: int | None = None

    def __post_init__(self):
        for name in ("age", "blood_oxygen", "heart_rate", "body_temp", "weight"):
            v = float(getattr(self, name))
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            setattr(self, name, v)
        if self.diabetic not in (0, 1):
            raise ValueError(f"diabetic must be 0 or 1, got {self.diabetic}")
        if self.dementia_label is not None and self.dementia_label not in (0, 1):
            raise ValueError(f"dementia label must be 0 or 1, got {self.dementia_label}")


class AgeOutOfRangeError(ValueError):
    """Age falls outside the supported 40-90 year screening window."""


def _heart_rate_class(v):
    if v < 60:
        return 1
    if v <= 100:
        return 2
    return 3


def _age_class(v):
    if not 40 <= v <= 90:
        raise AgeOutOfRangeError(f"age {v} outside supported range [40, 90]")
    if v < 65:
        return 1
    if v < 75:
        return 2
    return 3


def _body_temp_class(v):
    if v < 36.5:
        return 1
    if v <= 37.5:
        return 2
    return 3


def _blood_oxygen_class(v):
    if v < 95:
        return 1
    if v <= 100:
        return 2
    return 3


def _weight_class(v):
    if v < 50:
        return 1
    if v <= 70:
        return 2
    return 3


def categorize(record: HealthRecord) -> np.ndarray:
    """Six class codes in FEATURE_ORDER; boundary values take the middle class."""
    return np.array(
        [
            record.diabetic,
            _blood_oxygen_class(record.blood_oxygen),
            _body_temp_class(record.body_temp),
            _heart_rate_class(record.heart_rate),
            _weight_class(record.weight),
            _age_class(record.age),
        ],
        dtype=np.float64,
    )


# -- CSV ---------------------------------------------------------------


def read_csv(path) -> list[HealthRecord]:
    """Read records from the canonical CSV schema (header required)."""
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(CSV_HEADER) - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"CSV missing columns: {sorted(missing)}")
        for row in reader:
            records.append(
                HealthRecord(
                    age=float(row["age"]),
                    blood_oxygen=float(row["blood_oxygen"]),
                    heart_rate=float(row["heart_rate"]),
                    body_temp=float(row["body_temp"]),
                    weight=float(row["weight"]),
                    diabetic=int(row["diabetic"]),
                    dementia_label=int(row["dementia"]),
                )
            )
    return records


def write_csv(path, records):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [r.age, r.blood_oxygen, r.heart_rate, r.body_temp, r.weight, r.diabetic,
                 r.dementia_label]
            )


# -- SMOTE -------------------------------------------------------------


def smote_oversample(features, labels, k=5, rng=None):
    """Balance classes by synthesizing minority samples on neighbor segments.

    Each synthetic sample is x + u * (nn - x) for a minority sample x, one of
    its k nearest minority neighbors nn (Euclidean), and u uniform in [0, 1].
    k is clamped to minority_count - 1. The majority class is untouched.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if rng is None:
        rng = np.random.default_rng()
    classes, counts = np.unique(labels, return_counts=True)
    if len(classes) < 2:
        raise ValueError("SMOTE requires both classes to be present")
    minority = classes[np.argmin(counts)]
    majority_count = counts.max()
    minority_mask = labels == minority
    minority_x = features[minority_mask]
    n_min = len(minority_x)
    if n_min < 2:
        raise ValueError("SMOTE requires at least 2 minority samples")
    n_needed = int(majority_count - n_min)
    if n_needed == 0:
        return features.copy(), labels.copy()
    k = min(k, n_min - 1)

    # pairwise Euclidean distances within the minority class
    diff = minority_x[:, None, :] - minority_x[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    np.fill_diagonal(dist, np.inf)
    neighbor_idx = np.argsort(dist, axis=1, kind="stable")[:, :k]

    synthetic = np.empty((n_needed, features.shape[1]), dtype=np.float64)
    for i in range(n_needed):
        base = int(rng.integers(n_min))
        nn = int(neighbor_idx[base, rng.integers(k)])
        u = rng.random()
        synthetic[i] = minority_x[base] + u * (minority_x[nn] - minority_x[base])
    out_x = np.concatenate([features, synthetic])
    out_y = np.concatenate([labels, np.full(n_needed, minority, dtype=labels.dtype)])
    return out_x, out_y


# -- scaling -----------------------------------------------------------


@dataclass
class ScalerParams:
    mean: np.ndarray
    std: np.ndarray

    def transform(self, x):
        return (np.asarray(x, dtype=np.float64) - self.mean) / self.std

    def inverse_transform(self, x):
        return np.asarray(x, dtype=np.float64) * self.std + self.mean

    def to_dict(self):
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(mean=np.array(d["mean"], dtype=np.float64),
                   std=np.array(d["std"], dtype=np.float64))


def fit_scaler(train_features) -> ScalerParams:
    x = np.asarray(train_features, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot fit a scaler on an empty training set")
    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)  # constant-column guard
    return ScalerParams(mean=mean, std=std)


def fit_apply_scaler(train_features, *others):
    """Fit on the training features, transform every partition with them."""
    params = fit_scaler(train_features)
    scaled = [params.transform(train_features)]
    scaled.extend(params.transform(o) for o in others)
    return (*scaled, params)


# -- splitting ---------------------------------------------------------


@dataclass
class SplitDataset:
    train: list
    validation: list
    test: list
    split_seed: int = 0


def split(records, seed) -> SplitDataset:
    """Deterministic 80/20 train/test split, then 20% of train as validation.

    Partition sizes: train_pool = floor(0.8 n), test = the remainder; within
    the pool, train = floor(0.8 pool) and validation = the remainder.
    """
    records = list(records)
    n = len(records)
    if n < 10:
        raise ValueError(f"need at least 10 records to split, got {n}")
    order = np.random.default_rng(seed).permutation(n)
    shuffled = [records[i] for i in order]
    pool_size = int(n * 0.8)
    pool, test = shuffled[:pool_size], shuffled[pool_size:]
    train_size = int(pool_size * 0.8)
    train, validation = pool[:train_size], pool[train_size:]
    return SplitDataset(train=train, validation=validation, test=test, split_seed=int(seed))


# -- batching ----------------------------------------------------------


def batches(features, labels, batch_size=32, rng=None):
    """Yield ([b, 6, 1] inputs, label vector) pairs covering every sample once."""
    features = np.asarray(features)
    labels = np.asarray(labels)
    n = len(features)
    if n == 0:
        raise ValueError("cannot batch an empty sample set")
    order = np.arange(n) if rng is None else rng.permutation(n)
    for start in range(0, n, batch_size):
        idx = order[start : start + batch_size]
        x = features[idx].astype(np.float32).reshape(len(idx), -1, 1)
        yield x, labels[idx]


def to_model_inputs(features):
    """Shape a [n, 6] feature array into the network's [n, 6, 1] layout."""
    x = np.asarray(features, dtype=np.float32)
    return x.reshape(len(x), -1, 1)


def prepare_training_arrays(records, seed, k=5):
    """Run the full pipeline on labeled records.

    Returns a dict with standardized feature arrays and label vectors for
    train (oversampled), validation and test, plus the fitted ScalerParams.
    """
    parts = split(records, seed)
    rng = np.random.default_rng(seed + 1)

    def to_arrays(recs):
        x = np.stack([categorize(r) for r in recs])
        y = np.array([r.dementia_label for r in recs], dtype=np.int64)
        return x, y

    train_x, train_y = to_arrays(parts.train)
    val_x, val_y = to_arrays(parts.validation)
    test_x, test_y = to_arrays(parts.test)
    train_x, train_y = smote_oversample(train_x, train_y, k=k, rng=rng)
    train_x, val_x, test_x, scaler = fit_apply_scaler(train_x, val_x, test_x)
    return {
        "train": (train_x, train_y),
        "validation": (val_x, val_y),
        "test": (test_x, test_y),
        "scaler": scaler,
    }
