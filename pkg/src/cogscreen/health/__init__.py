"""Health-metrics ingestion pipeline for the 1D predictor."""

from .pipeline import (
    FEATURE_ORDER,
    HealthRecord,
    ScalerParams,
    SplitDataset,
    batches,
    categorize,
    fit_apply_scaler,
    fit_scaler,
    prepare_training_arrays,
    read_csv,
    smote_oversample,
    split,
    write_csv,
)

__all__ = [
    "FEATURE_ORDER",
    "HealthRecord",
    "ScalerParams",
    "SplitDataset",
    "batches",
    "categorize",
    "fit_apply_scaler",
    "fit_scaler",
    "prepare_training_arrays",
    "read_csv",
    "smote_oversample",
    "split",
    "write_csv",
]
