"""The two classifier architectures: building, training, persistence, inference."""

from .architectures import (
    ARCH_1D,
    ARCH_2D,
    architecture_id_for,
    build_mod1d,
    build_mod2d,
    demented_score,
    targets_for_labels,
)
from .predict import (
    LABEL_DEMENTED,
    LABEL_NON_DEMENTED,
    PredictionResult,
    classify,
    extract_feature_maps,
    predict_face,
    predict_health,
)
from .training import (
    EpochRow,
    Mod1DConfig,
    Mod2DConfig,
    TrainingDivergedError,
    evaluate_model,
    train,
    write_epoch_log,
)
from .weights_io import (
    ArchitectureMismatchError,
    WeightsFormatError,
    load_weights,
    payload_checksum,
    save_weights,
)

__all__ = [
    "ARCH_1D",
    "ARCH_2D",
    "ArchitectureMismatchError",
    "EpochRow",
    "LABEL_DEMENTED",
    "LABEL_NON_DEMENTED",
    "Mod1DConfig",
    "Mod2DConfig",
    "PredictionResult",
    "TrainingDivergedError",
    "WeightsFormatError",
    "architecture_id_for",
    "build_mod1d",
    "build_mod2d",
    "classify",
    "demented_score",
    "evaluate_model",
    "extract_feature_maps",
    "load_weights",
    "payload_checksum",
    "predict_face",
    "predict_health",
    "save_weights",
    "targets_for_labels",
    "train",
    "write_epoch_log",
]
