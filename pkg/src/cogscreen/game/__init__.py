"""Server-authoritative memory-match state machines for both game levels."""

from .engine import (
    DEFAULT_LEVELS,
    Card,
    FaceSubmitted,
    Flip,
    FlipRejectedError,
    GameSession,
    HealthSubmitted,
    InvalidPhaseError,
    LevelConfig,
    Phase,
    SessionTerminalError,
    Tick,
    TransitionRecord,
    create_session,
    export_event_log,
    replay,
    session_view,
)

__all__ = [
    "DEFAULT_LEVELS",
    "Card",
    "FaceSubmitted",
    "Flip",
    "FlipRejectedError",
    "GameSession",
    "HealthSubmitted",
    "InvalidPhaseError",
    "LevelConfig",
    "Phase",
    "SessionTerminalError",
    "Tick",
    "TransitionRecord",
    "create_session",
    "export_event_log",
    "replay",
    "session_view",
]
