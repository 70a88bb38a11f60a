"""HTTP service: session lifecycle, predictions, fused decisions."""

from .app import create_app
from .config import ServiceConfig, load_config, parse_config
from .decisions import DecisionNotReadyError, decision_flow
from .registry import ModelRegistry, SessionStore

__all__ = [
    "DecisionNotReadyError",
    "ModelRegistry",
    "ServiceConfig",
    "SessionStore",
    "create_app",
    "decision_flow",
    "load_config",
    "parse_config",
]
