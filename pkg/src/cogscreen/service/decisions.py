"""Final verdict assembly from a finished session's gathered predictions."""

from __future__ import annotations

from ..fusion import FusionOutcome, fuse
from ..game import GameSession, Phase

PASSED_DISPLAY = "Passed: no dementia indication"
SINGLE_MODEL_CAVEAT = (
    "single-model decision: only the {model} prediction is available"
)


class DecisionNotReadyError(RuntimeError):
    """The session has not produced enough signal for a verdict yet."""


def decision_flow(session: GameSession) -> dict:
    """Resolve the final verdict for a completed session.

    Both predictions -> the rule-table fusion. One prediction -> that model
    decides alone, flagged with a caveat. No predictions (both levels cleared
    within their limits) -> a clean pass with no model invoked.
    """
    if session.phase != Phase.COMPLETED:
        raise DecisionNotReadyError(
            f"session is {session.phase.value}; decision requires Completed"
        )
    health = session.health_prediction
    face = session.face_prediction
    if health is not None and face is not None:
        decision = fuse(health, face)
        return {
            "kind": "fused",
            "outcome": decision.outcome.name,
            "display": decision.display,
            "weighted_score": decision.weighted_score,
            "health_prediction": health,
            "face_prediction": face,
            "caveat": None,
        }
    if face is not None:
        outcome = FusionOutcome.DEMENTED if face == 1 else FusionOutcome.NON_DEMENTED
        return {
            "kind": "single_model",
            "outcome": outcome.name,
            "display": outcome.display,
            "weighted_score": None,
            "health_prediction": None,
            "face_prediction": face,
            "caveat": SINGLE_MODEL_CAVEAT.format(model="face"),
        }
    if health is not None:
        outcome = FusionOutcome.DEMENTED if health == 1 else FusionOutcome.NON_DEMENTED
        return {
            "kind": "single_model",
            "outcome": outcome.name,
            "display": outcome.display,
            "weighted_score": None,
            "health_prediction": health,
            "face_prediction": None,
            "caveat": SINGLE_MODEL_CAVEAT.format(model="health"),
        }
    return {
        "kind": "passed",
        "outcome": None,
        "display": PASSED_DISPLAY,
        "weighted_score": None,
        "health_prediction": None,
        "face_prediction": None,
        "caveat": None,
    }
