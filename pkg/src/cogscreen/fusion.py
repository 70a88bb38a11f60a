"""Rule-based combination of the two binary predictions into a final decision.

The health model carries 30% nominal weight and the face model 70%; because
the rule table is exhaustive over the four binary input pairs, the weighted
score is computed for display only and never changes the outcome. The final
polarity always follows the face model; the "high probability" qualifier
appears exactly when the two models disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

HEALTH_WEIGHT = 0.30
FACE_WEIGHT = 0.70


class FusionOutcome(str, Enum):
    DEMENTED = "Demented"
    DEMENTED_HIGH_PROBABILITY = "DementedHighProbability"
    NON_DEMENTED_HIGH_PROBABILITY = "NonDementedHighProbability"
    NON_DEMENTED = "NonDemented"

    @property
    def display(self) -> str:
        return _DISPLAY[self]


_DISPLAY = {
    FusionOutcome.DEMENTED: "Demented",
    FusionOutcome.DEMENTED_HIGH_PROBABILITY: "Demented with a high probability",
    FusionOutcome.NON_DEMENTED_HIGH_PROBABILITY: "Non-Demented with a high probability",
    FusionOutcome.NON_DEMENTED: "Non-Demented",
}

_RULES = {
    (1, 1): FusionOutcome.DEMENTED,
    (0, 1): FusionOutcome.DEMENTED_HIGH_PROBABILITY,
    (1, 0): FusionOutcome.NON_DEMENTED_HIGH_PROBABILITY,
    (0, 0): FusionOutcome.NON_DEMENTED,
}


@dataclass(frozen=True)
class FusionDecision:
    outcome: FusionOutcome
    health_prediction: int
    face_prediction: int
    weighted_score: float

    @property
    def display(self) -> str:
        return self.outcome.display


def fuse(health_prediction, face_prediction) -> FusionDecision:
    """Map the (health, face) binary pair to its decision row."""
    if health_prediction is None or face_prediction is None:
        raise ValueError("both predictions must be present before fusing")
    pair = (int(health_prediction), int(face_prediction))
    if pair[0] not in (0, 1) or pair[1] not in (0, 1):
        raise ValueError(f"predictions must be binary, got {pair}")
    return FusionDecision(
        outcome=_RULES[pair],
        health_prediction=pair[0],
        face_prediction=pair[1],
        weighted_score=HEALTH_WEIGHT * pair[0] + FACE_WEIGHT * pair[1],
    )
