"""Event-sourced engine for the two-level memory-match assessment.

Time enters only through Tick events (no ambient clock reads), so replaying a
session's event log reproduces its final state exactly. A session spans both
levels: level 1 routes strugglers to the health-metrics prediction and then
re-admits them to level 2; level 2 routes strugglers to face capture. Click
and pair counters restart when a new level's board is dealt.

Level 2 additionally swaps the positions of two random face-down cards every
15 seconds of play, driven by the session's seeded stream.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from enum import Enum

SWAP_INTERVAL_S = 15.0


class Phase(str, Enum):
    CREATED = "Created"
    MEMORIZING = "Memorizing"
    PLAYING = "Playing"
    AWAITING_HEALTH_INPUT = "AwaitingHealthInput"
    AWAITING_FACE_CAPTURE = "AwaitingFaceCapture"
    LEVEL_PASSED = "LevelPassed"
    COMPLETED = "Completed"
    FAILED = "Failed"


TERMINAL_PHASES = (Phase.COMPLETED, Phase.FAILED)


@dataclass(frozen=True)
class LevelConfig:
    level: int
    click_threshold: int
    countdown_s: float
    show_timer_s: float
    rows: int
    cols: int

    def __post_init__(self):
        if self.level not in (1, 2):
            raise ValueError("level must be 1 or 2")
        if self.click_threshold <= 0:
            raise ValueError("click_threshold must be positive")
        if (self.rows * self.cols) % 2 != 0:
            raise ValueError("grid must hold an even number of cards")

    @property
    def total_pairs(self) -> int:
        return self.rows * self.cols // 2


DEFAULT_LEVELS = {
    1: LevelConfig(level=1, click_threshold=36, countdown_s=120.0, show_timer_s=5.0,
                   rows=4, cols=4),
    2: LevelConfig(level=2, click_threshold=70, countdown_s=300.0, show_timer_s=10.0,
                   rows=4, cols=5),
}


# -- events ------------------------------------------------------------


@dataclass(frozen=True)
class Flip:
    card_index: int
    kind = "flip"

    def payload(self):
        return {"card_index": self.card_index}


@dataclass(frozen=True)
class Tick:
    now: float
    kind = "tick"

    def payload(self):
        return {"now": self.now}


@dataclass(frozen=True)
class HealthSubmitted:
    prediction: int
    score: float = 0.0
    kind = "health_submitted"

    def payload(self):
        return {"prediction": self.prediction, "score": self.score}


@dataclass(frozen=True)
class FaceSubmitted:
    prediction: int
    score: float = 0.0
    kind = "face_submitted"

    def payload(self):
        return {"prediction": self.prediction, "score": self.score}


EVENT_KINDS = {
    "flip": lambda p: Flip(card_index=int(p["card_index"])),
    "tick": lambda p: Tick(now=float(p["now"])),
    "health_submitted": lambda p: HealthSubmitted(int(p["prediction"]), float(p.get("score", 0.0))),
    "face_submitted": lambda p: FaceSubmitted(int(p["prediction"]), float(p.get("score", 0.0))),
}


@dataclass
class TransitionRecord:
    seq: int
    kind: str
    from_phase: Phase
    to_phase: Phase
    reason: str | None = None

    @property
    def changed(self) -> bool:
        return self.from_phase != self.to_phase


# -- errors ------------------------------------------------------------


class SessionTerminalError(RuntimeError):
    """An event arrived after the session reached a terminal phase."""


class InvalidPhaseError(RuntimeError):
    """The event kind is not allowed in the session's current phase."""

    def __init__(self, phase, kind):
        self.phase = phase
        super().__init__(f"{kind} not allowed while {phase.value}")


class FlipRejectedError(InvalidPhaseError):
    """Flip refused (matched/face-up card or bad index); click not counted."""

    def __init__(self, phase, reason):
        self.reason = reason
        RuntimeError.__init__(self, f"flip rejected: {reason}")
        self.phase = phase


# -- session -----------------------------------------------------------


@dataclass
class Card:
    value: int
    face_up: bool = False
    matched: bool = False


class GameSession:
    """Authoritative state of one player's level-1/level-2 run."""

    def __init__(self, configs, seed, now=0.0, start_level=1):
        self.configs = dict(configs)
        self.seed = int(seed)
        self.rng = random.Random(self.seed)
        self.level = int(start_level)
        if self.level not in self.configs:
            raise ValueError(f"no config for level {start_level}")
        self.phase = Phase.CREATED
        self.clock = float(now)
        self.click_count = 0
        self.matched_pairs = 0
        self.grid: list[Card] = []
        self.deadline: float | None = None
        self.countdown_deadline: float | None = None
        self.next_swap_at: float | None = None
        self.health_prediction: int | None = None
        self.health_score: float | None = None
        self.face_prediction: int | None = None
        self.face_score: float | None = None
        self.acknowledged = False  # level 2 finished within its limits
        self.level1_passed_clean = False
        self.event_log: list[dict] = []
        self.transitions: list[TransitionRecord] = []
        self._next_seq = 1
        self._deal(self.level)
        self._record_transition(0, "create", Phase.CREATED, "session-created")

    # -- internals ---------------------------------------------------

    @property
    def config(self) -> LevelConfig:
        return self.configs[self.level]

    def _deal(self, level):
        cfg = self.configs[level]
        deck = list(range(cfg.total_pairs)) * 2
        self.rng.shuffle(deck)
        self.grid = [Card(value=v) for v in deck]
        self.level = level
        self.click_count = 0
        self.matched_pairs = 0
        self.phase = Phase.MEMORIZING
        self.deadline = self.clock + cfg.show_timer_s
        self.countdown_deadline = None
        self.next_swap_at = None

    def _record_transition(self, seq, kind, from_phase, reason):
        rec = TransitionRecord(seq, kind, from_phase, self.phase, reason)
        self.transitions.append(rec)
        return rec

    def _start_playing(self):
        cfg = self.config
        for card in self.grid:
            card.face_up = False
        self.phase = Phase.PLAYING
        self.countdown_deadline = self.clock + cfg.countdown_s
        if self.level == 2:
            self.next_swap_at = self.clock + SWAP_INTERVAL_S

    def _route_to_prediction(self):
        self.phase = (
            Phase.AWAITING_HEALTH_INPUT if self.level == 1 else Phase.AWAITING_FACE_CAPTURE
        )

    def _face_down_unmatched(self):
        return [i for i, c in enumerate(self.grid) if not c.face_up and not c.matched]

    def _apply_swaps(self):
        while self.next_swap_at is not None and self.clock >= self.next_swap_at:
            candidates = self._face_down_unmatched()
            if len(candidates) >= 2:
                i, j = self.rng.sample(candidates, 2)
                self.grid[i].value, self.grid[j].value = (
                    self.grid[j].value,
                    self.grid[i].value,
                )
            self.next_swap_at += SWAP_INTERVAL_S

    # -- event application --------------------------------------------

    def apply(self, event) -> TransitionRecord:
        if self.phase in TERMINAL_PHASES:
            raise SessionTerminalError(f"session is {self.phase.value}")
        seq = self._next_seq
        from_phase = self.phase
        if isinstance(event, Tick):
            reason = self._on_tick(event)
        elif isinstance(event, Flip):
            reason = self._on_flip(event)
        elif isinstance(event, HealthSubmitted):
            reason = self._on_health(event)
        elif isinstance(event, FaceSubmitted):
            reason = self._on_face(event)
        else:
            raise TypeError(f"unknown event {event!r}")
        # only accepted events consume a sequence number and enter the log
        self._next_seq += 1
        self.event_log.append(
            {
                "seq": seq,
                "kind": event.kind,
                "payload": event.payload(),
                "server_time": self.clock,
            }
        )
        return self._record_transition(seq, event.kind, from_phase, reason)

    def _on_tick(self, event: Tick):
        self.clock = max(self.clock, float(event.now))
        if self.phase == Phase.MEMORIZING:
            if self.clock >= self.deadline:
                self._start_playing()
                return "memorization-ended"
            return None
        if self.phase == Phase.PLAYING:
            self._apply_swaps()
            if self.clock >= self.countdown_deadline:
                self._route_to_prediction()
                return "timer-expired"
            return None
        if self.phase == Phase.LEVEL_PASSED and self.level == 1:
            self._deal(2)
            return "level2-started"
        return None

    def _on_flip(self, event: Flip):
        if self.phase != Phase.PLAYING:
            raise FlipRejectedError(self.phase, f"not playing ({self.phase.value})")
        idx = event.card_index
        if not 0 <= idx < len(self.grid):
            raise FlipRejectedError(self.phase, f"card index {idx} out of range")
        card = self.grid[idx]
        if card.matched:
            raise FlipRejectedError(self.phase, "card already matched")
        if card.face_up:
            raise FlipRejectedError(self.phase, "card already face up")
        pending = [c for c in self.grid if c.face_up and not c.matched]
        if len(pending) == 2:
            # the previous mismatch turns face-down on this next flip
            for c in pending:
                c.face_up = False
        card.face_up = True
        self.click_count += 1
        face_up = [c for c in self.grid if c.face_up and not c.matched]
        if len(face_up) == 2:
            a, b = face_up
            if a.value == b.value:
                a.matched = b.matched = True
                a.face_up = b.face_up = False
                self.matched_pairs += 1
        if self.matched_pairs == self.config.total_pairs:
            if self.level == 1:
                self.phase = Phase.LEVEL_PASSED
                self.level1_passed_clean = True
            else:
                self.phase = Phase.COMPLETED
                self.acknowledged = True
            return "all-pairs-matched"
        if self.click_count > self.config.click_threshold:
            self._route_to_prediction()
            return "click-threshold-crossed"
        return None

    def _on_health(self, event: HealthSubmitted):
        if self.phase != Phase.AWAITING_HEALTH_INPUT:
            raise InvalidPhaseError(self.phase, "health submission")
        self.health_prediction = int(event.prediction)
        self.health_score = float(event.score)
        self._deal(2)
        return "health-recorded"

    def _on_face(self, event: FaceSubmitted):
        if self.phase != Phase.AWAITING_FACE_CAPTURE:
            raise InvalidPhaseError(self.phase, "face submission")
        self.face_prediction = int(event.prediction)
        self.face_score = float(event.score)
        self.phase = Phase.COMPLETED
        return "face-recorded"

    def abort(self, reason="aborted"):
        """Force the session into Failed (service-side eviction path)."""
        if self.phase in TERMINAL_PHASES:
            raise SessionTerminalError(f"session is {self.phase.value}")
        from_phase = self.phase
        self.phase = Phase.FAILED
        return self._record_transition(self._next_seq, "abort", from_phase, reason)

    # -- snapshots ------------------------------------------------------

    def state_dict(self):
        """Full state snapshot used for replay-equivalence checks."""
        return {
            "level": self.level,
            "phase": self.phase.value,
            "clock": self.clock,
            "click_count": self.click_count,
            "matched_pairs": self.matched_pairs,
            "grid": [(c.value, c.face_up, c.matched) for c in self.grid],
            "deadline": self.deadline,
            "countdown_deadline": self.countdown_deadline,
            "next_swap_at": self.next_swap_at,
            "health_prediction": self.health_prediction,
            "face_prediction": self.face_prediction,
            "acknowledged": self.acknowledged,
            "level1_passed_clean": self.level1_passed_clean,
        }


def create_session(configs=None, seed=0, now=0.0, start_level=1) -> GameSession:
    """Deal a shuffled grid and open the memorization window."""
    if configs is None:
        configs = DEFAULT_LEVELS
    return GameSession(configs, seed=seed, now=now, start_level=start_level)


def session_view(session: GameSession) -> dict:
    """Redacted client state: face-down card values are never included."""
    reveal_all = session.phase == Phase.MEMORIZING
    cards = []
    for c in session.grid:
        visible = reveal_all or c.face_up or c.matched
        cards.append(
            {
                "value": c.value if visible else None,
                "face_up": c.face_up or reveal_all,
                "matched": c.matched,
            }
        )
    if session.phase == Phase.MEMORIZING:
        remaining = max(0.0, session.deadline - session.clock)
    elif session.phase == Phase.PLAYING:
        remaining = max(0.0, session.countdown_deadline - session.clock)
    else:
        remaining = None
    cfg = session.config
    return {
        "level": session.level,
        "phase": session.phase.value,
        "click_count": session.click_count,
        "click_threshold": cfg.click_threshold,
        "matched_pairs": session.matched_pairs,
        "total_pairs": cfg.total_pairs,
        "rows": cfg.rows,
        "cols": cfg.cols,
        "remaining_s": remaining,
        "cards": cards,
        "health_prediction": session.health_prediction,
        "face_prediction": session.face_prediction,
        "acknowledged": session.acknowledged,
    }


def export_event_log(session: GameSession) -> str:
    """Line-delimited log: seq,kind,payload,server_time (CSV-quoted payload)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    for entry in session.event_log:
        writer.writerow(
            [
                entry["seq"],
                entry["kind"],
                json.dumps(entry["payload"], sort_keys=True, separators=(",", ":")),
                f"{entry['server_time']:.6f}",
            ]
        )
    return buf.getvalue()


def replay(configs, seed, log_text_or_entries, now=0.0, start_level=1) -> GameSession:
    """Rebuild a session by re-applying an exported or in-memory event log."""
    session = GameSession(configs, seed=seed, now=now, start_level=start_level)
    if isinstance(log_text_or_entries, str):
        entries = []
        for row in csv.reader(io.StringIO(log_text_or_entries)):
            if not row:
                continue
            entries.append({"kind": row[1], "payload": json.loads(row[2])})
    else:
        entries = log_text_or_entries
    for entry in entries:
        event = EVENT_KINDS[entry["kind"]](entry["payload"])
        session.apply(event)
    return session
