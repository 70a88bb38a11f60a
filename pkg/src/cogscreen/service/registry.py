"""Startup-loaded model registry and the TTL-evicting session store."""

from __future__ import annotations

import secrets
import threading
import time

from ..game import GameSession, create_session
from ..health.pipeline import ScalerParams
from ..models import load_weights, payload_checksum


class ModelRegistry:
    """Both trained models plus the 1D scaler; read-only after startup."""

    def __init__(self, mod1d, scaler, mod2d, checksums=None):
        if mod1d is None or mod2d is None:
            raise ValueError("both models must be present before serving")
        if scaler is None:
            raise ValueError("the 1D model requires its fitted scaler")
        self.mod1d = mod1d
        self.scaler = scaler
        self.mod2d = mod2d
        self.checksums = checksums or {}

    @classmethod
    def from_files(cls, weights_1d_path, weights_2d_path):
        mod1d, _, manifest_1d = load_weights(weights_1d_path, expected_architecture="MOD1D")
        preprocessing = manifest_1d.get("preprocessing")
        if preprocessing is None:
            raise ValueError(
                f"{weights_1d_path} lacks scaler statistics; re-train with the "
                "pipeline so they are embedded"
            )
        scaler = ScalerParams.from_dict(preprocessing)
        mod2d, _, _ = load_weights(weights_2d_path, expected_architecture="MOD2D")
        checksums = {
            "mod1d": payload_checksum(weights_1d_path),
            "mod2d": payload_checksum(weights_2d_path),
        }
        return cls(mod1d, scaler, mod2d, checksums)


class SessionEntry:
    def __init__(self, session: GameSession, created_at: float):
        self.session = session
        self.lock = threading.Lock()
        self.created_at = created_at
        self.last_touch = created_at
        # idempotency memos: payload fingerprint -> response body
        self.health_memo: tuple | None = None
        self.face_memo: tuple | None = None


class SessionStore:
    """session_id -> live session; idle entries expire after the TTL."""

    def __init__(self, levels, ttl_s=1800.0, clock=time.monotonic):
        self.levels = dict(levels)
        self.ttl_s = float(ttl_s)
        self.clock = clock
        self._entries: dict[str, SessionEntry] = {}
        self._lock = threading.Lock()

    def create(self, start_level=1, seed=None) -> tuple[str, SessionEntry]:
        session_id = secrets.token_hex(16)  # 128-bit, unguessable
        if seed is None:
            seed = secrets.randbits(63)
        now = self.clock()
        session = create_session(self.levels, seed=seed, now=now, start_level=start_level)
        entry = SessionEntry(session, created_at=now)
        with self._lock:
            self._evict_expired(now)
            self._entries[session_id] = entry
        return session_id, entry

    def get(self, session_id) -> SessionEntry:
        now = self.clock()
        with self._lock:
            self._evict_expired(now)
            entry = self._entries.get(session_id)
            if entry is None:
                raise KeyError(session_id)
            entry.last_touch = now
            return entry

    def _evict_expired(self, now):
        expired = [sid for sid, e in self._entries.items()
                   if now - e.last_touch > self.ttl_s]
        for sid in expired:
            del self._entries[sid]

    def __len__(self):
        return len(self._entries)
