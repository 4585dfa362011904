"""File-backed user store so enrollments survive service restarts.

Challenges stay in memory on purpose: they are single-use and TTL-bound,
so persisting them would only widen the replay window.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

from .engine import PasswordRecord


class JsonUserStore:
    """user_id -> PasswordRecord map persisted as a JSON file.

    Writes go to a temp file followed by an atomic replace, so a crash
    mid-write never corrupts the store.  Same interface as MemoryUserStore.
    """

    def __init__(self, path: str | Path) -> None:
        self._path = Path(path)
        self._lock = threading.Lock()
        self._users: dict[str, PasswordRecord] = {}
        if self._path.is_file():
            self._load()

    def _load(self) -> None:
        raw = json.loads(self._path.read_text())
        for entry in raw:
            record = PasswordRecord(
                user_id=entry["user_id"],
                pass_images=tuple(entry["pass_images"]),
                created_at=entry["created_at"],
            )
            self._users[record.user_id] = record

    def _save(self) -> None:
        payload = [
            {
                "user_id": r.user_id,
                "pass_images": list(r.pass_images),
                "created_at": r.created_at,
            }
            for r in self._users.values()
        ]
        self._path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self._path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh)
            os.replace(tmp, self._path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get(self, user_id: str) -> PasswordRecord | None:
        with self._lock:
            return self._users.get(user_id)

    def put(self, record: PasswordRecord) -> None:
        with self._lock:
            self._users[record.user_id] = record
            self._save()

    def __contains__(self, user_id: str) -> bool:
        with self._lock:
            return user_id in self._users

    def user_ids(self) -> list[str]:
        with self._lock:
            return list(self._users)
