"""Enrollment, one-time challenge generation and trace validation.

A password is an ordered list of catalog image ids.  Each login presents a
fresh random arrangement of all catalog images on the grid plus a random
head and tail image; the user draws one continuous curve from the head
cell, across the pass-image cells in order, to the tail cell.  The trace is
accepted when the required cells appear as an ordered subsequence and the
trace length stays within the tolerance.

A Story-mode validator (direct ordered clicking of pass-images) is included
as a baseline for comparison runs.
"""

from __future__ import annotations

import math
import random
import threading
import time
import uuid
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import (
    AlreadyEnrolled,
    DuplicateImage,
    InvalidArgs,
    LockedOut,
    UnknownChallenge,
    UnknownImage,
    UnknownUser,
    WrongCount,
)
from .grid import Cell, CellTrace, GridSpec, chain_min_length, trace_length
from .images import CatalogImage

DEFAULT_TTL = 120.0
DEFAULT_LOCKOUT_THRESHOLD = 3


class Reason(str, Enum):
    OK = "ok"
    WRONG_HEAD = "wrong_head"
    WRONG_TAIL = "wrong_tail"
    SEQUENCE_MISMATCH = "sequence_mismatch"
    TOO_LONG = "too_long"
    EXPIRED = "expired"
    CONSUMED = "consumed"


#: Rejections that count as authentication failures for the lockout counter.
#: Challenge-state rejections (expired, consumed) do not burn attempts.
AUTH_FAILURE_REASONS = frozenset(
    {Reason.WRONG_HEAD, Reason.WRONG_TAIL, Reason.SEQUENCE_MISMATCH, Reason.TOO_LONG}
)


@dataclass(frozen=True)
class ValidationOutcome:
    accepted: bool
    reason: Reason

    def __post_init__(self) -> None:
        if self.accepted != (self.reason is Reason.OK):
            raise ValueError("accepted flag must match reason")

    @classmethod
    def ok(cls) -> "ValidationOutcome":
        return cls(True, Reason.OK)

    @classmethod
    def rejected(cls, reason: Reason) -> "ValidationOutcome":
        return cls(False, reason)


@dataclass(frozen=True)
class PasswordRecord:
    user_id: str
    pass_images: tuple[str, ...]
    created_at: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "pass_images", tuple(self.pass_images))
        if len(set(self.pass_images)) != len(self.pass_images):
            raise ValueError("pass images must be distinct")


@dataclass
class ChallengeLayout:
    """One-time random arrangement: image id -> cell, plus head/tail images."""

    challenge_id: str
    user_id: str
    placement: dict[str, Cell]
    head_image: str
    tail_image: str
    issued_at: float
    ttl: float = DEFAULT_TTL
    consumed: bool = False

    def __post_init__(self) -> None:
        cells = list(self.placement.values())
        if len(set(cells)) != len(cells):
            raise ValueError("placement must map images to distinct cells")
        if self.head_image == self.tail_image:
            raise ValueError("head and tail images must differ")
        for img in (self.head_image, self.tail_image):
            if img not in self.placement:
                raise ValueError(f"{img} not placed on the grid")
        self._cell_to_image = {cell: img for img, cell in self.placement.items()}

    @property
    def expires_at(self) -> float:
        return self.issued_at + self.ttl

    def cell_of(self, image_id: str) -> Cell:
        return self.placement[image_id]

    def image_at(self, cell: Cell) -> str:
        return self._cell_to_image[cell]


@dataclass(frozen=True)
class ValidationPolicy:
    """Tolerance mode and scheme parameters.

    ``absolute`` caps the trace length at ``(rows + cols) * (n + 1)``;
    ``relative`` caps it at ``ceil(factor * minimum feasible length)`` for
    the specific challenge, which tracks how spread out the required cells
    are.
    """

    grid: GridSpec
    n: int = 5
    mode: str = "absolute"
    relative_factor: float = 2.5

    def __post_init__(self) -> None:
        if self.mode not in ("absolute", "relative"):
            raise ValueError("mode must be 'absolute' or 'relative'")
        if self.n < 1:
            raise ValueError("password length must be >= 1")
        if self.relative_factor < 1.0:
            raise ValueError("relative factor must be >= 1")


def max_trace_length(grid: GridSpec | tuple[int, int], n: int) -> int:
    """Absolute trace-length cap: ``(rows + cols) * (n + 1)``.

    Accepts a GridSpec or a bare ``(rows, cols)`` pair.
    """
    if n < 1:
        raise InvalidArgs("password length must be >= 1")
    rows, cols = (grid.rows, grid.cols) if isinstance(grid, GridSpec) else grid
    if rows < 1 or cols < 1:
        raise InvalidArgs("grid dimensions must be >= 1")
    return (rows + cols) * (n + 1)


def required_waypoints(challenge: ChallengeLayout, record: PasswordRecord) -> list[Cell]:
    """Cells a valid trace must visit in order: head, pass-images, tail."""
    ids = [challenge.head_image, *record.pass_images, challenge.tail_image]
    return [challenge.cell_of(i) for i in ids]


def relative_tolerance(
    challenge: ChallengeLayout, record: PasswordRecord, policy: ValidationPolicy
) -> int:
    """Per-challenge cap: ``ceil(factor * minimum feasible trace length)``."""
    minimum = chain_min_length(required_waypoints(challenge, record), policy.grid)
    return math.ceil(policy.relative_factor * minimum)


def effective_tolerance(
    challenge: ChallengeLayout, record: PasswordRecord, policy: ValidationPolicy
) -> int:
    if policy.mode == "relative":
        return relative_tolerance(challenge, record, policy)
    return max_trace_length(policy.grid, policy.n)


def _contains_in_order(needle: Sequence[str], haystack: Sequence[str]) -> bool:
    """True when needle occurs in haystack as an ordered subsequence."""
    pos = 0
    for want in needle:
        while pos < len(haystack) and haystack[pos] != want:
            pos += 1
        if pos == len(haystack):
            return False
        pos += 1
    return True


def evaluate_trace(
    trace: CellTrace,
    challenge: ChallengeLayout,
    record: PasswordRecord,
    policy: ValidationPolicy,
    now: float | None = None,
    *,
    consumed: bool | None = None,
) -> ValidationOutcome:
    """Apply the login rules to a trace; reports the first failed check.

    Check order: expired, consumed, head cell, tail cell, ordered crossing
    of the pass-images, trace length within tolerance.  ``consumed``
    overrides the flag stored on the challenge (the engine passes the
    pre-consumption snapshot so exactly one submission is evaluated).
    """
    now = time.time() if now is None else now
    if now > challenge.expires_at:
        return ValidationOutcome.rejected(Reason.EXPIRED)
    if challenge.consumed if consumed is None else consumed:
        return ValidationOutcome.rejected(Reason.CONSUMED)
    if trace.cells[0] != challenge.cell_of(challenge.head_image):
        return ValidationOutcome.rejected(Reason.WRONG_HEAD)
    if trace.cells[-1] != challenge.cell_of(challenge.tail_image):
        return ValidationOutcome.rejected(Reason.WRONG_TAIL)
    crossed = [challenge.image_at(cell) for cell in trace.cells]
    if not _contains_in_order(record.pass_images, crossed):
        return ValidationOutcome.rejected(Reason.SEQUENCE_MISMATCH)
    if trace_length(trace) > effective_tolerance(challenge, record, policy):
        return ValidationOutcome.rejected(Reason.TOO_LONG)
    return ValidationOutcome.ok()


def validate_story(selected: Sequence[str], record: PasswordRecord) -> ValidationOutcome:
    """Baseline validator: the selection must equal the pass-images exactly."""
    if list(selected) == list(record.pass_images):
        return ValidationOutcome.ok()
    return ValidationOutcome.rejected(Reason.SEQUENCE_MISMATCH)


class MemoryUserStore:
    """Dict-backed user store; the service swaps in a file-backed one."""

    def __init__(self) -> None:
        self._users: dict[str, PasswordRecord] = {}

    def get(self, user_id: str) -> PasswordRecord | None:
        return self._users.get(user_id)

    def put(self, record: PasswordRecord) -> None:
        self._users[record.user_id] = record

    def __contains__(self, user_id: str) -> bool:
        return user_id in self._users

    def user_ids(self) -> list[str]:
        return list(self._users)


class AuthEngine:
    """Stateful front door: users, live challenges and lockout counters.

    Challenge consumption and lockout updates happen under one lock so that
    concurrent submissions of the same challenge yield exactly one real
    validation; everything else delegates to the pure functions above.
    """

    def __init__(
        self,
        catalog: Sequence[CatalogImage],
        policy: ValidationPolicy,
        *,
        user_store: MemoryUserStore | None = None,
        ttl: float = DEFAULT_TTL,
        lockout_threshold: int = DEFAULT_LOCKOUT_THRESHOLD,
    ) -> None:
        self.catalog = list(catalog)
        self.policy = policy
        self.ttl = ttl
        self.lockout_threshold = lockout_threshold
        self._image_ids = [img.id for img in self.catalog]
        if len(set(self._image_ids)) != len(self._image_ids):
            raise ValueError("catalog ids must be unique")
        self._users = user_store if user_store is not None else MemoryUserStore()
        self._challenges: dict[str, ChallengeLayout] = {}
        self._failures: dict[str, int] = {}
        self._lock = threading.Lock()
        self._sysrand = random.SystemRandom()

    # -- enrollment ----------------------------------------------------------

    def enroll(self, user_id: str, image_ids: Sequence[str], now: float | None = None) -> PasswordRecord:
        ids = list(image_ids)
        if user_id in self._users:
            raise AlreadyEnrolled(f"user {user_id} already enrolled")
        if len(ids) != self.policy.n:
            raise WrongCount(f"expected {self.policy.n} images, got {len(ids)}")
        if len(set(ids)) != len(ids):
            raise DuplicateImage("pass images must be distinct")
        unknown = [i for i in ids if i not in set(self._image_ids)]
        if unknown:
            raise UnknownImage(f"not in catalog: {unknown[0]}")
        record = PasswordRecord(
            user_id=user_id,
            pass_images=tuple(ids),
            created_at=time.time() if now is None else now,
        )
        self._users.put(record)
        return record

    def get_record(self, user_id: str) -> PasswordRecord:
        record = self._users.get(user_id)
        if record is None:
            raise UnknownUser(f"unknown user: {user_id}")
        return record

    def is_enrolled(self, user_id: str) -> bool:
        return user_id in self._users

    # -- lockout ---------------------------------------------------------------

    def is_locked_out(self, user_id: str) -> bool:
        with self._lock:
            return self._failures.get(user_id, 0) >= self.lockout_threshold

    def failure_count(self, user_id: str) -> int:
        with self._lock:
            return self._failures.get(user_id, 0)

    # -- challenges ------------------------------------------------------------

    def issue_challenge(
        self, user_id: str, seed: int | None = None, now: float | None = None
    ) -> ChallengeLayout:
        """Fresh single-use challenge: a uniformly random image-to-cell
        bijection plus head and tail drawn uniformly from all images
        (head != tail).  A seed makes layout, head and tail reproducible."""
        record = self.get_record(user_id)
        if self.is_locked_out(record.user_id):
            raise LockedOut(f"user {user_id} is locked out")
        grid = self.policy.grid
        if len(self._image_ids) != grid.rows * grid.cols:
            raise InvalidArgs(
                f"catalog has {len(self._image_ids)} images, grid needs {grid.rows * grid.cols}"
            )
        rng = random.Random(seed) if seed is not None else self._sysrand
        order = list(self._image_ids)
        rng.shuffle(order)
        placement = {img: cell for img, cell in zip(order, grid.cells())}
        head = rng.choice(self._image_ids)
        tail = rng.choice([i for i in self._image_ids if i != head])
        now = time.time() if now is None else now
        challenge = ChallengeLayout(
            challenge_id=uuid.uuid4().hex,
            user_id=user_id,
            placement=placement,
            head_image=head,
            tail_image=tail,
            issued_at=now,
            ttl=self.ttl,
        )
        with self._lock:
            self._purge_expired(now)
            self._challenges[challenge.challenge_id] = challenge
        return challenge

    def get_challenge(self, challenge_id: str) -> ChallengeLayout:
        with self._lock:
            challenge = self._challenges.get(challenge_id)
        if challenge is None:
            raise UnknownChallenge(f"unknown challenge: {challenge_id}")
        return challenge

    def _purge_expired(self, now: float) -> None:
        # keep expired entries around for a grace window so resubmissions
        # still report "expired" rather than vanishing
        grace = max(10 * self.ttl, 3600.0)
        stale = [cid for cid, ch in self._challenges.items() if now > ch.expires_at + grace]
        for cid in stale:
            del self._challenges[cid]

    # -- validation --------------------------------------------------------------

    def validate_trace(
        self, challenge_id: str, trace: CellTrace, now: float | None = None
    ) -> ValidationOutcome:
        """Single-use validation: the challenge is consumed atomically and
        regardless of outcome; the lockout counter moves on genuine
        authentication failures and resets on success."""
        now = time.time() if now is None else now
        with self._lock:
            challenge = self._challenges.get(challenge_id)
            if challenge is None:
                raise UnknownChallenge(f"unknown challenge: {challenge_id}")
            was_consumed = challenge.consumed
            challenge.consumed = True
        record = self.get_record(challenge.user_id)
        outcome = evaluate_trace(
            trace, challenge, record, self.policy, now, consumed=was_consumed
        )
        with self._lock:
            if outcome.reason in AUTH_FAILURE_REASONS:
                self._failures[record.user_id] = self._failures.get(record.user_id, 0) + 1
            elif outcome.accepted:
                self._failures[record.user_id] = 0
        return outcome

    def validate_story(self, user_id: str, selected: Sequence[str]) -> ValidationOutcome:
        return validate_story(selected, self.get_record(user_id))
