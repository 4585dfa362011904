"""Security analytics: password-space size and observation-attack residue.

The attack model is deliberately pessimistic: the observer is assumed to
have recorded the full sequence of images the curve crossed (stronger than
what trace erasure actually leaks) and to know the scheme rules and the
password length, but not which crossed images are decoys.  The candidate
set is every ordered selection of n distinct crossed images that appears in
crossing order, so the reported residue is a lower bound on the protection.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CandidateLimitExceeded, InvalidArgs

#: Refuse candidate enumeration beyond this many ordered tuples.
CANDIDATE_LIMIT = 10**8


@dataclass(frozen=True)
class SpaceReport:
    catalog_size: int
    password_length: int
    space: int
    bits: float

    def as_dict(self) -> dict:
        return {
            "catalog_size": self.catalog_size,
            "password_length": self.password_length,
            "space": self.space,
            "bits": self.bits,
        }


@dataclass(frozen=True)
class AttackReport:
    observed_trace: tuple[str, ...]
    n: int
    candidate_count: int
    contains_truth: bool | None
    residual_bits: float | None

    def as_dict(self) -> dict:
        return {
            "observed_trace": list(self.observed_trace),
            "n": self.n,
            "candidate_count": self.candidate_count,
            "contains_truth": self.contains_truth,
            "residual_bits": self.residual_bits,
        }


def password_space(catalog_size: int, password_length: int) -> SpaceReport:
    """Number of ordered selections of distinct images: N!/(N-n)!."""
    if catalog_size < 1 or password_length < 1:
        raise InvalidArgs("catalog size and password length must be >= 1")
    if password_length > catalog_size:
        raise InvalidArgs("password length cannot exceed catalog size")
    space = math.perm(catalog_size, password_length)
    return SpaceReport(
        catalog_size=catalog_size,
        password_length=password_length,
        space=space,
        bits=math.log2(space),
    )


def pin_space_ratio(report: SpaceReport, alphabet: int, pin_length: int) -> float:
    """How many times larger the space is than an alphabet^length PIN space."""
    if alphabet < 2:
        raise InvalidArgs("alphabet must have at least two symbols")
    if pin_length < 1:
        raise InvalidArgs("pin length must be >= 1")
    return report.space / (alphabet**pin_length)


def _next_occurrence_index(positions: Sequence[int], start: int) -> int | None:
    """Smallest position >= start in a sorted position list, or None."""
    i = bisect_left(positions, start)
    return positions[i] if i < len(positions) else None


def iter_candidates(observed: Sequence[str], n: int) -> Iterator[tuple[str, ...]]:
    """All ordered n-tuples of distinct ids occurring as a subsequence.

    Enumerates via leftmost occurrences, so each distinct tuple is yielded
    exactly once no matter how often the trace revisits an image.
    """
    positions: dict[str, list[int]] = {}
    for idx, image_id in enumerate(observed):
        positions.setdefault(image_id, []).append(idx)
    ids = list(positions)

    def extend(prefix: tuple[str, ...], start: int) -> Iterator[tuple[str, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        for image_id in ids:
            if image_id in prefix:
                continue
            nxt = _next_occurrence_index(positions[image_id], start)
            if nxt is None:
                continue
            yield from extend(prefix + (image_id,), nxt + 1)

    yield from extend((), 0)


def observation_candidates(
    observed: Sequence[str], n: int, truth: Sequence[str] | None = None
) -> AttackReport:
    """Candidate passwords consistent with a fully observed crossing sequence.

    ``truth``, when given, marks whether the real password survives in the
    candidate set (it always does if the observed trace was an accepted
    login).  Refuses inputs whose worst-case tuple count exceeds
    CANDIDATE_LIMIT.
    """
    observed = list(observed)
    if not observed:
        raise InvalidArgs("observed trace must be non-empty")
    if n < 1:
        raise InvalidArgs("password length must be >= 1")
    distinct = len(set(observed))
    if n <= distinct and math.perm(distinct, n) > CANDIDATE_LIMIT:
        raise CandidateLimitExceeded(
            f"up to {math.perm(distinct, n)} candidate tuples; limit is {CANDIDATE_LIMIT}"
        )

    count = 0
    truth_tuple = tuple(truth) if truth is not None else None
    contains = False if truth_tuple is not None else None
    for candidate in iter_candidates(observed, n):
        count += 1
        if truth_tuple is not None and candidate == truth_tuple:
            contains = True
    return AttackReport(
        observed_trace=tuple(observed),
        n=n,
        candidate_count=count,
        contains_truth=contains,
        residual_bits=math.log2(count) if count > 0 else None,
    )
