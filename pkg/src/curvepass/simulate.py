"""Scripted login runs driven through the HTTP endpoints.

The simulator enrolls nothing and trusts nothing about server internals: it
reads the challenge payload, plans a polyline through the required cells
(shortest king-move chain through head, pass-images in order, tail) and
submits it to POST /login exactly like an interactive client would.  An
optional jitter model perturbs the polyline vertices; it is a test
stimulus, not a model of human drawing.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import InvalidArgs
from .grid import Cell, GridSpec, cell_center, chain_path, discretize


@dataclass(frozen=True)
class SimSpec:
    runs: int = 100
    noise_model: str = "ideal"
    jitter_px: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise InvalidArgs("runs must be >= 1")
        if self.noise_model not in ("ideal", "jitter"):
            raise InvalidArgs("noise model must be 'ideal' or 'jitter'")
        if self.jitter_px < 0:
            raise InvalidArgs("jitter sigma must be >= 0")


def parse_noise(spec: str) -> tuple[str, float]:
    """Parse a noise flag: ``ideal`` or ``jitter:SIGMA`` (pixels)."""
    if spec == "ideal":
        return "ideal", 0.0
    if spec.startswith("jitter:"):
        return "jitter", float(spec.split(":", 1)[1])
    raise InvalidArgs(f"unknown noise model: {spec}")


def _layout_rng(seed: int, payload: dict) -> random.Random:
    """Run-local RNG keyed by the challenge layout, not arrival order.

    Parallel runs may receive challenges in any order; keying the jitter
    stream to the layout keeps aggregate results reproducible for a seed.
    """
    placement = ",".join(
        f"{e['image_id']}@{e['cell'][0]}:{e['cell'][1]}"
        for e in sorted(payload["placement"], key=lambda e: e["image_id"])
    )
    key = f"{seed}|{payload['head_image']}|{payload['tail_image']}|{placement}"
    digest = hashlib.sha256(key.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def plan_polyline(
    payload: dict,
    pass_images: list[str],
    grid: GridSpec,
    rng: random.Random | None = None,
    jitter_px: float = 0.0,
) -> list[tuple[float, float]]:
    """Polyline through head -> pass cells in order -> tail (cell centers)."""
    placement = {e["image_id"]: Cell(*e["cell"]) for e in payload["placement"]}
    waypoints = [
        placement[payload["head_image"]],
        *(placement[i] for i in pass_images),
        placement[payload["tail_image"]],
    ]
    points = [cell_center(c, grid) for c in chain_path(waypoints)]
    if jitter_px > 0 and rng is not None:
        points = [
            (
                min(max(x + rng.uniform(-jitter_px, jitter_px), 0.0), grid.canvas_width),
                min(max(y + rng.uniform(-jitter_px, jitter_px), 0.0), grid.canvas_height),
            )
            for x, y in points
        ]
    return points


def run_simulation(
    client,
    user_id: str,
    pass_images: list[str],
    spec: SimSpec,
    grid: GridSpec,
    parallel: int = 1,
) -> dict:
    """Issue challenges and submit synthesized logins; returns the tally.

    ``client`` is any httpx.Client-compatible object bound to the service.
    """

    def one_run(_index: int) -> tuple[bool, str, int]:
        resp = client.post(f"/users/{user_id}/challenge")
        resp.raise_for_status()
        payload = resp.json()
        rng = _layout_rng(spec.seed, payload)
        jitter = spec.jitter_px if spec.noise_model == "jitter" else 0.0
        polyline = plan_polyline(payload, pass_images, grid, rng, jitter)
        length = len(discretize(polyline, grid))
        login = client.post(
            "/login",
            json={
                "challenge_id": payload["challenge_id"],
                "polyline": [[x, y] for x, y in polyline],
                "canvas": {"width": grid.canvas_width, "height": grid.canvas_height},
            },
        )
        login.raise_for_status()
        body = login.json()
        return body["accepted"], body["reason"], length

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(one_run, range(spec.runs)))
    else:
        results = [one_run(i) for i in range(spec.runs)]

    lengths = [length for _, _, length in results]
    accepted = sum(1 for ok, _, _ in results if ok)
    reasons: dict[str, int] = {}
    for _, reason, _ in results:
        reasons[reason] = reasons.get(reason, 0) + 1
    return {
        "runs": spec.runs,
        "accepted": accepted,
        "accept_rate": accepted / spec.runs,
        "trace_length": {
            "mean": sum(lengths) / len(lengths),
            "min": min(lengths),
            "max": max(lengths),
        },
        "reasons": dict(sorted(reasons.items())),
    }
