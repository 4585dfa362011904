import time

import pytest

from curvepass.engine import AuthEngine, ChallengeLayout, ValidationPolicy
from curvepass.grid import Cell, CellTrace, GridSpec, chain_path
from curvepass.images import generate_synthetic_catalog

GRID_4X6 = GridSpec(4, 6, 600, 400)


@pytest.fixture(scope="session")
def catalog24():
    return generate_synthetic_catalog(24, seed=7)


@pytest.fixture
def policy():
    return ValidationPolicy(grid=GRID_4X6, n=5)


@pytest.fixture
def engine(catalog24, policy):
    return AuthEngine(catalog24, policy)


def manual_layout(
    grid,
    image_ids,
    pinned: dict[str, Cell],
    head: str,
    tail: str,
    issued_at: float | None = None,
    ttl: float = 3600.0,
    user_id: str = "alice",
):
    """Layout with chosen cells for some images, the rest filled in order."""
    taken = set(pinned.values())
    free_cells = [c for c in grid.cells() if c not in taken]
    placement = dict(pinned)
    for image_id, cell in zip((i for i in image_ids if i not in pinned), free_cells):
        placement[image_id] = cell
    return ChallengeLayout(
        challenge_id="manual",
        user_id=user_id,
        placement=placement,
        head_image=head,
        tail_image=tail,
        issued_at=time.time() if issued_at is None else issued_at,
        ttl=ttl,
    )


def minimal_trace(challenge, record) -> CellTrace:
    """Shortest king chain through head, pass-images in order, tail."""
    waypoints = [
        challenge.cell_of(challenge.head_image),
        *(challenge.cell_of(i) for i in record.pass_images),
        challenge.cell_of(challenge.tail_image),
    ]
    return CellTrace(tuple(chain_path(waypoints)))
