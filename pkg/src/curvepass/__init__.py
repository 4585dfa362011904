"""Curve-drawing graphical password scheme.

Users memorize an ordered set of pass-images; each login shows all catalog
images degraded and randomly arranged on a grid, and the user draws one
continuous curve from a random head image, across the pass-images in
order, to a random tail image.  Decoy crossings, trace erasure and a
trace-length tolerance make the drawing hard to shoulder-surf.
"""

from .analysis import (
    AttackReport,
    SpaceReport,
    observation_candidates,
    password_space,
    pin_space_ratio,
)
from .engine import (
    AuthEngine,
    ChallengeLayout,
    PasswordRecord,
    Reason,
    ValidationOutcome,
    ValidationPolicy,
    evaluate_trace,
    max_trace_length,
    relative_tolerance,
    validate_story,
)
from .errors import CurvepassError, OutOfBounds
from .grid import (
    Cell,
    CellTrace,
    GridSpec,
    cell_at,
    chain_min_length,
    chebyshev,
    discretize,
    trace_length,
)
from .images import (
    CatalogImage,
    DegradeParams,
    degrade,
    generate_synthetic_catalog,
    load_catalog,
    save_catalog,
)

__version__ = "0.1.0"

__all__ = [
    "AttackReport",
    "AuthEngine",
    "CatalogImage",
    "Cell",
    "CellTrace",
    "ChallengeLayout",
    "CurvepassError",
    "DegradeParams",
    "GridSpec",
    "OutOfBounds",
    "PasswordRecord",
    "Reason",
    "SpaceReport",
    "ValidationOutcome",
    "ValidationPolicy",
    "cell_at",
    "chain_min_length",
    "chebyshev",
    "degrade",
    "discretize",
    "evaluate_trace",
    "generate_synthetic_catalog",
    "load_catalog",
    "max_trace_length",
    "observation_candidates",
    "password_space",
    "pin_space_ratio",
    "relative_tolerance",
    "save_catalog",
    "trace_length",
    "validate_story",
]
