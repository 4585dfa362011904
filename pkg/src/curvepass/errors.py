"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the HTTP layer
and the CLI can report failures without string-matching messages.
"""


class CurvepassError(Exception):
    code = "error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class OutOfBounds(CurvepassError):
    code = "out_of_bounds"


class InvalidArgs(CurvepassError):
    code = "invalid_args"


# -- catalog -----------------------------------------------------------------

class CatalogError(CurvepassError):
    code = "catalog_error"


class MissingFile(CatalogError):
    code = "missing_file"


class MissingImages(CatalogError):
    code = "missing_images"


class DimensionMismatch(CatalogError):
    code = "dimension_mismatch"


class DuplicateId(CatalogError):
    code = "duplicate_id"


# -- enrollment / challenges -------------------------------------------------

class WrongCount(CurvepassError):
    code = "wrong_count"


class DuplicateImage(CurvepassError):
    code = "duplicate_image"


class UnknownImage(CurvepassError):
    code = "unknown_image"


class UnknownUser(CurvepassError):
    code = "unknown_user"


class AlreadyEnrolled(CurvepassError):
    code = "already_enrolled"


class UnknownChallenge(CurvepassError):
    code = "unknown_challenge"


class LockedOut(CurvepassError):
    code = "locked_out"


# -- analysis ----------------------------------------------------------------

class CandidateLimitExceeded(InvalidArgs):
    code = "candidate_limit_exceeded"
