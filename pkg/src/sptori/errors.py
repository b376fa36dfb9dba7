"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI when it
emits JSON error records.
"""


class SptoriError(Exception):
    code = "error"

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self):
        out = {"error": self.code, "message": str(self)}
        if self.witness is not None:
            out["witness"] = repr(self.witness)
        return out


class SpecMismatchError(SptoriError):
    code = "spec-mismatch"


class UnsupportedForInfiniteGroup(SptoriError):
    code = "unsupported-for-infinite-group"


class GradingError(SptoriError):
    code = "grading-violation"


class InvalidCocycleError(SptoriError):
    code = "invalid-cocycle"


class NotAnInvolutionError(SptoriError):
    code = "not-an-involution"


class NoUnitError(SptoriError):
    code = "no-unit"


class NotDivisionError(SptoriError):
    code = "not-division"


class KindMismatchError(SptoriError):
    code = "kind-mismatch"


class ClosureFailureError(SptoriError):
    code = "closure-failure"


class NotLieError(SptoriError):
    code = "constructed-algebra-not-lie"


class DivisionFailureError(SptoriError):
    code = "division-failure"


class NotPeirceIdempotentError(SptoriError):
    code = "not-a-peirce-idempotent"


class NotATriangleError(SptoriError):
    code = "not-a-triangle"


class InternalInconsistencyError(SptoriError):
    code = "internal-inconsistency"


class NotCoordinatizableError(SptoriError):
    code = "not-coordinatizable"


class LemmaViolationError(SptoriError):
    code = "lemma-violation"


class TheoremViolationError(SptoriError):
    code = "theorem-violation"


class InconclusiveError(SptoriError):
    code = "inconclusive"


class ConfigError(SptoriError):
    code = "schema-violation"
