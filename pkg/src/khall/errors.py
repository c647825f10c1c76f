from __future__ import annotations


class KhallError(Exception):
    code = "error"

    def __init__(self, message: str, context: dict | None = None, code: str | None = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}
        if code is not None:
            self.code = code

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "context": self.context}


class InputError(KhallError):
    code = "invalid_input"


class StructuralError(KhallError):
    """The polytope does not span, or the support is not of the required shape."""
    code = "structural_error"


class NonUniqueFace(KhallError):
    code = "non_unique_face"


class WindowExhausted(KhallError):
    code = "window_exhausted"


class PreconditionError(KhallError):
    code = "precondition_violation"


class RankIdentityFailure(KhallError):
    code = "rank_identity_failure"
