"""Shared error taxonomy.

Every error that can surface through the HTTP API carries a stable
machine-readable ``code`` (see ERROR_CODES) and an HTTP status. Library
callers catch the exception types; the API layer serializes them as
``{"code": ..., "message": ..., "details": {...}}``.
"""
from __future__ import annotations

from typing import Any


class HubError(Exception):
    """Base class for all modelhub errors."""

    code = "internal_error"
    http_status = 500

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_body(self) -> dict:
        body = {"code": self.code, "message": self.message}
        if self.details:
            body["details"] = _jsonable(self.details)
        return body


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class ValidationError(HubError):
    code = "validation_error"
    http_status = 422


class AuthRequiredError(HubError):
    code = "authorization_required"
    http_status = 401


class ForbiddenError(HubError):
    code = "forbidden"
    http_status = 403


class NotFoundError(HubError):
    code = "not_found"
    http_status = 404


class TrackFinalizedError(HubError):
    code = "track_finalized"
    http_status = 409


class NoRuntimeModelError(HubError):
    code = "no_runtime_model"
    http_status = 409


class PayloadTooLargeError(HubError):
    code = "payload_too_large"
    http_status = 413


class MalformedRequestError(HubError):
    code = "malformed_request"
    http_status = 400


class OnnxParseError(HubError):
    """Bytes do not decode as an ONNX protobuf model."""

    code = "onnx_parse_error"
    http_status = 422


class GraphInvalidError(HubError):
    """Model decoded but the graph violates structural requirements."""

    code = "onnx_graph_invalid"
    http_status = 422


class UnsupportedOpError(HubError):
    """Graph uses an operator outside the runtime's supported set."""

    code = "unsupported_op"
    http_status = 422


class ShapeError(HubError):
    """Tensor shapes incompatible during graph execution."""

    code = "shape_mismatch"
    http_status = 422


class PreprocessSpecError(HubError):
    """Declarative preprocessor spec is internally invalid."""

    code = "preprocessor_invalid"
    http_status = 422


class BlobCorruptionError(HubError):
    """Stored blob bytes no longer match their recorded content hash."""

    code = "blob_corrupt"
    http_status = 500


# Documented enum of machine-readable codes carried by 4xx/5xx bodies.
ERROR_CODES = sorted(
    cls.code
    for cls in [
        HubError,
        ValidationError,
        AuthRequiredError,
        ForbiddenError,
        NotFoundError,
        TrackFinalizedError,
        NoRuntimeModelError,
        PayloadTooLargeError,
        MalformedRequestError,
        OnnxParseError,
        GraphInvalidError,
        UnsupportedOpError,
        ShapeError,
        PreprocessSpecError,
        BlobCorruptionError,
    ]
)
