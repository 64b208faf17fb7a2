"""multipart/form-data parsing on top of the stdlib email parser.

The submission endpoint receives a model binary plus JSON parts in one
multipart body; this wraps the body in a synthetic MIME document so
email.parser does the boundary handling.
"""
from __future__ import annotations

import email.parser
import email.policy

from ..errors import MalformedRequestError, PayloadTooLargeError


def parse_multipart(content_type: str, body: bytes, part_limits: dict | None = None) -> dict:
    """Return {field_name: bytes}; enforces per-part byte limits when given."""
    if not content_type or "multipart/form-data" not in content_type.lower():
        raise MalformedRequestError(
            "expected a multipart/form-data request body",
            content_type=content_type or "",
        )
    header = f"Content-Type: {content_type}\r\nMIME-Version: 1.0\r\n\r\n"
    message = email.parser.BytesParser(policy=email.policy.HTTP).parsebytes(
        header.encode("ascii", "replace") + body
    )
    if not message.is_multipart():
        raise MalformedRequestError("could not parse multipart body (bad boundary?)")

    parts: dict = {}
    for part in message.iter_parts():
        disposition = part.get("Content-Disposition", "")
        name = part.get_param("name", header="content-disposition")
        if not name or "form-data" not in disposition:
            continue
        payload = part.get_payload(decode=True)
        if payload is None:
            payload = b""
        limit = (part_limits or {}).get(name)
        if limit is not None and len(payload) > limit:
            raise PayloadTooLargeError(
                f"part {name!r} exceeds its {limit} byte limit",
                part=name,
                limit_bytes=limit,
                actual_bytes=len(payload),
            )
        parts[name] = payload
    if not parts:
        raise MalformedRequestError("multipart body contains no form-data parts")
    return parts


def encode_multipart(fields: dict, boundary: str = "modelhub-boundary-7f3a1c") -> tuple[bytes, str]:
    """Inverse helper for tests and simple clients: {name: bytes|str} -> (body, content_type).

    Uses a fixed boundary; callers with payloads that could contain it should
    pass their own random boundary (full HTTP clients already do).
    """
    chunks = []
    for name, value in fields.items():
        data = value.encode("utf-8") if isinstance(value, str) else value
        chunks.append(
            (
                f"--{boundary}\r\n"
                f'Content-Disposition: form-data; name="{name}"; filename="{name}"\r\n'
                f"Content-Type: application/octet-stream\r\n\r\n"
            ).encode()
            + data
            + b"\r\n"
        )
    chunks.append(f"--{boundary}--\r\n".encode())
    return b"".join(chunks), f"multipart/form-data; boundary={boundary}"
