"""Protobuf wire-format primitives.

Just enough of the encoding to read and write the ONNX message subset this
package uses: varints, the four live wire types, length-delimited submessages
and packed repeated numerics. Unknown fields are skipped on read so models
produced by full ONNX exporters still decode.
"""
from __future__ import annotations

import struct

from ..errors import OnnxParseError

WT_VARINT = 0
WT_I64 = 1
WT_LEN = 2
WT_I32 = 5


def read_varint(buf: bytes, pos: int) -> tuple[int, int]:
    result = 0
    shift = 0
    while True:
        if pos >= len(buf):
            raise OnnxParseError("truncated varint")
        b = buf[pos]
        pos += 1
        result |= (b & 0x7F) << shift
        if not b & 0x80:
            return result, pos
        shift += 7
        if shift > 63:
            raise OnnxParseError("varint longer than 64 bits")


def read_tag(buf: bytes, pos: int) -> tuple[int, int, int]:
    key, pos = read_varint(buf, pos)
    field, wtype = key >> 3, key & 0x7
    if field == 0:
        raise OnnxParseError("field number 0 is invalid")
    return field, wtype, pos


def read_value(buf: bytes, pos: int, wtype: int):
    """Read one field payload; returns (int | bytes, new_pos)."""
    if wtype == WT_VARINT:
        return read_varint(buf, pos)
    if wtype == WT_I64:
        if pos + 8 > len(buf):
            raise OnnxParseError("truncated 64-bit field")
        return int.from_bytes(buf[pos : pos + 8], "little"), pos + 8
    if wtype == WT_LEN:
        size, pos = read_varint(buf, pos)
        if pos + size > len(buf):
            raise OnnxParseError("length-delimited field overruns buffer")
        return buf[pos : pos + size], pos + size
    if wtype == WT_I32:
        if pos + 4 > len(buf):
            raise OnnxParseError("truncated 32-bit field")
        return int.from_bytes(buf[pos : pos + 4], "little"), pos + 4
    raise OnnxParseError(f"unsupported wire type {wtype}")


def iter_fields(buf: bytes):
    """Yield (field_number, wire_type, value) over a message buffer."""
    pos = 0
    while pos < len(buf):
        field, wtype, pos = read_tag(buf, pos)
        value, pos = read_value(buf, pos, wtype)
        yield field, wtype, value


def zigzag_to_int(v: int) -> int:
    return (v >> 1) ^ -(v & 1)


def u64_to_int64(v: int) -> int:
    return v - (1 << 64) if v >= 1 << 63 else v


def decode_packed_varints(data: bytes) -> list[int]:
    out = []
    pos = 0
    while pos < len(data):
        v, pos = read_varint(data, pos)
        out.append(u64_to_int64(v))
    return out


def decode_packed_f32(data: bytes) -> list[float]:
    if len(data) % 4:
        raise OnnxParseError("packed float payload not a multiple of 4 bytes")
    return list(struct.unpack(f"<{len(data) // 4}f", data))


def decode_packed_f64(data: bytes) -> list[float]:
    if len(data) % 8:
        raise OnnxParseError("packed double payload not a multiple of 8 bytes")
    return list(struct.unpack(f"<{len(data) // 8}d", data))


# --- encoding ---------------------------------------------------------------


def varint(v: int) -> bytes:
    if v < 0:
        v += 1 << 64  # two's complement, protobuf encodes negatives as 10 bytes
    out = bytearray()
    while True:
        b = v & 0x7F
        v >>= 7
        if v:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def tag(field: int, wtype: int) -> bytes:
    return varint((field << 3) | wtype)


def field_varint(field: int, v: int) -> bytes:
    return tag(field, WT_VARINT) + varint(v)


def field_len(field: int, payload: bytes) -> bytes:
    return tag(field, WT_LEN) + varint(len(payload)) + payload


def field_string(field: int, s: str) -> bytes:
    return field_len(field, s.encode("utf-8"))


def field_f32(field: int, v: float) -> bytes:
    return tag(field, WT_I32) + struct.pack("<f", v)


def packed_varints(field: int, values) -> bytes:
    payload = b"".join(varint(v) for v in values)
    return field_len(field, payload)


def packed_f32(field: int, values) -> bytes:
    return field_len(field, struct.pack(f"<{len(values)}f", *values))


def packed_f64(field: int, values) -> bytes:
    return field_len(field, struct.pack(f"<{len(values)}d", *values))
