"""Tensor carrier for the interpreter: dtype-checked numpy wrapper."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

DTYPE_NAMES = {
    np.dtype("float32"): "f32",
    np.dtype("float64"): "f64",
    np.dtype("int64"): "i64",
}
NUMPY_DTYPES = {name: dt for dt, name in DTYPE_NAMES.items()}


@dataclass(frozen=True)
class TensorValue:
    """Row-major tensor; data lives in a C-contiguous numpy array."""

    array: np.ndarray

    def __post_init__(self):
        if self.array.dtype not in DTYPE_NAMES:
            raise ValidationError(
                f"unsupported tensor element type {self.array.dtype}"
            )
        if not self.array.flags["C_CONTIGUOUS"]:
            object.__setattr__(self, "array", np.ascontiguousarray(self.array))

    @property
    def dtype(self) -> str:
        return DTYPE_NAMES[self.array.dtype]

    @property
    def shape(self) -> tuple:
        return tuple(self.array.shape)

    @classmethod
    def from_list(cls, values, dtype: str = "f32") -> "TensorValue":
        return cls(np.asarray(values, dtype=NUMPY_DTYPES[dtype]))

    def to_list(self) -> list:
        return self.array.tolist()
