"""Run reports: the JSON document every command writes to stdout.

Reports are deterministic for identical (input file, flags, seed): keys
keep insertion order, floats are written with ``repr`` precision (17
significant digits), and wall time is only included on request.
"""

import hashlib
import json
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from .core.space import Vector
from .holder.models import LpVector, MeasureSpace


def input_digest(raw: bytes) -> str:
    """SHA-256 of the problem-file bytes, prefixed with the algorithm."""
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def encode(value: Any) -> Any:
    """Convert results to JSON-ready data.

    Vectors become coordinate lists, complex numbers ``[re, im]`` pairs,
    enums their values and pydantic models their field dicts.
    """
    if isinstance(value, Vector):
        return encode(value.coords)
    if isinstance(value, LpVector):
        return encode(value.values)
    if isinstance(value, MeasureSpace):
        return encode(value.weights)
    if isinstance(value, BaseModel):
        return {name: encode(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, np.ndarray):
        return encode(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


class RunReport(BaseModel):
    """Echo of the invocation plus its results."""

    command: str
    arguments: Dict[str, Any] = Field(default_factory=dict)
    input: Optional[str] = None
    input_digest: Optional[str] = None
    seed: Optional[str] = None
    results: Dict[str, Any] = Field(default_factory=dict)
    flags: List[str] = Field(default_factory=list)
    wall_time: Optional[float] = None

    def to_json(self) -> str:
        data = encode(self)
        if data["wall_time"] is None:
            del data["wall_time"]
        return json.dumps(data, indent=2, allow_nan=False)


def format_seed(seed: int) -> str:
    return f"{seed:#x}"
