"""Problem files: named vectors, subspaces and cones over one space.

Problem files are YAML documents (JSON is accepted as well, being a subset).
Matrices are row-major lists of rows, so a generator is a *column*. Complex
entries are written as ``[re, im]`` pairs.

Example (the line-versus-quadrants problem)::

    space: {dim: 2, field: real}
    cones:
      line: {parts: [[[1, -1], [-1, 1]]]}
      quadrants:
        parts:
          - [[1, 0], [0, 1]]
          - [[-1, 0], [0, -1]]
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, model_validator

from .cones.models import Cone, ConvexCone, UnionCone
from .core.errors import ParseError
from .core.space import ScalarField, Space, Vector, realify, realify_coords
from .holder.models import LpVector, MeasureSpace
from .subspaces.api import Subspace, orthonormalize

Entry = Union[float, Tuple[float, float]]
Matrix = List[List[Entry]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class SpaceSpec(_Strict):
    dim: PositiveInt
    field: ScalarField = ScalarField.REAL
    gram: Optional[Matrix] = None


class MeasureSpec(_Strict):
    weights: List[float] = Field(min_length=1)


class ConeSpec(_Strict):
    parts: List[Matrix] = Field(min_length=1)


def _to_array(data: Any, field: ScalarField, what: str) -> np.ndarray:
    """Nested lists of ``float | [re, im]`` to a numpy array."""
    def convert(item: Any) -> Any:
        if isinstance(item, tuple):
            return complex(item[0], item[1])
        if isinstance(item, list):
            return [convert(i) for i in item]
        return item

    arr = np.array(convert(data), dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what}: entries must be finite")
    if field == ScalarField.REAL:
        if np.any(arr.imag != 0):
            raise ValueError(f"{what}: complex entries in a real space")
        return arr.real
    return arr


def _shape_of(rows: Matrix, dim: int, what: str) -> int:
    if len(rows) != dim:
        raise ValueError(f"{what}: expected {dim} rows, got {len(rows)}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError(f"{what}: rows have different lengths")
    return widths.pop()


class ProblemFile(_Strict):
    """Validated contents of a problem file."""

    space: SpaceSpec
    measure: Optional[MeasureSpec] = None
    vectors: Dict[str, List[Entry]] = Field(default_factory=dict)
    subspaces: Dict[str, Matrix] = Field(default_factory=dict)
    cones: Dict[str, ConeSpec] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_consistency(self) -> "ProblemFile":
        dim, field = self.space.dim, self.space.field
        seen: Dict[str, str] = {}
        for kind, names in (("vector", self.vectors), ("subspace", self.subspaces), ("cone", self.cones)):
            for name in names:
                if name in seen:
                    raise ValueError(f"name '{name}' is used for a {seen[name]} and a {kind}")
                seen[name] = kind

        if self.space.gram is not None:
            _shape_of(self.space.gram, dim, "space.gram")
            _to_array(self.space.gram, field, "space.gram")
        for name, coords in self.vectors.items():
            if len(coords) != dim:
                raise ValueError(f"vector '{name}': expected {dim} entries, got {len(coords)}")
            _to_array(coords, field, f"vector '{name}'")
        for name, rows in self.subspaces.items():
            _shape_of(rows, dim, f"subspace '{name}'")
            _to_array(rows, field, f"subspace '{name}'")
        for name, cone in self.cones.items():
            for k, rows in enumerate(cone.parts):
                _shape_of(rows, dim, f"cone '{name}' part {k}")
                _to_array(rows, field, f"cone '{name}' part {k}")
        if self.measure is not None and len(self.measure.weights) != dim:
            raise ValueError(f"measure has {len(self.measure.weights)} weights but the space has dim {dim}")
        if self.measure is not None and min(self.measure.weights) <= 0.0:
            raise ValueError("measure weights must be positive")
        return self

    # -- lookups -----------------------------------------------------------

    def kind_of(self, name: str) -> Optional[str]:
        if name in self.vectors:
            return "vector"
        if name in self.subspaces:
            return "subspace"
        if name in self.cones:
            return "cone"
        return None

    def _require(self, name: str, kind: str) -> None:
        found = self.kind_of(name)
        if found is None:
            raise ParseError(f"unknown {kind} '{name}'")
        if found != kind:
            raise ParseError(f"'{name}' is a {found}, not a {kind}")

    def build_space(self) -> Space:
        gram = None
        if self.space.gram is not None:
            gram = _to_array(self.space.gram, self.space.field, "space.gram")
        return Space(dim=self.space.dim, field=self.space.field, gram=gram)

    def build_measure(self) -> MeasureSpace:
        if self.measure is None:
            raise ParseError("problem file has no 'measure' section")
        return MeasureSpace(weights=self.measure.weights)

    def vector(self, name: str, space: Optional[Space] = None) -> Vector:
        self._require(name, "vector")
        space = space or self.build_space()
        return Vector(space=space, coords=_to_array(self.vectors[name], self.space.field, name))

    def subspace(self, name: str, space: Optional[Space] = None) -> Subspace:
        self._require(name, "subspace")
        space = space or self.build_space()
        return orthonormalize(space, _to_array(self.subspaces[name], self.space.field, name))

    def cone(self, name: str, space: Optional[Space] = None) -> Cone:
        """Cone over ``space`` (default: the problem's space).

        Cones live in real spaces: over a complex problem space the generators
        are embedded into the real 2n-dimensional space of :func:`realify`.
        """
        self._require(name, "cone")
        embed = self.space.field == ScalarField.COMPLEX
        space = space or self.cone_space()
        parts = []
        for rows in self.cones[name].parts:
            gens = _to_array(rows, self.space.field, name)
            if embed:
                gens = realify_coords(gens)
            parts.append(ConvexCone(space=space, generators=gens))
        return parts[0] if len(parts) == 1 else UnionCone(parts=parts)

    def cone_space(self) -> Space:
        """The problem space, or its real embedding when it is complex."""
        return realify(self.build_space())

    def lp_vector(self, name: str, measure: MeasureSpace) -> LpVector:
        self._require(name, "vector")
        if self.space.field != ScalarField.REAL:
            raise ParseError("L^p data must be real-valued; the problem space is complex")
        return LpVector(measure=measure, values=_to_array(self.vectors[name], ScalarField.REAL, name))


def parse_problem(raw: Union[str, bytes], source: str = "<input>") -> ProblemFile:
    """Parse and validate problem-file text.

    Raises:
        ParseError: On YAML syntax errors, a non-mapping document, or any
            validation failure (unknown keys, bad shapes, non-finite numbers).
    """
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise ParseError(f"{source}: not valid YAML/JSON: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{source}: problem file must be a mapping with a 'space' section")
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"{source}: invalid problem file\n{e}") from e


def load_problem(path: Union[str, Path]) -> Tuple[ProblemFile, bytes]:
    """Read a problem file; returns the model and the raw bytes (for digests).

    Raises:
        ParseError: If the file is missing or invalid.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"Problem file not found: {path}")
    raw = path.read_bytes()
    return parse_problem(raw, source=str(path)), raw


def _encode_entries(arr: np.ndarray) -> Any:
    if np.iscomplexobj(arr):
        return np.stack([arr.real, arr.imag], axis=-1).tolist()
    return arr.tolist()


def export_problem(
    space: Space,
    vectors: Optional[Dict[str, Vector]] = None,
    cones: Optional[Dict[str, Cone]] = None,
    measure: Optional[MeasureSpace] = None,
    subspaces: Optional[Dict[str, Subspace]] = None,
) -> str:
    """Write objects back out as problem-file YAML.

    Used to print reproducible inputs for failed verification trials.
    Subspaces are written as their orthonormal bases, one column per vector.
    """
    doc: Dict[str, Any] = {"space": {"dim": space.dim, "field": space.field.value}}
    if space.gram is not None:
        doc["space"]["gram"] = _encode_entries(space.gram)
    if measure is not None:
        doc["measure"] = {"weights": measure.weights.tolist()}
    if vectors:
        doc["vectors"] = {name: _encode_entries(v.coords) for name, v in vectors.items()}
    if subspaces:
        doc["subspaces"] = {name: _encode_entries(s.basis) for name, s in subspaces.items()}
    if cones:
        doc["cones"] = {}
        for name, cone in cones.items():
            parts = cone.parts if isinstance(cone, UnionCone) else [cone]
            doc["cones"][name] = {"parts": [p.generators.tolist() for p in parts]}
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
