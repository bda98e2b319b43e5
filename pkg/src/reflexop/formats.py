"""Text/JSON encodings for scalars, matrices, subspaces, operator spaces and problem files."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .exact import GaussianRational, Matrix, parse_scalar
from .opspace import OperatorSpace
from .reflexivity import SamplePlan
from .subspace import ProjectionPair, Subspace

__all__ = [
    "ProblemError",
    "ProblemFile",
    "parse_matrix",
    "parse_subspace",
    "load_problem",
    "parse_problem",
    "matrix_to_json",
    "subspace_to_json",
    "space_to_json",
    "pair_to_json",
    "dumps",
]


class ProblemError(ValueError):
    """Malformed problem input; ``where`` locates the offending item."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def scalar_to_json(x: GaussianRational) -> str:
    return str(x)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in m.row(i)] for i in range(m.rows)]


def subspace_to_json(s: Subspace) -> list[list[str]]:
    return [[str(x) for x in v] for v in s.basis]


def pair_to_json(p: ProjectionPair) -> dict:
    return {"p": subspace_to_json(p.p), "q": subspace_to_json(p.q)}


def space_to_json(m: OperatorSpace) -> dict:
    return {"h1": m.dim_h1, "h2": m.dim_h2, "dim": m.dim, "basis": [matrix_to_json(t) for t in m.basis]}


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _scalar(x, where: str) -> GaussianRational:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ProblemError(f"expected a scalar string, got {x!r}", where)
    try:
        return parse_scalar(str(x))
    except ValueError as exc:
        raise ProblemError(str(exc), where) from None


def parse_matrix(rows, n_rows: int, n_cols: int, where: str = "matrix") -> Matrix:
    if not isinstance(rows, list) or len(rows) != n_rows:
        raise ProblemError(f"expected {n_rows} rows", where)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_cols:
            raise ProblemError(f"expected {n_cols} entries", f"{where}[{i}]")
        out.append([_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix.from_rows(out)


_COORD_RE = re.compile(r"^e(\d+)(?:\+e(\d+))*$")


def parse_subspace(source, n: int, where: str = "subspace") -> Subspace:
    """A list of basis vectors, or one of ``zero``, ``full``, ``e2``, ``e1+e3`` (span of coordinates)."""
    if isinstance(source, str):
        text = source.strip().replace(" ", "")
        if text == "zero":
            return Subspace.zero(n)
        if text == "full":
            return Subspace.full(n)
        if _COORD_RE.match(text):
            idx = [int(t[1:]) - 1 for t in text.split("+")]
            if any(i < 0 or i >= n for i in idx):
                raise ProblemError(f"coordinate out of range for C^{n}: {source!r}", where)
            return Subspace.coordinate(n, idx)
        try:
            source = json.loads(text)
        except json.JSONDecodeError:
            raise ProblemError(f"unrecognised subspace {source!r}", where) from None
    if not isinstance(source, list):
        raise ProblemError("expected a list of basis vectors or a shorthand name", where)
    vectors = []
    for k, v in enumerate(source):
        if not isinstance(v, list) or len(v) != n:
            raise ProblemError(f"basis vector must have {n} entries", f"{where}[{k}]")
        vectors.append([_scalar(x, f"{where}[{k}][{j}]") for j, x in enumerate(v)])
    return Subspace(n, vectors)


@dataclass
class ProblemFile:
    h1: int
    h2: int
    space: OperatorSpace
    name: str = ""
    supplied_lat_a: list[Subspace] | None = None
    supplied_lat_b_perp: list[Subspace] | None = None
    plan: SamplePlan = field(default_factory=SamplePlan)

    @property
    def has_supplied_lattices(self) -> bool:
        return self.supplied_lat_a is not None

    def to_json(self) -> dict:
        out = {"h1": self.h1, "h2": self.h2, "basis": [matrix_to_json(t) for t in self.space.basis]}
        if self.name:
            out["name"] = self.name
        if self.supplied_lat_a is not None:
            out["supplied_lat_a"] = [subspace_to_json(s) for s in self.supplied_lat_a]
            out["supplied_lat_b_perp"] = [subspace_to_json(s) for s in self.supplied_lat_b_perp]
        return out


def _count(data: dict, key: str) -> int:
    v = data.get(key)
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ProblemError("expected a positive integer", key)
    return v


def parse_problem(data: Any) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemError("top level must be a JSON object")
    h1, h2 = _count(data, "h1"), _count(data, "h2")
    basis = data.get("basis", [])
    if not isinstance(basis, list):
        raise ProblemError("expected a list of matrices", "basis")
    mats = [parse_matrix(b, h2, h1, f"basis[{k}]") for k, b in enumerate(basis)]
    space = OperatorSpace(h1, h2, mats)
    lat_a = lat_b = None
    if "supplied_lat_a" in data or "supplied_lat_b_perp" in data:
        if "supplied_lat_a" not in data or "supplied_lat_b_perp" not in data:
            raise ProblemError("supply both supplied_lat_a and supplied_lat_b_perp")
        lat_a = [parse_subspace(s, h1, f"supplied_lat_a[{k}]") for k, s in enumerate(data["supplied_lat_a"])]
        lat_b = [parse_subspace(s, h2, f"supplied_lat_b_perp[{k}]") for k, s in enumerate(data["supplied_lat_b_perp"])]
    plan = SamplePlan()
    if "sample_plan" in data:
        sp = data["sample_plan"]
        if not isinstance(sp, dict):
            raise ProblemError("expected an object", "sample_plan")
        try:
            plan = SamplePlan(seed=int(sp.get("seed", 42)), random_count=int(sp.get("random_count", 100)))
        except (TypeError, ValueError) as exc:
            raise ProblemError(str(exc), "sample_plan") from None
    problem = ProblemFile(h1, h2, space, str(data.get("name", "")), lat_a, lat_b, plan)
    if lat_a is not None:
        _validate_lattices(problem)
    return problem


def _validate_lattices(problem: ProblemFile) -> None:
    from .bilattice import BilatticeContext, validate_supplied
    from .invariant import LatticePreconditionError

    ctx = BilatticeContext.from_space(problem.space)
    try:
        validate_supplied(ctx, problem.supplied_lat_a, problem.supplied_lat_b_perp)
    except LatticePreconditionError as exc:
        raise ProblemError(str(exc), "supplied lattices") from None


def load_problem(path: str | Path) -> ProblemFile:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    try:
        return parse_problem(data)
    except ProblemError as exc:
        raise ProblemError(str(exc), str(path)) from None
