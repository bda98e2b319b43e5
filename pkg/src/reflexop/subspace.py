"""Subspaces of C^n standing in for orthogonal projections, and pairs of them.

A :class:`Subspace` keeps its basis in reduced row echelon form (one basis
vector per row), so two subspaces are equal exactly when their stored bases
are equal.  The orthogonal projection onto it is derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    _nullspace_rows,
    as_vector,
    rref_rows,
    vconj,
)

__all__ = [
    "Subspace",
    "ProjectionPair",
    "join",
    "meet",
    "sum",
    "intersect",
    "ortho_complement",
    "leq",
    "image",
    "preimage",
    "projection_matrix",
    "pair_leq",
    "pair_join",
    "pair_meet",
]


class Subspace:
    __slots__ = ("ambient_dim", "basis", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vs = [as_vector(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in C^{ambient_dim}")
        red, _ = rref_rows(vs, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in red)
        self._hash = None

    @classmethod
    def _canonical(cls, ambient_dim: int, basis: Iterable[Vector]) -> "Subspace":
        s = object.__new__(cls)
        s.ambient_dim = ambient_dim
        s.basis = tuple(basis)
        s._hash = None
        return s

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls._canonical(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls._canonical(n, (_e(n, i) for i in range(n)))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given zero-based indices."""
        idx = sorted(set(indices))
        if idx and (idx[0] < 0 or idx[-1] >= n):
            raise ValueError(f"coordinate index out of range for C^{n}")
        return cls._canonical(n, (_e(n, i) for i in idx))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Subspace":
        return cls.coordinate(n, (i for i in range(n) if mask >> i & 1))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def coordinate_mask(self) -> int | None:
        """Bit mask of the coordinates if this is a coordinate subspace, else None."""
        mask = 0
        for v in self.basis:
            nz = [i for i, x in enumerate(v) if x]
            if len(nz) != 1:
                return None
            mask |= 1 << nz[0]
        return mask

    def contains_vector(self, v: Sequence) -> bool:
        v = as_vector(v)
        return _reduce_against(self.basis, v) is None

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __le__(self, other: "Subspace") -> bool:
        return leq(self, other)

    def __lt__(self, other: "Subspace") -> bool:
        return self != other and leq(self, other)

    def __ge__(self, other: "Subspace") -> bool:
        return leq(other, self)

    def __gt__(self, other: "Subspace") -> bool:
        return self != other and leq(other, self)

    def __or__(self, other: "Subspace") -> "Subspace":
        return join(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return meet(self, other)

    def __repr__(self):
        mask = self.coordinate_mask()
        if mask is not None:
            if mask == 0:
                return f"Subspace(zero in C^{self.ambient_dim})"
            names = "+".join(f"e{i + 1}" for i in range(self.ambient_dim) if mask >> i & 1)
            return f"Subspace({names} in C^{self.ambient_dim})"
        vs = "; ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(span[{vs}] in C^{self.ambient_dim})"


def _e(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def _reduce_against(basis: tuple[Vector, ...], v: Vector):
    """Reduce v by an RREF basis; None when v lies in the span."""
    w = list(v)
    for row in basis:
        p = next(k for k, x in enumerate(row) if x)
        f = w[p]
        if f:
            for k in range(p, len(w)):
                if row[k]:
                    w[k] = w[k] - f * row[k]
    return w if any(w) else None


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient mismatch: C^{u.ambient_dim} vs C^{v.ambient_dim}")


def join(u: Subspace, v: Subspace) -> Subspace:
    """u + v, the lattice join."""
    _check_ambient(u, v)
    if v.is_zero() or u.is_full():
        return u
    if u.is_zero() or v.is_full():
        return v
    red, _ = rref_rows(list(u.basis) + list(v.basis), u.ambient_dim)
    return Subspace._canonical(u.ambient_dim, (tuple(r) for r in red))


def join_all(n: int, subspaces: Iterable[Subspace]) -> Subspace:
    vs = []
    for s in subspaces:
        if s.ambient_dim != n:
            raise ValueError("ambient mismatch")
        vs.extend(s.basis)
    red, _ = rref_rows(vs, n)
    return Subspace._canonical(n, (tuple(r) for r in red))


def ortho_complement(u: Subspace) -> Subspace:
    """{x : <x, b> = 0 for every basis vector b}, with <x, b> = sum x_i conj(b_i)."""
    n = u.ambient_dim
    if u.is_zero():
        return Subspace.full(n)
    if u.is_full():
        return Subspace.zero(n)
    return Subspace._canonical(n, _nullspace_rows([vconj(b) for b in u.basis], n))


def meet(u: Subspace, v: Subspace) -> Subspace:
    """u ∩ v, the lattice meet."""
    _check_ambient(u, v)
    if u.is_zero() or v.is_full():
        return u
    if v.is_zero() or u.is_full():
        return v
    rows = [vconj(b) for b in ortho_complement(u).basis] + [vconj(b) for b in ortho_complement(v).basis]
    return Subspace._canonical(u.ambient_dim, _nullspace_rows(rows, u.ambient_dim))


def meet_all(n: int, subspaces: Iterable[Subspace]) -> Subspace:
    rows = []
    for s in subspaces:
        if s.ambient_dim != n:
            raise ValueError("ambient mismatch")
        rows.extend(vconj(b) for b in ortho_complement(s).basis)
    if not rows:
        return Subspace.full(n)
    return Subspace._canonical(n, _nullspace_rows(rows, n))


def leq(u: Subspace, v: Subspace) -> bool:
    """Containment u ⊆ v."""
    _check_ambient(u, v)
    if u.dim > v.dim:
        return False
    if v.is_full() or u.is_zero():
        return True
    return all(_reduce_against(v.basis, b) is None for b in u.basis)


def image(a: Matrix, u: Subspace) -> Subspace:
    """a·u, the span of the images of a basis of u."""
    if a.cols != u.ambient_dim:
        raise ValueError(f"shape mismatch: {a.shape} acting on C^{u.ambient_dim}")
    red, _ = rref_rows([a @ b for b in u.basis], a.rows)
    return Subspace._canonical(a.rows, (tuple(r) for r in red))


def preimage(a: Matrix, u: Subspace) -> Subspace:
    """{x : a·x ∈ u}."""
    if a.rows != u.ambient_dim:
        raise ValueError(f"shape mismatch: {a.shape} into C^{u.ambient_dim}")
    if u.is_full():
        return Subspace.full(a.cols)
    # a·x ∈ u  iff  <a·x, w> = 0 for every w in u^⊥
    rows = [vconj(w) for w in ortho_complement(u).basis]
    constraint = Matrix.from_rows(rows) @ a
    return Subspace._canonical(a.cols, _nullspace_rows(constraint.to_rows(), a.cols))


def projection_matrix(u: Subspace) -> Matrix:
    """Hermitian idempotent B (B^H B)^-1 B^H with range u."""
    n = u.ambient_dim
    if u.is_zero():
        return Matrix.zeros(n, n)
    if u.is_full():
        return Matrix.identity(n)
    b = Matrix.from_rows(u.basis).transpose()
    bh = b.adjoint()
    return b @ (bh @ b).inverse() @ bh


@dataclass(frozen=True)
class ProjectionPair:
    """A pair (P, Q) with P acting on H1 and Q on H2, ordered by ⪯."""

    p: Subspace
    q: Subspace

    @property
    def dims(self) -> tuple[int, int]:
        return (self.p.ambient_dim, self.q.ambient_dim)

    def __le__(self, other: "ProjectionPair") -> bool:
        return pair_leq(self, other)

    def __repr__(self):
        return f"ProjectionPair({self.p!r}, {self.q!r})"


def _check_pairs(a: ProjectionPair, b: ProjectionPair) -> None:
    if a.dims != b.dims:
        raise ValueError(f"pair ambient mismatch: {a.dims} vs {b.dims}")


def pair_leq(a: ProjectionPair, b: ProjectionPair) -> bool:
    """(P1,Q1) ⪯ (P2,Q2) iff P1 ≤ P2 and Q1 ≥ Q2."""
    _check_pairs(a, b)
    return leq(a.p, b.p) and leq(b.q, a.q)


def pair_join(a: ProjectionPair, b: ProjectionPair) -> ProjectionPair:
    _check_pairs(a, b)
    return ProjectionPair(join(a.p, b.p), meet(a.q, b.q))


def pair_meet(a: ProjectionPair, b: ProjectionPair) -> ProjectionPair:
    _check_pairs(a, b)
    return ProjectionPair(meet(a.p, b.p), join(a.q, b.q))


# lattice-vocabulary aliases; ``sum`` shadows the builtin in this module only
sum = join
intersect = meet
