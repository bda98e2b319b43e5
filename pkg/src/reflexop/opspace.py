"""Linear spaces of operators H1 -> H2 and the algebras attached to them.

An :class:`OperatorSpace` stores the reduced row echelon form of the
column-stacked (``vec``) basis matrices; matrices have shape ``h2 x h1``.
The trace pairing ``tr(C A*)`` equals the standard inner product of
``vec(C)`` and ``vec(A)``, so annihilators are ordinary orthogonal
complements in ``C^(h1*h2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exact import (
    Matrix,
    RowSpace,
    Vector,
    _nullspace_rows,
    kron,
    rref_rows,
    unvec,
    vconj,
    vec,
)

__all__ = [
    "OperatorSpace",
    "membership",
    "adjoint_space",
    "product_span",
    "preannihilator",
    "annihilator",
    "a_algebra",
    "b_algebra",
    "commutant",
    "is_algebra",
    "check_prop23",
    "Prop23Report",
]


class OperatorSpace:
    __slots__ = ("dim_h1", "dim_h2", "vec_basis", "_matrices", "_hash")

    def __init__(self, dim_h1: int, dim_h2: int, matrices: Iterable[Matrix] = ()):
        vs = []
        for m in matrices:
            if m.shape != (dim_h2, dim_h1):
                raise ValueError(f"basis matrix of shape {m.shape}, expected {(dim_h2, dim_h1)}")
            vs.append(vec(m))
        red, _ = rref_rows(vs, dim_h1 * dim_h2)
        self._init(dim_h1, dim_h2, tuple(tuple(r) for r in red))

    def _init(self, h1, h2, vec_basis):
        self.dim_h1 = h1
        self.dim_h2 = h2
        self.vec_basis: tuple[Vector, ...] = vec_basis
        self._matrices = None
        self._hash = None

    @classmethod
    def from_vecs(cls, dim_h1: int, dim_h2: int, vectors: Iterable[Sequence]) -> "OperatorSpace":
        red, _ = rref_rows(list(vectors), dim_h1 * dim_h2)
        s = object.__new__(cls)
        s._init(dim_h1, dim_h2, tuple(tuple(r) for r in red))
        return s

    @classmethod
    def zero(cls, dim_h1: int, dim_h2: int) -> "OperatorSpace":
        return cls.from_vecs(dim_h1, dim_h2, ())

    @classmethod
    def full(cls, dim_h1: int, dim_h2: int) -> "OperatorSpace":
        return cls(dim_h1, dim_h2, (Matrix.unit(dim_h2, dim_h1, i, j) for i in range(dim_h2) for j in range(dim_h1)))

    @classmethod
    def scalars(cls, n: int) -> "OperatorSpace":
        return cls(n, n, [Matrix.identity(n)])

    @classmethod
    def diagonal(cls, n: int) -> "OperatorSpace":
        return cls(n, n, (Matrix.unit(n, n, i, i) for i in range(n)))

    @classmethod
    def pattern(cls, n1: int, n2: int, cells: Iterable[tuple[int, int]]) -> "OperatorSpace":
        """Span of the matrix units at the given zero-based (row, col) cells."""
        return cls(n1, n2, (Matrix.unit(n2, n1, i, j) for i, j in cells))

    @property
    def shape(self) -> tuple[int, int]:
        """Shape (h2, h1) of the member matrices."""
        return (self.dim_h2, self.dim_h1)

    @property
    def dim(self) -> int:
        return len(self.vec_basis)

    @property
    def is_square(self) -> bool:
        return self.dim_h1 == self.dim_h2

    @property
    def basis(self) -> tuple[Matrix, ...]:
        if self._matrices is None:
            self._matrices = tuple(unvec(v, self.dim_h2, self.dim_h1) for v in self.vec_basis)
        return self._matrices

    def __contains__(self, t: Matrix) -> bool:
        return membership(t, self)

    def __le__(self, other: "OperatorSpace") -> bool:
        _check_same_context(self, other)
        return all(membership(t, other) for t in self.basis)

    def __eq__(self, other):
        if not isinstance(other, OperatorSpace):
            return NotImplemented
        return self.shape == other.shape and self.vec_basis == other.vec_basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim_h1, self.dim_h2, self.vec_basis))
        return self._hash

    def __repr__(self):
        return f"OperatorSpace(h1={self.dim_h1}, h2={self.dim_h2}, dim={self.dim})"


def _check_same_context(u: OperatorSpace, v: OperatorSpace) -> None:
    if u.shape != v.shape:
        raise ValueError(f"operator space shapes differ: {u.shape} vs {v.shape}")


def _reduce(basis: tuple[Vector, ...], v: Sequence) -> list:
    w = list(v)
    for row in basis:
        p = next(k for k, x in enumerate(row) if x)
        f = w[p]
        if f:
            for k in range(p, len(w)):
                if row[k]:
                    w[k] = w[k] - f * row[k]
    return w


def membership(t: Matrix, m: OperatorSpace) -> bool:
    if t.shape != m.shape:
        raise ValueError(f"matrix of shape {t.shape} tested against space of shape {m.shape}")
    return not any(_reduce(m.vec_basis, vec(t)))


def join_spaces(u: OperatorSpace, v: OperatorSpace) -> OperatorSpace:
    _check_same_context(u, v)
    return OperatorSpace.from_vecs(u.dim_h1, u.dim_h2, list(u.vec_basis) + list(v.vec_basis))


def complement_basis(ref: OperatorSpace, m: OperatorSpace) -> list[Matrix]:
    """Basis vectors of ``ref`` (in canonical order) that extend a basis of ``m`` to one of ``ref``."""
    _check_same_context(ref, m)
    rs = RowSpace(m.dim_h1 * m.dim_h2)
    rs.extend(m.vec_basis)
    out = []
    for v, t in zip(ref.vec_basis, ref.basis):
        if rs.add(v):
            out.append(t)
    return out


def _vec_complement(m: OperatorSpace) -> list[Vector]:
    """Basis of the orthogonal complement of vec(M) inside C^(h1*h2)."""
    n = m.dim_h1 * m.dim_h2
    return _nullspace_rows([vconj(v) for v in m.vec_basis], n)


def adjoint_space(m: OperatorSpace) -> OperatorSpace:
    """M* = {T* : T in M}, a space of operators H2 -> H1."""
    return OperatorSpace(m.dim_h2, m.dim_h1, (t.adjoint() for t in m.basis))


def product_span(u: OperatorSpace, v: OperatorSpace) -> OperatorSpace:
    """Span of all products T·S with T in u and S in v."""
    if u.dim_h1 != v.dim_h2:
        raise ValueError(f"cannot compose {u.shape} after {v.shape}")
    rs = RowSpace(v.dim_h1 * u.dim_h2)
    full = v.dim_h1 * u.dim_h2
    for t in u.basis:
        for s in v.basis:
            rs.add(vec(t @ s))
            if rs.dim == full:
                break
        if rs.dim == full:
            break
    return OperatorSpace.from_vecs(v.dim_h1, u.dim_h2, rs.rows)


def _require_square(m: OperatorSpace, what: str) -> None:
    if not m.is_square:
        raise ValueError(f"{what} needs a square context, got {m.shape}")


def preannihilator(m: OperatorSpace) -> OperatorSpace:
    """M_⊥ = {C : tr(C A*) = 0 for all A in M}."""
    _require_square(m, "preannihilator")
    return OperatorSpace.from_vecs(m.dim_h1, m.dim_h2, _vec_complement(m))


def annihilator(v: OperatorSpace) -> OperatorSpace:
    """V^⊥ = {A : tr(C A*) = 0 for all C in V}."""
    _require_square(v, "annihilator")
    return OperatorSpace.from_vecs(v.dim_h1, v.dim_h2, _vec_complement(v))


def _solve_module_condition(m: OperatorSpace, blocks: Iterable[Matrix], n: int) -> OperatorSpace:
    """Solution space of vec(X) under "block·vec(X) ∈ vec(M)" for every block."""
    comp = [vconj(w) for w in _vec_complement(m)]
    if not comp:
        return OperatorSpace.full(n, n)
    wmat = Matrix.from_rows(comp)
    rs = RowSpace(n * n)
    for k in blocks:
        for row in (wmat @ k).to_rows():
            rs.add(row)
            if rs.dim == n * n:
                return OperatorSpace.zero(n, n)
    return OperatorSpace.from_vecs(n, n, _nullspace_rows(rs.rows, n * n))


def a_algebra(m: OperatorSpace) -> OperatorSpace:
    """A_M = {A in B(H1) : T·A in M for all T in M}, via vec(T·A) = (I ⊗ T) vec(A)."""
    n = m.dim_h1
    ident = Matrix.identity(n)
    return _solve_module_condition(m, (kron(ident, t) for t in m.basis), n)


def b_algebra(m: OperatorSpace) -> OperatorSpace:
    """B_M = {B in B(H2) : B·T in M for all T in M}, via vec(B·T) = (T^T ⊗ I) vec(B)."""
    n = m.dim_h2
    ident = Matrix.identity(n)
    return _solve_module_condition(m, (kron(t.transpose(), ident) for t in m.basis), n)


def commutant(m: OperatorSpace) -> OperatorSpace:
    """{X : X·T = T·X for every T in M}."""
    _require_square(m, "commutant")
    n = m.dim_h1
    ident = Matrix.identity(n)
    rs = RowSpace(n * n)
    for t in m.basis:
        rs.extend((kron(ident, t) - kron(t.transpose(), ident)).to_rows())
    return OperatorSpace.from_vecs(n, n, _nullspace_rows(rs.rows, n * n))


def is_algebra(a: OperatorSpace) -> bool:
    """Contains the identity and is closed under products of basis elements."""
    if not a.is_square:
        return False
    if not membership(Matrix.identity(a.dim_h1), a):
        return False
    return all(membership(x @ y, a) for x in a.basis for y in a.basis)


def is_selfadjoint(m: OperatorSpace) -> bool:
    return adjoint_space(m) == m


@dataclass
class Prop23Report:
    adjoint_identity: bool
    annihilator_identity_a: bool | None
    annihilator_identity_b: bool | None
    annihilator_identity_b_as_printed: bool | None
    selfadjoint: bool | None
    c_star: bool | None
    reflexive: bool | None
    von_neumann: bool | None
    notes: list[str] = field(default_factory=list)

    @property
    def annihilator_identities(self) -> bool | None:
        if self.annihilator_identity_a is None:
            return None
        return self.annihilator_identity_a and self.annihilator_identity_b

    def failures(self) -> list[str]:
        fields = {
            "adjoint_identity": self.adjoint_identity,
            "annihilator_identity_a": self.annihilator_identity_a,
            "annihilator_identity_b": self.annihilator_identity_b,
            "c_star": self.c_star,
            "von_neumann": self.von_neumann,
        }
        return [k for k, v in fields.items() if v is False]

    def to_dict(self) -> dict:
        return {
            "adjoint_identity": self.adjoint_identity,
            "annihilator_identity_a": self.annihilator_identity_a,
            "annihilator_identity_b": self.annihilator_identity_b,
            "annihilator_identity_b_as_printed": self.annihilator_identity_b_as_printed,
            "selfadjoint": self.selfadjoint,
            "c_star": self.c_star,
            "reflexive": self.reflexive,
            "von_neumann": self.von_neumann,
            "notes": list(self.notes),
        }


def check_prop23(m: OperatorSpace, reflexive: bool | None = None) -> Prop23Report:
    """Check the four module identities for a space of operators on one Hilbert space.

    Part (i) is checked for any shape.  Parts (ii)-(iv) need ``h1 == h2``;
    for non-square input they are reported as ``None``.  ``reflexive`` may be
    passed in to avoid recomputing the verdict; when omitted and ``M`` is
    selfadjoint it is decided here.
    """
    a_m = a_algebra(m)
    adjoint_ok = adjoint_space(a_m) == b_algebra(adjoint_space(m))
    if not m.is_square:
        return Prop23Report(adjoint_ok, None, None, None, None, None, None, None,
                            ["non-square context: parts (ii)-(iv) not applicable"])
    b_m = b_algebra(m)
    m_star = adjoint_space(m)
    m_perp = preannihilator(m)
    ann_a = a_m == annihilator(product_span(m_star, m_perp))
    # B·T ∈ M for all T  iff  tr(C T* B*) = 0 for C in M_⊥, i.e. B ∈ (M_⊥ M*)^⊥
    ann_b = b_m == annihilator(product_span(m_perp, m_star))
    ann_b_printed = b_m == annihilator(product_span(m, m_perp))
    notes = ["σ-weak closedness is automatic in finite dimension"]
    if not ann_b_printed:
        notes.append("B_M differs from (M M_⊥)^⊥; the identity that holds is B_M = (M_⊥ M*)^⊥")
    sa = is_selfadjoint(m)
    c_star = von_neumann = None
    if not sa:
        notes.append("M not selfadjoint: C*/von Neumann parts skipped")
    else:
        c_star = a_m == b_m and is_selfadjoint(a_m) and is_algebra(a_m)
        if reflexive is None:
            from .reflexivity import decide_reflexive

            reflexive = decide_reflexive(m).is_reflexive
        if reflexive:
            von_neumann = c_star and commutant(commutant(a_m)) == a_m
        else:
            notes.append("reflexivity not established: von Neumann part skipped")
    return Prop23Report(adjoint_ok, ann_a, ann_b, ann_b_printed, sa, c_star, reflexive, von_neumann, notes)
