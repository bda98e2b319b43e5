"""Invariant subspaces of a set of operators: tests, fixpoints, Alg(F), enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import Matrix, RowSpace, _nullspace_rows
from .opspace import OperatorSpace, membership
from .subspace import Subspace, image, join_all, leq, meet_all, ortho_complement, preimage, projection_matrix

__all__ = [
    "GeneratorSet",
    "LatticePreconditionError",
    "is_invariant",
    "smallest_invariant_containing",
    "largest_invariant_within",
    "alg_of",
    "enumerate_coordinate_lat",
    "contains_diagonal",
]

MAX_ENUM_DIM = 16


class LatticePreconditionError(ValueError):
    """The coordinate enumeration does not apply to this generator set."""


@dataclass(frozen=True)
class GeneratorSet:
    ambient_dim: int
    generators: tuple[Matrix, ...]

    def __post_init__(self):
        n = self.ambient_dim
        for g in self.generators:
            if g.shape != (n, n):
                raise ValueError(f"generator of shape {g.shape} on C^{n}")

    @classmethod
    def of(cls, source: "GeneratorSet | OperatorSpace | Sequence[Matrix]", n: int | None = None) -> "GeneratorSet":
        if isinstance(source, GeneratorSet):
            return source
        if isinstance(source, OperatorSpace):
            if not source.is_square:
                raise ValueError("an operator space acts on a single space only when square")
            return cls(source.dim_h1, tuple(source.basis))
        gens = tuple(source)
        if n is None:
            if not gens:
                raise ValueError("ambient dimension needed for an empty generator list")
            n = gens[0].rows
        return cls(n, gens)

    def adjoint(self) -> "GeneratorSet":
        return GeneratorSet(self.ambient_dim, tuple(g.adjoint() for g in self.generators))

    def span(self) -> OperatorSpace:
        n = self.ambient_dim
        return OperatorSpace(n, n, self.generators)


def _check(g: GeneratorSet, w: Subspace) -> None:
    if g.ambient_dim != w.ambient_dim:
        raise ValueError(f"generators on C^{g.ambient_dim}, subspace in C^{w.ambient_dim}")


def is_invariant(w: Subspace, g) -> bool:
    """True iff T·w ⊆ w for every generator T."""
    g = GeneratorSet.of(g, w.ambient_dim)
    _check(g, w)
    if w.is_zero() or w.is_full():
        return True
    return all(leq(image(t, w), w) for t in g.generators)


def smallest_invariant_containing(g, w: Subspace) -> Subspace:
    """Least g-invariant subspace containing w (w ← w ∨ ⋁ T·w until stable)."""
    g = GeneratorSet.of(g, w.ambient_dim)
    _check(g, w)
    cur = w
    while not cur.is_full():
        nxt = join_all(cur.ambient_dim, [cur] + [image(t, cur) for t in g.generators])
        if nxt.dim == cur.dim:
            return cur
        cur = nxt
    return cur


def largest_invariant_within(g, w: Subspace) -> Subspace:
    """Greatest g-invariant subspace inside w (w ← w ∧ ⋀ T⁻¹(w) until stable)."""
    g = GeneratorSet.of(g, w.ambient_dim)
    _check(g, w)
    cur = w
    while not cur.is_zero():
        nxt = meet_all(cur.ambient_dim, [cur] + [preimage(t, cur) for t in g.generators])
        if nxt.dim == cur.dim:
            return cur
        cur = nxt
    return cur


def alg_of(family: Iterable[Subspace], n: int | None = None) -> OperatorSpace:
    """Alg(F) = {T : (I - P) T P = 0 for all P in F}."""
    family = list(family)
    if n is None:
        if not family:
            raise ValueError("ambient dimension needed for an empty family")
        n = family[0].ambient_dim
    rs = RowSpace(n * n)
    for p in family:
        if p.ambient_dim != n:
            raise ValueError("ambient mismatch in Alg(F)")
        if p.is_zero() or p.is_full():
            continue
        # (I - P) T P = 0  iff  <T b, c> = 0 for b in P, c in P^⊥
        perp = ortho_complement(p).basis
        for b in p.basis:
            for c in perp:
                row = [None] * (n * n)
                for j in range(n):
                    for i in range(n):
                        row[j * n + i] = c[i].conjugate() * b[j]
                rs.add(row)
    return OperatorSpace.from_vecs(n, n, _nullspace_rows(rs.rows, n * n))


def alg_of_projections(family: Iterable[Subspace], n: int) -> OperatorSpace:
    """Alg(F) via the projection matrices, (P^T ⊗ (I - P)) vec(T) = 0; used as a cross-check."""
    from .exact import kron

    rs = RowSpace(n * n)
    ident = Matrix.identity(n)
    for p in family:
        pm = projection_matrix(p)
        rs.extend(kron(pm.transpose(), ident - pm).to_rows())
    return OperatorSpace.from_vecs(n, n, _nullspace_rows(rs.rows, n * n))


def contains_diagonal(g) -> bool:
    """True iff span(g) contains every diagonal matrix unit E_ii."""
    g = GeneratorSet.of(g)
    span = g.span()
    n = g.ambient_dim
    return all(membership(Matrix.unit(n, n, i, i), span) for i in range(n))


def enumerate_coordinate_lat(g, max_dim: int = MAX_ENUM_DIM) -> list[Subspace]:
    """All g-invariant coordinate subspaces, ordered by coordinate bit mask.

    When span(g) contains the diagonal matrix units this is the whole of
    Lat(span g): each E_ii maps an invariant subspace into itself, so the
    subspace splits along the coordinate axes.
    """
    g = GeneratorSet.of(g)
    n = g.ambient_dim
    if n > max_dim:
        raise LatticePreconditionError(f"ambient dimension {n} exceeds enumeration cap {max_dim}")
    if not contains_diagonal(g):
        raise LatticePreconditionError("generator span does not contain the diagonal matrix units")
    # T leaves span{e_k : k in S} invariant iff T[i, j] = 0 for j in S, i not in S
    supports = []
    for t in g.generators:
        supports.append([(i, j) for i in range(n) for j in range(n) if t[i, j]])
    out = []
    for mask in range(1 << n):
        ok = True
        for sup in supports:
            for i, j in sup:
                if mask >> j & 1 and not mask >> i & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(Subspace.from_mask(n, mask))
    return out
