"""Bilattices of projection pairs attached to an operator space, and the Galois maps on them.

Notation follows the usual one: ``M`` is the operator space, ``A_M`` and
``B_M`` its right and left multiplier algebras.  ``Lat(B_M)^⊥`` is realised
as the invariant-subspace lattice of ``B_M*``.

``phi`` and ``theta`` are evaluated as largest-invariant-subspace fixpoints.
A join of invariant subspaces is invariant, and ``(P, Q)`` lies in BIL(M)
exactly when ``Q ⊥ M·P``, so the join over all admissible partners is the
largest invariant subspace inside that constraint subspace.  The literal
join over an enumerated lattice is kept as ``phi_by_join``/``theta_by_join``
for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exact import Matrix, RowSpace, _nullspace_rows, kron
from .invariant import (
    GeneratorSet,
    LatticePreconditionError,
    contains_diagonal,
    enumerate_coordinate_lat,
    is_invariant,
    largest_invariant_within,
    smallest_invariant_containing,
)
from .opspace import OperatorSpace, a_algebra, b_algebra
from .subspace import (
    ProjectionPair,
    Subspace,
    image,
    join_all,
    meet_all,
    ortho_complement,
    pair_join,
    pair_meet,
    preimage,
    projection_matrix,
)

__all__ = [
    "BilatticeContext",
    "FiniteBilattice",
    "DomainError",
    "in_BIL",
    "in_Bil",
    "phi",
    "theta",
    "phi_by_join",
    "theta_by_join",
    "psi1",
    "psi2",
    "enlarge",
    "op_of",
    "op_of_basis_pairs",
    "enumerate_bil",
    "enumerable_lattices",
]

PROVENANCE_DIAGONAL = "diagonal-enumeration"
PROVENANCE_SUPPLIED = "supplied-lattice"


class DomainError(ValueError):
    """A Galois map was evaluated outside its domain lattice."""


@dataclass(frozen=True)
class BilatticeContext:
    m: OperatorSpace
    a_alg: OperatorSpace
    b_alg: OperatorSpace
    b_star_gens: GeneratorSet

    def __post_init__(self):
        if self.a_alg != a_algebra(self.m):
            raise ValueError("a_alg is not the right multiplier algebra of m")
        if self.b_alg != b_algebra(self.m):
            raise ValueError("b_alg is not the left multiplier algebra of m")
        want = GeneratorSet(self.m.dim_h2, tuple(b.adjoint() for b in self.b_alg.basis))
        if self.b_star_gens != want:
            raise ValueError("b_star_gens must be the adjoints of the b_alg basis")

    @classmethod
    def from_space(cls, m: OperatorSpace) -> "BilatticeContext":
        a = a_algebra(m)
        b = b_algebra(m)
        ctx = object.__new__(cls)
        object.__setattr__(ctx, "m", m)
        object.__setattr__(ctx, "a_alg", a)
        object.__setattr__(ctx, "b_alg", b)
        object.__setattr__(ctx, "b_star_gens", GeneratorSet(m.dim_h2, tuple(x.adjoint() for x in b.basis)))
        return ctx

    @property
    def h1(self) -> int:
        return self.m.dim_h1

    @property
    def h2(self) -> int:
        return self.m.dim_h2

    @property
    def a_gens(self) -> GeneratorSet:
        return GeneratorSet(self.h1, tuple(self.a_alg.basis))

    def in_lat_a(self, p: Subspace) -> bool:
        return is_invariant(p, self.a_gens)

    def in_lat_b_perp(self, q: Subspace) -> bool:
        return is_invariant(q, self.b_star_gens)

    def bottom(self) -> ProjectionPair:
        return ProjectionPair(Subspace.zero(self.h1), Subspace.full(self.h2))

    def top(self) -> ProjectionPair:
        return ProjectionPair(Subspace.full(self.h1), Subspace.zero(self.h2))

    def zero_pair(self) -> ProjectionPair:
        return ProjectionPair(Subspace.zero(self.h1), Subspace.zero(self.h2))


def _check_pair(pair: ProjectionPair, ctx: BilatticeContext) -> None:
    if pair.dims != (ctx.h1, ctx.h2):
        raise ValueError(f"pair lives in C^{pair.dims[0]} x C^{pair.dims[1]}, context is C^{ctx.h1} x C^{ctx.h2}")


def in_BIL(pair: ProjectionPair, ctx: BilatticeContext) -> bool:
    """Q·T·P = 0 for every basis operator T of M."""
    _check_pair(pair, ctx)
    if pair.p.is_zero() or pair.q.is_zero():
        return True
    pm = projection_matrix(pair.p)
    qm = projection_matrix(pair.q)
    return all((qm @ t @ pm).is_zero() for t in ctx.m.basis)


def in_Bil(pair: ProjectionPair, ctx: BilatticeContext) -> bool:
    return in_BIL(pair, ctx) and ctx.in_lat_a(pair.p) and ctx.in_lat_b_perp(pair.q)


def _m_image(p: Subspace, ctx: BilatticeContext) -> Subspace:
    """M·P, the span of T·p over basis T and p in P."""
    return join_all(ctx.h2, (image(t, p) for t in ctx.m.basis))


def _m_preimage_of_perp(q: Subspace, ctx: BilatticeContext) -> Subspace:
    """{x : T·x ⊥ Q for every T in M}."""
    qperp = ortho_complement(q)
    return meet_all(ctx.h1, (preimage(t, qperp) for t in ctx.m.basis))


def phi(p: Subspace, ctx: BilatticeContext) -> Subspace:
    """Largest Q in Lat(B_M)^⊥ with (P, Q) in Bil(M)."""
    if p.ambient_dim != ctx.h1:
        raise ValueError("phi expects a subspace of H1")
    if not ctx.in_lat_a(p):
        raise DomainError(f"{p!r} is not invariant under A_M")
    return largest_invariant_within(ctx.b_star_gens, ortho_complement(_m_image(p, ctx)))


def theta(q: Subspace, ctx: BilatticeContext) -> Subspace:
    """Largest P in Lat(A_M) with (P, Q) in Bil(M)."""
    if q.ambient_dim != ctx.h2:
        raise ValueError("theta expects a subspace of H2")
    if not ctx.in_lat_b_perp(q):
        raise DomainError(f"{q!r} is not invariant under B_M*")
    return largest_invariant_within(ctx.a_gens, _m_preimage_of_perp(q, ctx))


def phi_by_join(p: Subspace, ctx: BilatticeContext, lat_b_perp: Iterable[Subspace]) -> Subspace:
    """The join of all enumerated Q with (P, Q) in Bil(M)."""
    return join_all(ctx.h2, (q for q in lat_b_perp if in_Bil(ProjectionPair(p, q), ctx)))


def theta_by_join(q: Subspace, ctx: BilatticeContext, lat_a: Iterable[Subspace]) -> Subspace:
    return join_all(ctx.h1, (p for p in lat_a if in_Bil(ProjectionPair(p, q), ctx)))


def _require_bil(pair: ProjectionPair, ctx: BilatticeContext) -> None:
    if not in_Bil(pair, ctx):
        raise DomainError(f"{pair!r} is not in Bil(M)")


def psi1(pair: ProjectionPair, ctx: BilatticeContext) -> ProjectionPair:
    """(θφ(P), φ(P)); the Q component is ignored."""
    _require_bil(pair, ctx)
    q = phi(pair.p, ctx)
    return ProjectionPair(theta(q, ctx), q)


def psi2(pair: ProjectionPair, ctx: BilatticeContext) -> ProjectionPair:
    """(θ(Q), φθ(Q)); the P component is ignored."""
    _require_bil(pair, ctx)
    p = theta(pair.q, ctx)
    return ProjectionPair(p, phi(p, ctx))


def enlarge(pair: ProjectionPair, ctx: BilatticeContext) -> ProjectionPair:
    """Smallest invariant enlargements: P' = closure of A_M·P, Q' = closure of B_M*·Q."""
    _check_pair(pair, ctx)
    if not in_BIL(pair, ctx):
        raise DomainError(f"{pair!r} is not in BIL(M)")
    return ProjectionPair(
        smallest_invariant_containing(ctx.a_gens, pair.p),
        smallest_invariant_containing(ctx.b_star_gens, pair.q),
    )


def op_of(pairs: Iterable[ProjectionPair], h1: int, h2: int) -> OperatorSpace:
    """Op(F) = {T : Q·T·P = 0 for all (P, Q) in F}, via (P^T ⊗ Q) vec(T) = 0."""
    n = h1 * h2
    rs = RowSpace(n)
    for pair in pairs:
        if pair.dims != (h1, h2):
            raise ValueError("ambient mismatch in Op(F)")
        if pair.p.is_zero() or pair.q.is_zero():
            continue
        block = kron(projection_matrix(pair.p).transpose(), projection_matrix(pair.q))
        for row in block.to_rows():
            if any(row):
                rs.add(row)
        if rs.dim == n:
            break
    return OperatorSpace.from_vecs(h1, h2, _nullspace_rows(rs.rows, n))


def op_of_basis_pairs(pairs: Iterable[ProjectionPair], h1: int, h2: int) -> OperatorSpace:
    """Op(F) from basis vectors: <T p, q> = 0 for p in P, q in Q.  Independent of projection matrices."""
    n = h1 * h2
    rs = RowSpace(n)
    for pair in pairs:
        for p in pair.p.basis:
            for q in pair.q.basis:
                row = [q[i].conjugate() * p[j] for j in range(h1) for i in range(h2)]
                rs.add(row)
    return OperatorSpace.from_vecs(h1, h2, _nullspace_rows(rs.rows, n))


@dataclass
class FiniteBilattice:
    context: BilatticeContext
    pairs: list[ProjectionPair]
    lat_a: list[Subspace]
    lat_b_perp: list[Subspace]
    provenance: str = PROVENANCE_DIAGONAL
    completeness_asserted: bool = False
    _index: dict = field(default=None, repr=False)

    @property
    def complete_by_proof(self) -> bool:
        return self.provenance == PROVENANCE_DIAGONAL

    def __contains__(self, pair: ProjectionPair) -> bool:
        if self._index is None:
            self._index = {(x.p, x.q) for x in self.pairs}
        return (pair.p, pair.q) in self._index

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def is_bilattice(self) -> bool:
        """Closed under pair join/meet and contains (0,0), (0,I), (I,0)."""
        ctx = self.context
        for special in (ctx.zero_pair(), ctx.bottom(), ctx.top()):
            if special not in self:
                return False
        for x in self.pairs:
            for y in self.pairs:
                if pair_join(x, y) not in self or pair_meet(x, y) not in self:
                    return False
        return True

    def op(self) -> OperatorSpace:
        return op_of(self.pairs, self.context.h1, self.context.h2)


def enumerable_lattices(ctx: BilatticeContext, max_enum_dim: int = 12):
    """Return (Lat(A_M), Lat(B_M)^⊥) when both are coordinate lattices, else None."""
    if ctx.h1 > max_enum_dim or ctx.h2 > max_enum_dim:
        return None
    if not (contains_diagonal(ctx.a_gens) and contains_diagonal(ctx.b_star_gens)):
        return None
    return (
        enumerate_coordinate_lat(ctx.a_gens, max_enum_dim),
        enumerate_coordinate_lat(ctx.b_star_gens, max_enum_dim),
    )


def validate_supplied(ctx: BilatticeContext, lat_a: Sequence[Subspace], lat_b_perp: Sequence[Subspace]) -> None:
    for p in lat_a:
        if p.ambient_dim != ctx.h1 or not ctx.in_lat_a(p):
            raise LatticePreconditionError(f"supplied {p!r} is not in Lat(A_M)")
    for q in lat_b_perp:
        if q.ambient_dim != ctx.h2 or not ctx.in_lat_b_perp(q):
            raise LatticePreconditionError(f"supplied {q!r} is not in Lat(B_M)^⊥")


def enumerate_bil(
    ctx: BilatticeContext,
    lat_a: Sequence[Subspace] | None = None,
    lat_b_perp: Sequence[Subspace] | None = None,
    max_enum_dim: int = 12,
) -> FiniteBilattice:
    """Materialise Bil(M) from enumerated or caller-supplied lattices."""
    if (lat_a is None) != (lat_b_perp is None):
        raise ValueError("supply both lattices or neither")
    if lat_a is None:
        lats = enumerable_lattices(ctx, max_enum_dim)
        if lats is None:
            raise LatticePreconditionError(
                "Bil(M) is not enumerable: A_M or B_M misses the diagonal (or dimension cap exceeded) "
                "and no lattices were supplied"
            )
        lat_a, lat_b_perp = lats
        provenance, asserted = PROVENANCE_DIAGONAL, False
    else:
        validate_supplied(ctx, lat_a, lat_b_perp)
        lat_a, lat_b_perp = _dedupe(lat_a), _dedupe(lat_b_perp)
        provenance, asserted = PROVENANCE_SUPPLIED, True
    pairs = [
        ProjectionPair(p, q)
        for p in lat_a
        for q in lat_b_perp
        if in_BIL(ProjectionPair(p, q), ctx)
    ]
    return FiniteBilattice(ctx, pairs, list(lat_a), list(lat_b_perp), provenance, asserted)


def _dedupe(xs: Sequence[Subspace]) -> list[Subspace]:
    seen = set()
    out = []
    for x in xs:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out
