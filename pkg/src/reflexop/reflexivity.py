"""Reflexive covers and the reflexivity decision procedure.

Two routes to Ref(M):

* exact, when Bil(M) can be materialised: Ref(M) = Op(BIL(M)) = Op(Bil(M));
* sampling, otherwise: intersect the linear conditions "S·x ∈ M·x" over a
  deterministic stream of vectors x.  This only ever over-approximates
  Ref(M), so it can certify reflexivity by a dimension count but never
  non-reflexivity.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bilattice import (
    BilatticeContext,
    FiniteBilattice,
    enumerable_lattices,
    enumerate_bil,
    op_of,
    phi,
    psi1,
    theta,
)
from .exact import ONE, ZERO, GaussianRational, Matrix, RowSpace, Vector, _nullspace_rows, as_vector
from .invariant import alg_of, is_invariant
from .opspace import OperatorSpace, a_algebra, complement_basis, membership
from .subspace import ProjectionPair, Subspace, ortho_complement

__all__ = [
    "SamplePlan",
    "Verdict",
    "MembershipResult",
    "REFLEXIVE_EXACT",
    "NON_REFLEXIVE_EXACT",
    "REFLEXIVE_BY_DIM",
    "INCONCLUSIVE",
    "ref_constraints_at",
    "ref_upper_bound",
    "ref_membership",
    "decide_reflexive",
    "theorem_check",
    "remark11_check",
]

REFLEXIVE_EXACT = "ReflexiveExact"
NON_REFLEXIVE_EXACT = "NonReflexiveExact"
REFLEXIVE_BY_DIM = "ReflexiveCertifiedByDim"
INCONCLUSIVE = "InconclusiveUpperBound"

STRUCTURED_ALL = frozenset({"basis", "sums", "mixes", "custom"})


@dataclass(frozen=True)
class SamplePlan:
    seed: int = 42
    random_count: int = 100
    structured: frozenset = STRUCTURED_ALL
    custom: tuple = ()
    bound: int = 7

    def __post_init__(self):
        if self.random_count < 0:
            raise ValueError("random_count must be non-negative")
        unknown = set(self.structured) - STRUCTURED_ALL
        if unknown:
            raise ValueError(f"unknown structured sample families: {sorted(unknown)}")

    @classmethod
    def structured_only(cls) -> "SamplePlan":
        return cls(random_count=0)

    def vectors(self, n: int) -> list[Vector]:
        """The deterministic sample stream for C^n."""
        out: list[Vector] = []
        e = [tuple(ONE if k == i else ZERO for k in range(n)) for i in range(n)]
        if "basis" in self.structured:
            out.extend(e)
        if "sums" in self.structured:
            out.extend(_add(e[i], e[j]) for i in range(n) for j in range(i + 1, n))
        if "mixes" in self.structured:
            iu = GaussianRational(0, 1)
            out.extend(
                _add(e[i], tuple(iu * x for x in e[j])) for i in range(n) for j in range(n) if i != j
            )
        if "custom" in self.structured:
            for v in self.custom:
                v = as_vector(v)
                if len(v) == n:
                    out.append(v)
        rng = random.Random(self.seed)
        b = self.bound
        for _ in range(self.random_count):
            out.append(tuple(
                GaussianRational(Fraction(rng.randint(-b, b), rng.randint(1, b)),
                                 Fraction(rng.randint(-b, b), rng.randint(1, b)))
                for _ in range(n)
            ))
        return out

    def to_dict(self) -> dict:
        return {"seed": self.seed, "random_count": self.random_count,
                "structured": sorted(self.structured), "custom_count": len(self.custom)}


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def _orbit(x: Vector, m: OperatorSpace) -> Subspace:
    """M·x as a subspace of H2."""
    return Subspace(m.dim_h2, (t @ x for t in m.basis))


def ref_constraints_at(x: Sequence, m: OperatorSpace) -> list[Vector]:
    """Rows r with r·vec(S) = 0 iff S·x ∈ M·x.

    These are the nonzero rows of <S x, w> = 0 for w running over a basis of
    (M·x)^⊥, which span the same conditions as C_x·S·x = 0 with C_x the
    projection onto (M·x)^⊥.
    """
    x = as_vector(x)
    if len(x) != m.dim_h1:
        raise ValueError(f"sample vector of length {len(x)} for H1 = C^{m.dim_h1}")
    if not any(x):
        return []
    h1, h2 = m.dim_h1, m.dim_h2
    rows = []
    for w in ortho_complement(_orbit(x, m)).basis:
        row = tuple(w[i].conjugate() * x[j] for j in range(h1) for i in range(h2))
        if any(row):
            rows.append(row)
    return rows


def _constraint_rows(m: OperatorSpace, vectors: Sequence[Vector]) -> list[list]:
    target = m.dim_h1 * m.dim_h2 - m.dim
    rs = RowSpace(m.dim_h1 * m.dim_h2)
    for x in vectors:
        if rs.dim == target:
            break
        rs.extend(ref_constraints_at(x, m))
    return rs.rows


def _split(seq: list, parts: int) -> list[list]:
    k, r = divmod(len(seq), parts)
    out, start = [], 0
    for i in range(parts):
        end = start + k + (1 if i < r else 0)
        out.append(seq[start:end])
        start = end
    return [c for c in out if c]


def ref_upper_bound(m: OperatorSpace, plan: SamplePlan | None = None, workers: int = 1) -> OperatorSpace:
    """Intersection over the sample stream of {S : S·x ∈ M·x}; always contains Ref(M).

    With ``workers > 1`` the stream is cut into contiguous chunks whose
    constraint rows are reduced in separate processes and then merged; the
    result is the same canonical space as the serial run.
    """
    plan = plan or SamplePlan()
    vectors = plan.vectors(m.dim_h1)
    n = m.dim_h1 * m.dim_h2
    if workers > 1 and len(vectors) > 1:
        chunks = _split(vectors, workers)
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_constraint_rows, [m] * len(chunks), chunks))
        rs = RowSpace(n)
        for rows in parts:
            rs.extend(rows)
        rows = rs.rows
    else:
        rows = _constraint_rows(m, vectors)
    return OperatorSpace.from_vecs(m.dim_h1, m.dim_h2, _nullspace_rows(rows, n))


@dataclass
class MembershipResult:
    status: str  # "CertifiedNotIn" or "NotFalsified"
    witness: Vector | None
    checked: int

    @property
    def certified_not_in(self) -> bool:
        return self.status == "CertifiedNotIn"


def ref_membership(s: Matrix, m: OperatorSpace, plan: SamplePlan | None = None) -> MembershipResult:
    """One-sided test of S ∈ Ref(M): stops at the first x with S·x ∉ M·x."""
    if s.shape != m.shape:
        raise ValueError(f"matrix of shape {s.shape} for a space of shape {m.shape}")
    plan = plan or SamplePlan()
    count = 0
    for x in plan.vectors(m.dim_h1):
        count += 1
        if not _orbit(x, m).contains_vector(s @ x):
            return MembershipResult("CertifiedNotIn", x, count)
    return MembershipResult("NotFalsified", None, count)


@dataclass
class Verdict:
    status: str
    m: OperatorSpace
    ref_space: OperatorSpace
    witnesses: list[Matrix]
    provenance: str
    completeness: str
    samples: dict = field(default_factory=dict)
    bilattice: FiniteBilattice | None = field(default=None, repr=False)

    @property
    def is_exact(self) -> bool:
        return self.status in (REFLEXIVE_EXACT, NON_REFLEXIVE_EXACT)

    @property
    def is_reflexive(self) -> bool | None:
        if self.status in (REFLEXIVE_EXACT, REFLEXIVE_BY_DIM):
            return True
        if self.status == NON_REFLEXIVE_EXACT:
            return False
        return None


def decide_reflexive(
    m: OperatorSpace,
    plan: SamplePlan | None = None,
    lat_a: Sequence[Subspace] | None = None,
    lat_b_perp: Sequence[Subspace] | None = None,
    max_enum_dim: int = 12,
    workers: int = 1,
    ctx: BilatticeContext | None = None,
) -> Verdict:
    plan = plan or SamplePlan()
    ctx = ctx or BilatticeContext.from_space(m)
    exact_possible = lat_a is not None or enumerable_lattices(ctx, max_enum_dim) is not None
    if exact_possible:
        bil = enumerate_bil(ctx, lat_a, lat_b_perp, max_enum_dim)
        ref = bil.op()
        assert m <= ref, "M must lie in Op(Bil(M))"
        completeness = "proved (diagonal-containing algebras)" if bil.complete_by_proof else "asserted by caller"
        if ref == m:
            return Verdict(REFLEXIVE_EXACT, m, ref, [], bil.provenance, completeness, {}, bil)
        return Verdict(NON_REFLEXIVE_EXACT, m, ref, complement_basis(ref, m), bil.provenance, completeness, {}, bil)

    bound = ref_upper_bound(m, plan, workers)
    stats = dict(plan.to_dict(), sample_count=len(plan.vectors(m.dim_h1)))
    if bound.dim == m.dim:
        return Verdict(REFLEXIVE_BY_DIM, m, bound, [], "sampling", "not applicable", stats)
    rescreen = SamplePlan(seed=plan.seed + 1, random_count=plan.random_count,
                          structured=plan.structured, custom=plan.custom, bound=plan.bound)
    candidates = complement_basis(bound, m)
    kept = [c for c in candidates if not ref_membership(c, m, rescreen).certified_not_in]
    stats.update(candidates=len(candidates), rescreen_seed=rescreen.seed, rescreened_out=len(candidates) - len(kept))
    return Verdict(INCONCLUSIVE, m, bound, kept, "sampling", "not applicable", stats)


@dataclass
class TheoremReport:
    op_bil: OperatorSpace
    space_ii: OperatorSpace
    space_iii: OperatorSpace
    space_iv: OperatorSpace
    consistent_with_verdict: bool

    @property
    def ii(self) -> bool:
        return self.space_ii == self.op_bil

    @property
    def iii(self) -> bool:
        return self.space_iii == self.op_bil

    @property
    def iv(self) -> bool:
        return self.space_iv == self.op_bil

    @property
    def all_pass(self) -> bool:
        return self.ii and self.iii and self.iv and self.consistent_with_verdict

    def to_dict(self) -> dict:
        return {"ii": self.ii, "iii": self.iii, "iv": self.iv,
                "dim_op_bil": self.op_bil.dim,
                "dims": {"ii": self.space_ii.dim, "iii": self.space_iii.dim, "iv": self.space_iv.dim},
                "consistent_with_verdict": self.consistent_with_verdict}


def theorem_check(m: OperatorSpace, verdict: Verdict) -> TheoremReport:
    """Evaluate the three pair-map characterisations of M on an enumerated Bil(M).

    (ii) uses Ψ = Ψ₁ on all of Bil(M), (iii) the pairs (θ(Q), Q), and (iv) the
    pairs (P, φ(P)).  Each resulting Op(·) is compared with Op(Bil(M)) and
    with the verdict: equal to M when reflexive, equal to the strictly larger
    ref_space otherwise.
    """
    bil = verdict.bilattice
    if bil is None:
        raise ValueError("theorem_check needs a verdict carrying an enumerated or supplied bilattice")
    ctx = bil.context
    h1, h2 = m.dim_h1, m.dim_h2
    op_bil = bil.op()
    s2 = op_of((psi1(x, ctx) for x in bil.pairs), h1, h2)
    s3 = op_of((ProjectionPair(theta(q, ctx), q) for q in bil.lat_b_perp), h1, h2)
    s4 = op_of((ProjectionPair(p, phi(p, ctx)) for p in bil.lat_a), h1, h2)
    spaces = (s2, s3, s4)
    if verdict.status == REFLEXIVE_EXACT:
        consistent = all(s == m for s in spaces)
    elif verdict.status == NON_REFLEXIVE_EXACT:
        consistent = all(s == verdict.ref_space for s in spaces) and verdict.ref_space.dim > m.dim
    else:
        consistent = False
    return TheoremReport(op_bil, s2, s3, s4, consistent)


@dataclass
class Remark11Report:
    alg_lat: OperatorSpace
    ref_bound: OperatorSpace
    lattice_complete: bool
    prop22: bool | None = None
    cor22: bool | None = None

    @property
    def equal(self) -> bool:
        return self.alg_lat == self.ref_bound

    @property
    def incompleteness_detected(self) -> bool:
        # a complete lattice gives Alg(L) = Ref(A) ⊆ bound, so a larger Alg(L) proves L incomplete
        return self.alg_lat.dim > self.ref_bound.dim

    @property
    def consistent(self) -> bool:
        if self.lattice_complete and not self.equal:
            return False
        return self.prop22 is not False and self.cor22 is not False

    def to_dict(self) -> dict:
        return {"dim_alg_lat": self.alg_lat.dim, "dim_ref_bound": self.ref_bound.dim,
                "equal": self.equal, "lattice_complete": self.lattice_complete,
                "incompleteness_detected": self.incompleteness_detected,
                "prop22": self.prop22, "cor22": self.cor22}


def remark11_check(
    a: OperatorSpace,
    lattice: Sequence[Subspace],
    plan: SamplePlan | None = None,
    complete: bool = False,
    m: OperatorSpace | None = None,
    verdict: Verdict | None = None,
) -> Remark11Report:
    """Compare AlgLat(a) with the sampled Ref bound of a unital algebra.

    With ``m`` and its ``verdict`` given (and ``a == A_M``) the report also
    records whether AlgLat(A_M) = A_M for reflexive M, and whether the
    sampled bound of Ref(A_M) sits inside A_{ref_space}.
    """
    if not a.is_square or not membership(Matrix.identity(a.dim_h1), a):
        raise ValueError("remark11_check needs a unital algebra")
    for w in lattice:
        if not is_invariant(w, a):
            raise ValueError(f"{w!r} is not invariant under the algebra")
    plan = plan or SamplePlan()
    alg_lat = alg_of(lattice, a.dim_h1)
    bound = ref_upper_bound(a, plan)
    report = Remark11Report(alg_lat, bound, complete)
    if m is not None and verdict is not None and a == a_algebra(m):
        if verdict.is_reflexive and complete:
            report.prop22 = alg_lat == a
        if verdict.status != INCONCLUSIVE:
            a_ref = a_algebra(verdict.ref_space)
            # Ref(A_M) ⊆ bound, so bound ⊆ A_{Ref(M)} certifies the containment
            report.cor22 = True if bound <= a_ref else None
    return report
