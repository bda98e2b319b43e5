"""Law suites run by ``reflexop check`` and by the acceptance tests.

Each law produces a :class:`LawResult`; ``passed is None`` marks a law that
does not apply to the input (for example a Galois law when Bil(M) cannot be
enumerated).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Iterable

from .bilattice import (
    BilatticeContext,
    FiniteBilattice,
    enlarge,
    enumerable_lattices,
    enumerate_bil,
    in_BIL,
    in_Bil,
    op_of,
    phi,
    phi_by_join,
    psi1,
    psi2,
    theta,
    theta_by_join,
)
from .exact import GaussianRational
from .formats import ProblemFile, pair_to_json, subspace_to_json
from .opspace import a_algebra, check_prop23
from .reflexivity import SamplePlan, decide_reflexive, remark11_check, theorem_check
from .subspace import ProjectionPair, Subspace, image, join_all, leq, meet_all, ortho_complement, pair_leq

SUITES = ("prop23", "prop33", "lemma31", "cor34", "theo35")

_SMALL = [GaussianRational(x, y) for x, y in
          [(0, 0), (0, 0), (1, 0), (-1, 0), (2, 0), (0, 1), (1, 1), (1, -2), (3, 0), (-1, 1)]]


@dataclass
class LawResult:
    suite: str
    law: str
    passed: bool | None
    checked: int = 0
    detail: str = ""
    counterexample: Any = None

    def to_dict(self) -> dict:
        out = {"suite": self.suite, "law": self.law, "passed": self.passed, "checked": self.checked}
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteContext:
    problem: ProblemFile
    ctx: BilatticeContext
    bil: FiniteBilattice | None
    plan: SamplePlan
    seed: int = 0
    random_pairs: int = 200
    _verdict: Any = field(default=None, repr=False)

    @classmethod
    def build(cls, problem: ProblemFile, max_enum_dim: int = 12, seed: int = 0,
              random_pairs: int = 200, plan: SamplePlan | None = None) -> "SuiteContext":
        ctx = BilatticeContext.from_space(problem.space)
        bil = None
        if problem.has_supplied_lattices:
            bil = enumerate_bil(ctx, problem.supplied_lat_a, problem.supplied_lat_b_perp)
        elif enumerable_lattices(ctx, max_enum_dim) is not None:
            bil = enumerate_bil(ctx, max_enum_dim=max_enum_dim)
        return cls(problem, ctx, bil, plan or problem.plan, seed, random_pairs)

    @property
    def verdict(self):
        if self._verdict is None:
            p = self.problem
            self._verdict = decide_reflexive(p.space, self.plan, p.supplied_lat_a, p.supplied_lat_b_perp,
                                             ctx=self.ctx)
        return self._verdict


def _law(suite: str, name: str, items: Iterable, predicate: Callable, show: Callable) -> LawResult:
    n = 0
    for item in items:
        n += 1
        if not predicate(item):
            return LawResult(suite, name, False, n, counterexample=show(item))
    return LawResult(suite, name, True, n)


def _skip(suite: str, name: str, why: str) -> LawResult:
    return LawResult(suite, name, None, 0, detail=why)


_NOT_ENUMERABLE = "Bil(M) not enumerable (A_M or B_M misses the diagonal and no lattices were supplied)"


def suite_prop23(sc: SuiteContext) -> list[LawResult]:
    m = sc.problem.space
    reflexive = sc.verdict.is_reflexive if m.is_square else None
    rep = check_prop23(m, reflexive)
    out = [LawResult("prop23", "adjoint_identity", rep.adjoint_identity, 1)]
    for name, value, why in [
        ("annihilator_identity_a", rep.annihilator_identity_a, "non-square context"),
        ("annihilator_identity_b", rep.annihilator_identity_b, "non-square context"),
        ("c_star_algebra", rep.c_star, "M is not selfadjoint"),
        ("von_neumann_algebra", rep.von_neumann, "M not selfadjoint or reflexivity not established"),
    ]:
        out.append(_skip("prop23", name, why) if value is None else LawResult("prop23", name, value, 1))
    return out


class _Galois:
    """phi/theta with memoisation over one context."""

    def __init__(self, ctx: BilatticeContext):
        self.ctx = ctx
        self._phi: dict = {}
        self._theta: dict = {}

    def phi(self, p: Subspace) -> Subspace:
        if p not in self._phi:
            self._phi[p] = phi(p, self.ctx)
        return self._phi[p]

    def theta(self, q: Subspace) -> Subspace:
        if q not in self._theta:
            self._theta[q] = theta(q, self.ctx)
        return self._theta[q]

    def apply(self, which: str, x: Subspace) -> Subspace:
        return self.phi(x) if which == "phi" else self.theta(x)

    def other(self, which: str, x: Subspace) -> Subspace:
        return self.theta(x) if which == "phi" else self.phi(x)


def _chains(lat: list[Subspace]):
    return [(a, b) for a in lat for b in lat if a != b and leq(a, b)]


def suite_prop33(sc: SuiteContext) -> list[LawResult]:
    s = "prop33"
    laws = ("antitone", "gluing", "join_reversal", "inflation", "triple_composition", "route_agreement")
    if sc.bil is None:
        return [_skip(s, n, _NOT_ENUMERABLE) for n in laws]
    ctx, lat_a, lat_b = sc.ctx, sc.bil.lat_a, sc.bil.lat_b_perp
    g = _Galois(ctx)
    doms = [("phi", x) for x in lat_a] + [("theta", x) for x in lat_b]

    def antitone(t):
        which, small, large = t
        return leq(g.apply(which, large), g.apply(which, small))

    def glued(t):
        which, x = t
        pair = ProjectionPair(x, g.phi(x)) if which == "phi" else ProjectionPair(g.theta(x), x)
        return in_Bil(pair, ctx)

    def reverses(t):
        which, subset = t
        if which == "phi":
            return g.phi(join_all(ctx.h1, subset)) == meet_all(ctx.h2, [g.phi(p) for p in subset])
        return g.theta(join_all(ctx.h2, subset)) == meet_all(ctx.h1, [g.theta(q) for q in subset])

    def inflates(t):
        which, x = t
        return leq(x, g.other(which, g.apply(which, x)))

    def triple(t):
        which, x = t
        y = g.apply(which, x)
        return g.apply(which, g.other(which, y)) == y

    def routes(t):
        which, x = t
        if which == "phi":
            return g.phi(x) == phi_by_join(x, ctx, lat_b)
        return g.theta(x) == theta_by_join(x, ctx, lat_a)

    def show(t):
        return {"map": t[0], "elements": [subspace_to_json(x) for x in t[1:]]}

    def show_subset(t):
        return {"map": t[0], "subset": [subspace_to_json(x) for x in t[1]]}

    chains = [("phi", a, b) for a, b in _chains(lat_a)] + [("theta", a, b) for a, b in _chains(lat_b)]
    subsets = [("phi", c) for k in (1, 2, 3) for c in combinations(lat_a, k)]
    subsets += [("theta", c) for k in (1, 2, 3) for c in combinations(lat_b, k)]
    return [
        _law(s, "antitone", chains, antitone, show),
        _law(s, "gluing", doms, glued, show),
        _law(s, "join_reversal", subsets, reverses, show_subset),
        _law(s, "inflation", doms, inflates, show),
        _law(s, "triple_composition", doms, triple, show),
        _law(s, "route_agreement", doms, routes, show),
    ]


def _random_vector(rng: random.Random, n: int):
    return [rng.choice(_SMALL) for _ in range(n)]


def _random_subspace(rng: random.Random, n: int) -> Subspace:
    if rng.random() < 0.3:
        return Subspace.from_mask(n, rng.randrange(1 << n))
    k = rng.randint(0, n)
    return Subspace(n, [_random_vector(rng, n) for _ in range(k)])


def _random_subspace_of(rng: random.Random, w: Subspace) -> Subspace:
    if w.is_zero():
        return w
    k = rng.randint(0, w.dim)
    vecs = []
    for _ in range(k):
        coeffs = _random_vector(rng, w.dim)
        vecs.append([sum((c * b[i] for c, b in zip(coeffs, w.basis)), GaussianRational(0))
                     for i in range(w.ambient_dim)])
    return Subspace(w.ambient_dim, vecs)


def random_bil_pairs(ctx: BilatticeContext, count: int, seed: int = 0) -> list[ProjectionPair]:
    """Random members of BIL(M): a random P, then a random Q inside (M·P)^⊥."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = _random_subspace(rng, ctx.h1)
        room = ortho_complement(join_all(ctx.h2, (image(t, p) for t in ctx.m.basis)))
        if rng.random() < 0.2:
            q = room
        else:
            q = _random_subspace_of(rng, room)
        out.append(ProjectionPair(p, q))
    return out


def suite_lemma31(sc: SuiteContext) -> list[LawResult]:
    s = "lemma31"
    ctx = sc.ctx
    pairs = random_bil_pairs(ctx, sc.random_pairs, sc.seed)
    out = [_law(s, "sampled_pairs_in_BIL", pairs, lambda x: in_BIL(x, ctx), pair_to_json)]
    enlarged = []

    def dominated(x):
        y = enlarge(x, ctx)
        enlarged.append(y)
        return leq(x.p, y.p) and leq(x.q, y.q) and in_Bil(y, ctx)

    out.append(_law(s, "enlarge_dominates_in_Bil", pairs, dominated, pair_to_json))
    if sc.bil is None:
        out.append(_skip(s, "op_Bil_equals_op_BIL_sample", _NOT_ENUMERABLE))
    else:
        base = sc.bil.op()
        widened = op_of(list(sc.bil.pairs) + enlarged + pairs, ctx.h1, ctx.h2)
        out.append(LawResult(s, "op_Bil_equals_op_BIL_sample", base == widened, len(pairs),
                             detail=f"dim Op(Bil) = {base.dim}, dim with samples = {widened.dim}"))
    return out


def suite_cor34(sc: SuiteContext) -> list[LawResult]:
    s = "cor34"
    laws = ("psi_in_Bil", "psi_order_preserving", "psi_equal_images", "psi_idempotent")
    if sc.bil is None:
        return [_skip(s, n, _NOT_ENUMERABLE) for n in laws]
    ctx = sc.ctx
    pairs = sc.bil.pairs
    im1 = {x: psi1(x, ctx) for x in pairs}
    im2 = {x: psi2(x, ctx) for x in pairs}
    both = [(k, x) for x in pairs for k in (1, 2)]

    def img(k, x):
        return im1[x] if k == 1 else im2[x]

    order = [(k, x, y) for x in pairs for y in pairs if x != y and pair_leq(x, y) for k in (1, 2)]
    set1 = {(y.p, y.q) for y in im1.values()}
    set2 = {(y.p, y.q) for y in im2.values()}
    return [
        _law(s, "psi_in_Bil", both, lambda t: in_Bil(img(*t), ctx), lambda t: {"psi": t[0], "pair": pair_to_json(t[1])}),
        _law(s, "psi_order_preserving", order, lambda t: pair_leq(img(t[0], t[1]), img(t[0], t[2])),
             lambda t: {"psi": t[0], "x": pair_to_json(t[1]), "y": pair_to_json(t[2])}),
        LawResult(s, "psi_equal_images", set1 == set2, len(pairs),
                  detail=f"|image psi1| = {len(set1)}, |image psi2| = {len(set2)}"),
        _law(s, "psi_idempotent", pairs,
             lambda x: psi1(im1[x], ctx) == im1[x] and psi2(im2[x], ctx) == im2[x], pair_to_json),
    ]


def suite_theo35(sc: SuiteContext) -> list[LawResult]:
    s = "theo35"
    laws = ("characterisation_ii", "characterisation_iii", "characterisation_iv", "matches_verdict", "alglat_of_A_M")
    if sc.bil is None:
        return [_skip(s, n, _NOT_ENUMERABLE) for n in laws]
    m = sc.problem.space
    verdict = sc.verdict
    rep = theorem_check(m, verdict)
    out = [
        LawResult(s, "characterisation_ii", rep.ii, 1, detail=f"dim {rep.space_ii.dim} vs Op(Bil) {rep.op_bil.dim}"),
        LawResult(s, "characterisation_iii", rep.iii, 1, detail=f"dim {rep.space_iii.dim}"),
        LawResult(s, "characterisation_iv", rep.iv, 1, detail=f"dim {rep.space_iv.dim}"),
        LawResult(s, "matches_verdict", rep.consistent_with_verdict, 1, detail=verdict.status),
    ]
    if m.is_square and verdict.is_reflexive:
        a_m = sc.ctx.a_alg
        r = remark11_check(a_m, sc.bil.lat_a, sc.plan, complete=sc.bil.complete_by_proof, m=m, verdict=verdict)
        ok = r.consistent and (r.prop22 is not False)
        out.append(LawResult(s, "alglat_of_A_M", ok, 1,
                             detail=f"dim AlgLat(A_M) = {r.alg_lat.dim}, dim A_M = {a_m.dim}"))
    else:
        out.append(_skip(s, "alglat_of_A_M", "needs a square, reflexive M"))
    return out


_RUNNERS = {
    "prop23": suite_prop23,
    "prop33": suite_prop33,
    "lemma31": suite_lemma31,
    "cor34": suite_cor34,
    "theo35": suite_theo35,
}


def run_suite(sc: SuiteContext, name: str) -> list[LawResult]:
    if name == "all":
        return [r for suite in SUITES for r in _RUNNERS[suite](sc)]
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _RUNNERS[name](sc)


def all_passed(results: list[LawResult]) -> bool:
    return all(r.passed is not False for r in results)
