import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import E, I, G, random_space, span
from reflexop.exact import Matrix, vec
from reflexop.fixtures import load_fixture
from reflexop.opspace import OperatorSpace, a_algebra
from reflexop.reflexivity import (
    INCONCLUSIVE,
    NON_REFLEXIVE_EXACT,
    REFLEXIVE_BY_DIM,
    REFLEXIVE_EXACT,
    SamplePlan,
    decide_reflexive,
    ref_constraints_at,
    ref_membership,
    ref_upper_bound,
    remark11_check,
    theorem_check,
)
from reflexop.subspace import Subspace

e1, e2 = Subspace.coordinate(2, [0]), Subspace.coordinate(2, [1])
Z2, F2 = Subspace.zero(2), Subspace.full(2)
JORDAN = span(I(), E(1, 2))
UPPER2 = span(E(1, 1), E(1, 2), E(2, 2))


def _sat(rows, s):
    v = vec(s)
    return all(sum((r * x for r, x in zip(row, v)), G(0)) == 0 for row in rows)


def test_constraints_examples():
    assert ref_constraints_at([0, 0], JORDAN) == []
    rows = ref_constraints_at([1, 0], JORDAN)
    assert len(rows) == 1
    assert not _sat(rows, E(2, 1))
    for s in (E(1, 1), E(1, 2), E(2, 2)):
        assert _sat(rows, s)
    full = OperatorSpace.full(2, 2)
    for x in ([1, 0], [1, G(0, 1)], [3, -2]):
        assert ref_constraints_at(x, full) == []
    with pytest.raises(ValueError):
        ref_constraints_at([1, 0, 0], JORDAN)


def test_sample_stream_deterministic():
    p = SamplePlan()
    v = p.vectors(3)
    assert v == SamplePlan().vectors(3)
    assert len(v) == 3 + 3 + 6 + 100
    assert v != SamplePlan(seed=43).vectors(3)
    assert len(SamplePlan.structured_only().vectors(2)) == 2 + 1 + 2


def test_upper_bound_examples():
    assert ref_upper_bound(OperatorSpace.full(2, 2)) == OperatorSpace.full(2, 2)
    plan = SamplePlan(random_count=50, structured=frozenset({"basis"}))
    assert ref_upper_bound(JORDAN, plan) == UPPER2
    four = SamplePlan(random_count=0, structured=frozenset({"basis", "custom"}),
                      custom=(([1, 1]), ([1, G(0, 1)])))
    assert ref_upper_bound(OperatorSpace.scalars(2), four) == OperatorSpace.scalars(2)


def test_upper_bound_monotone_in_samples():
    rng = random.Random(5)
    for _ in range(10):
        m = random_space(rng, 3, 2, 3)
        prev = OperatorSpace.full(3, 2)
        for k in (0, 2, 5, 20):
            b = ref_upper_bound(m, SamplePlan(random_count=k, structured=frozenset()))
            assert m <= b <= prev
            prev = b


def test_parallel_equals_serial():
    m = load_fixture("uppertri3").space
    plan = SamplePlan(random_count=40)
    assert ref_upper_bound(m, plan, workers=3) == ref_upper_bound(m, plan)
    s = OperatorSpace.scalars(3)
    assert ref_upper_bound(s, plan, workers=2) == ref_upper_bound(s, plan)


def test_membership_examples():
    for t in JORDAN.basis:
        assert ref_membership(t, JORDAN).status == "NotFalsified"
    assert ref_membership(E(1, 1), JORDAN).status == "NotFalsified"
    r = ref_membership(E(2, 1), JORDAN)
    assert r.certified_not_in
    assert r.witness == (G(1), G(0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_membership_witness_sound(seed):
    rng = random.Random(seed)
    m = random_space(rng, 2, 2, 2)
    s = Matrix.from_rows([[G(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)])
    r = ref_membership(s, m, SamplePlan(random_count=5))
    if r.certified_not_in:
        x = r.witness
        assert not Subspace(2, [t @ x for t in m.basis]).contains_vector(s @ x)
        assert s not in m


def test_decide_examples():
    v = decide_reflexive(span(E(1, 2)))
    assert v.status == REFLEXIVE_EXACT and v.ref_space == span(E(1, 2))

    v = decide_reflexive(JORDAN, lat_a=[Z2, e1, F2], lat_b_perp=[Z2, e2, F2])
    assert v.status == NON_REFLEXIVE_EXACT
    assert v.ref_space == UPPER2 and v.witnesses == [E(1, 1)]

    v = decide_reflexive(OperatorSpace.zero(2, 2))
    assert v.status == REFLEXIVE_EXACT and v.ref_space.dim == 0


def test_decide_sampling_paths():
    v = decide_reflexive(OperatorSpace.scalars(2))
    assert v.status == REFLEXIVE_BY_DIM and v.provenance == "sampling"
    v = decide_reflexive(JORDAN)
    assert v.status == INCONCLUSIVE and v.is_reflexive is None
    assert v.witnesses == [E(1, 1)]


def test_theorem_check_examples():
    rep = theorem_check(span(E(1, 2)), decide_reflexive(span(E(1, 2))))
    assert rep.all_pass and rep.space_ii == span(E(1, 2))
    v = decide_reflexive(JORDAN, lat_a=[Z2, e1, F2], lat_b_perp=[Z2, e2, F2])
    rep = theorem_check(JORDAN, v)
    assert rep.all_pass and rep.space_iii == UPPER2
    z = OperatorSpace.zero(2, 2)
    assert theorem_check(z, decide_reflexive(z)).all_pass
    with pytest.raises(ValueError):
        theorem_check(JORDAN, decide_reflexive(JORDAN))


def test_remark11_examples():
    r = remark11_check(UPPER2, [Z2, e1, F2], complete=True)
    assert r.alg_lat == UPPER2 and r.ref_bound == UPPER2 and r.consistent
    f = OperatorSpace.full(2, 2)
    assert remark11_check(f, [Z2, F2], complete=True).equal
    r = remark11_check(OperatorSpace.scalars(2), [Z2, F2])
    assert r.alg_lat == f and r.ref_bound == OperatorSpace.scalars(2)
    assert r.incompleteness_detected
    with pytest.raises(ValueError):
        remark11_check(span(E(1, 2)), [Z2])


def test_remark11_with_verdict():
    m = span(E(1, 2))
    v = decide_reflexive(m)
    a = a_algebra(m)
    r = remark11_check(a, v.bilattice.lat_a, complete=True, m=m, verdict=v)
    assert r.prop22 is True and r.cor22 is True
