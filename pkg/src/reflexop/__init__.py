"""Exact finite-dimensional workbench for reflexive spaces of operators.

Spaces of matrices over the Gaussian rationals, their multiplier algebras
A_M and B_M, invariant-subspace lattices, the bilattice Bil(M) with its
Galois maps, and a reflexivity decision procedure that reports how each
verdict was reached.
"""

from .bilattice import (
    BilatticeContext,
    FiniteBilattice,
    enlarge,
    enumerate_bil,
    in_BIL,
    in_Bil,
    op_of,
    phi,
    psi1,
    psi2,
    theta,
)
from .exact import GaussianRational, Matrix, kron, nullspace, parse_scalar, rref, unvec, vec
from .invariant import (
    GeneratorSet,
    alg_of,
    enumerate_coordinate_lat,
    is_invariant,
    largest_invariant_within,
    smallest_invariant_containing,
)
from .opspace import (
    OperatorSpace,
    a_algebra,
    adjoint_space,
    annihilator,
    b_algebra,
    check_prop23,
    commutant,
    membership,
    preannihilator,
    product_span,
)
from .reflexivity import (
    SamplePlan,
    Verdict,
    decide_reflexive,
    ref_constraints_at,
    ref_membership,
    ref_upper_bound,
    remark11_check,
    theorem_check,
)
from .subspace import (
    ProjectionPair,
    Subspace,
    image,
    join,
    leq,
    meet,
    ortho_complement,
    pair_join,
    pair_leq,
    pair_meet,
    preimage,
    projection_matrix,
)

__version__ = "0.1.0"
