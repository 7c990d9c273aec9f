"""Positive extension of functionals and operators from a subspace.

Setting: an ambient space F ordered by a polyhedral wedge F_plus, and a
subspace E carrying the inherited order E_plus = F_plus intersect E. The
restriction wedge collects the restrictions of positive functionals to E;
extend_functional decides whether a given functional on E is such a
restriction, returning either an extension or a point of E_plus on which
the functional is negative.

For operator extension the ambient target is the coordinate orthant: a
generating pointed cone E_plus embeds bipositively into R^m through the
extremal rays of its dual (x maps to the vector of pairings). An operator
into E extends positively over that embedding exactly when it is a
nonnegative combination of the rank-one tensors ray x dual_ray; otherwise
a separating bilinear form is produced. Running the test on the identity
distinguishes simplex cones from all other generating pointed cones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lp
from .cones import (
    Wedge,
    classify,
    cone_from_inequalities,
    dual_wedge,
    extremal_rays,
    wedge_equal,
)
from .errors import InputError, InternalConsistencyError
from .linalg import (
    RationalMatrix,
    RationalVector,
    Subspace,
    outer,
    rank,
)

FunctionalLike = Union[RationalVector, Sequence]


def restriction_wedge(f_plus: Wedge, subspace: Subspace) -> Wedge:
    """Restrictions of all positive functionals to the subspace.

    The dual generators of f_plus restrict to B^T d in subspace
    coordinates; their wedge is the full set of restrictions since every
    positive functional is a nonnegative combination of the dual
    generators.
    """
    if subspace.ambient_dim != f_plus.ambient_dim:
        raise InputError(
            f"dimension mismatch: subspace ambient {subspace.ambient_dim}, wedge {f_plus.ambient_dim}"
        )
    bt = subspace.basis.transpose()
    return Wedge(subspace.dim, [bt.matvec(d) for d in dual_wedge(f_plus).generators])


def predual_identity_check(f_plus: Wedge, subspace: Subspace) -> bool:
    """Whether the inherited wedge on E is the predual of the restriction wedge.

    Compares F_plus intersect E against {x in E : <x, r> >= 0 for every
    restriction generator r}. Holds for every polyhedral instance; exposed
    as a check rather than assumed.
    """
    from .cones import intersect_subspace

    inherited = intersect_subspace(f_plus, subspace)
    restrictions = restriction_wedge(f_plus, subspace)
    predual = cone_from_inequalities(restrictions.generators, subspace.dim)
    return wedge_equal(inherited, predual)


@dataclass(frozen=True)
class FunctionalExtensionResult:
    """Outcome of extend_functional.

    Extended: functional is a positive functional on all of F agreeing
    with the input on the subspace basis. Not extended: witness_coords is
    a point of E (in subspace coordinates, with witness_ambient its
    ambient form) lying in E_plus on which the input functional is
    negative.
    """

    extended: bool
    functional: Optional[RationalVector] = None
    witness_coords: Optional[RationalVector] = None
    witness_ambient: Optional[RationalVector] = None


def extend_functional(
    f: FunctionalLike, subspace: Subspace, f_plus: Wedge
) -> FunctionalExtensionResult:
    """Extend a functional on the subspace to a positive functional on F.

    f is given by its values on the subspace basis. Feasibility of
    B^T phi = f, <g, phi> >= 0 for every generator g of f_plus is decided
    exactly; the Farkas multipliers of an infeasible system assemble the
    witness point directly (the equality multipliers are its subspace
    coordinates).
    """
    if subspace.ambient_dim != f_plus.ambient_dim:
        raise InputError(
            f"dimension mismatch: subspace ambient {subspace.ambient_dim}, wedge {f_plus.ambient_dim}"
        )
    if not isinstance(f, RationalVector):
        f = RationalVector(f)
    if f.dim != subspace.dim:
        raise InputError(f"functional has {f.dim} coordinates, expected {subspace.dim}")

    system = lp.FeasibilitySystem(
        eq_matrix=subspace.basis.transpose(),
        eq_rhs=f,
        ineq_matrix=RationalMatrix.from_rows(
            list(f_plus.generators), cols=f_plus.ambient_dim
        ),
    )
    result = lp.feasibility(system)
    if result.feasible:
        return FunctionalExtensionResult(extended=True, functional=result.point)

    assert result.certificate is not None
    coords = result.certificate.eq_multipliers.primitive()
    ambient = subspace.to_ambient(coords)
    # Farkas identity says B y = sum z_i g_i, so the witness lies in
    # F_plus intersect E and pairs negatively with f; re-check both.
    if f.dot(coords) >= 0:
        raise InternalConsistencyError("witness fails f(x) < 0")
    if not lp.cone_membership(f_plus.generators, ambient).is_member:
        raise InternalConsistencyError("witness fails membership in the ambient wedge")
    return FunctionalExtensionResult(
        extended=False, witness_coords=coords, witness_ambient=ambient
    )


class OrthantEmbedding:
    """Bipositive embedding of a generating pointed cone into an orthant.

    The rows of the matrix are the extremal rays of the dual cone, so the
    embedding sends x to its vector of dual pairings; x lies in the cone
    exactly when the image lies in the nonnegative orthant of R^m.
    """

    __slots__ = ("cone", "dual_rays", "matrix")

    def __init__(self, cone: Wedge) -> None:
        shape = classify(cone)
        if not (shape.is_generating and shape.is_cone):
            raise InputError("orthant embedding requires a generating pointed cone")
        dual_rays = extremal_rays(dual_wedge(cone))
        matrix = RationalMatrix.from_rows(dual_rays, cols=cone.ambient_dim)
        if rank(matrix) != cone.ambient_dim:
            raise InternalConsistencyError("dual rays of a generating pointed cone must span")
        if not wedge_equal(cone_from_inequalities(dual_rays, cone.ambient_dim), cone):
            raise InternalConsistencyError("dual rays fail to cut out the cone")
        for g in cone.generators:
            if any(phi.dot(g) < 0 for phi in dual_rays):
                raise InternalConsistencyError("embedding is not positive on the cone")
        self.cone = cone
        self.dual_rays: tuple[RationalVector, ...] = tuple(dual_rays)
        self.matrix = matrix

    @property
    def m(self) -> int:
        return len(self.dual_rays)

    @property
    def dim(self) -> int:
        return self.cone.ambient_dim

    def embed(self, x: RationalVector) -> RationalVector:
        return self.matrix.matvec(x)

    def __repr__(self) -> str:
        return f"OrthantEmbedding(dim={self.dim}, m={self.m})"


def orthant_embedding(e_plus: Wedge) -> OrthantEmbedding:
    """Build the dual-ray embedding for a generating pointed cone.

    Verifies bipositivity at build time: the dual rays cut out exactly the
    input cone and pair nonnegatively with every generator. Raises
    InputError when the cone is not generating or not pointed.
    """
    return OrthantEmbedding(e_plus)


@dataclass(frozen=True)
class TensorTerm:
    """One rank-one summand coefficient * (vector tensor functional)."""

    coefficient: Fraction
    vector: RationalVector
    functional: RationalVector

    def matrix(self) -> RationalMatrix:
        return outer(self.vector.scale(self.coefficient), self.functional)


@dataclass(frozen=True)
class TensorDecomposition:
    """A sum of positive rank-one tensors equal to a given operator."""

    terms: tuple[TensorTerm, ...]
    shape: tuple[int, int]

    def reconstruct(self) -> RationalMatrix:
        total = RationalMatrix.zeros(*self.shape)
        for term in self.terms:
            total = total + term.matrix()
        return total


@dataclass(frozen=True)
class OperatorWitness:
    """Bilinear form separating an operator from the tensor cone.

    Pairs nonnegatively with every generator tensor (ray^T H dual_ray >= 0)
    and strictly negatively with the target operator.
    """

    form: RationalMatrix


@dataclass(frozen=True)
class OperatorExtensionResult:
    extended: bool
    columns: Optional[tuple[RationalVector, ...]] = None
    extension_matrix: Optional[RationalMatrix] = None
    decomposition: Optional[TensorDecomposition] = None
    witness: Optional[OperatorWitness] = None


def tensor_cone_generators(embedding: OrthantEmbedding) -> list[RationalMatrix]:
    """Rank-one generators ray x dual_ray of the extendable-operator cone.

    Ordered rays-outer, dual-rays-inner; flattening each matrix row-major
    turns operator extension into a membership query in dimension dim^2.
    """
    rays = extremal_rays(embedding.cone)
    return [outer(p, phi) for p in rays for phi in embedding.dual_rays]


def extend_operator(
    operator: RationalMatrix, embedding: OrthantEmbedding
) -> OperatorExtensionResult:
    """Decide positive extendability of an operator over the embedding.

    The operator (a square matrix into E, composed with the embedding's
    coordinates) extends to a positive map from R^m exactly when it is a
    nonnegative combination of the rank-one generator tensors. The
    extension is returned as the matrix with columns y_j in E_plus
    satisfying sum_j y_j dual_ray_j^T = operator; otherwise the witness
    bilinear form is returned.
    """
    d = embedding.dim
    if (operator.rows, operator.cols) != (d, d):
        raise InputError(f"operator must be {d}x{d}, got {operator.rows}x{operator.cols}")
    rays = extremal_rays(embedding.cone)
    dual_rays = embedding.dual_rays
    generators = [outer(p, phi) for p in rays for phi in dual_rays]
    membership = lp.cone_membership(
        [g.vectorize() for g in generators], operator.vectorize()
    )
    if not membership.is_member:
        assert membership.witness is not None
        hw = membership.witness
        form = RationalMatrix([hw.entries[i * d : (i + 1) * d] for i in range(d)], cols=d)
        return OperatorExtensionResult(extended=False, witness=OperatorWitness(form=form))

    lam = membership.coefficients
    assert lam is not None
    m = len(dual_rays)
    terms = tuple(
        TensorTerm(coefficient=lam[a * m + j], vector=rays[a], functional=dual_rays[j])
        for a in range(len(rays))
        for j in range(m)
        if lam[a * m + j]
    )
    decomposition = TensorDecomposition(terms=terms, shape=(d, d))
    columns = []
    for j in range(m):
        y = RationalVector.zero(d)
        for a in range(len(rays)):
            c = lam[a * m + j]
            if c:
                y = y + rays[a].scale(c)
        columns.append(y)
    extension = RationalMatrix.from_cols(columns, dim=d)
    if extension @ embedding.matrix != operator:
        raise InternalConsistencyError("extension does not reproduce the operator")
    if decomposition.reconstruct() != operator:
        raise InternalConsistencyError("decomposition does not reconstruct the operator")
    for j, y in enumerate(columns):
        if not lp.cone_membership(embedding.cone.generators, y).is_member:
            raise InternalConsistencyError(f"extension column {j} left the cone")
    return OperatorExtensionResult(
        extended=True,
        columns=tuple(columns),
        extension_matrix=extension,
        decomposition=decomposition,
    )


@dataclass(frozen=True)
class IdentityApproximability:
    """Whether the identity is a limit of positive rank-one sums.

    In the polyhedral setting the tensor cone is closed, so this is the
    same as the identity being a nonnegative combination of generator
    tensors, and it holds exactly for simplex cones. Both sides are
    computed independently and cross-asserted.
    """

    approximable: bool
    is_simplex: bool
    embedding: OrthantEmbedding
    result: OperatorExtensionResult


def identity_approximable(e_plus: Wedge) -> IdentityApproximability:
    """Test the identity operator against the tensor cone of e_plus.

    Raises InputError when e_plus is not generating or not pointed, and
    InternalConsistencyError if the decision ever disagrees with the
    simplex-cone classification (they are equivalent by theorem).
    """
    embedding = orthant_embedding(e_plus)
    result = extend_operator(RationalMatrix.identity(e_plus.ambient_dim), embedding)
    simplex = classify(e_plus).is_simplex
    if result.extended != simplex:
        raise InternalConsistencyError(
            "identity extendability must coincide with the simplex classification"
        )
    return IdentityApproximability(
        approximable=result.extended,
        is_simplex=simplex,
        embedding=embedding,
        result=result,
    )
