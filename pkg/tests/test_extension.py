"""Functional and operator extension over polyhedral wedges.

Every positive decision is re-verified here from its certificate data
(restriction values, generator pairings, reconstructions), and negative
decisions from their witnesses, so the tests never trust the library's
own bookkeeping.
"""

import itertools
import random

import pytest

from conelab.cones import Wedge, classify, dual_wedge, extremal_rays, orthant
from conelab.errors import InputError
from conelab.extension import (
    extend_functional,
    extend_operator,
    identity_approximable,
    orthant_embedding,
    predual_identity_check,
    restriction_wedge,
    tensor_cone_generators,
)
from conelab.linalg import RationalMatrix, RationalVector, Subspace, inverse, outer
from conelab.lp import cone_membership


def V(*entries):
    return RationalVector(entries)


def square_based_cone():
    return Wedge(3, [V(1, 1, 1), V(1, -1, 1), V(-1, 1, 1), V(-1, -1, 1)])


def diagonal_plane():
    return Subspace.from_vectors([V(1, 1, 0), V(0, 0, 1)])


def rand_subspace(rng, ambient, k):
    from conelab.linalg import rank

    while True:
        basis = [
            RationalVector([rng.randint(-3, 3) for _ in range(ambient)]) for _ in range(k)
        ]
        if rank(RationalMatrix.from_cols(basis, dim=ambient)) == k:
            return Subspace.from_vectors(basis)


def rand_generating_wedge(rng, dim, extra=3, box=3):
    # units plus noise: always generating, usually not an orthant
    gens = [RationalVector.unit(dim, i) for i in range(dim)]
    gens += [
        RationalVector([rng.randint(-box, box) for _ in range(dim)]) for _ in range(extra)
    ]
    return Wedge(dim, gens)


# --- restriction wedge and predual identity -------------------------------


def test_restriction_of_orthant_to_diagonal_plane():
    r = restriction_wedge(orthant(3), diagonal_plane())
    assert r == orthant(2)


def test_restriction_wedge_spans_pairings():
    # each restriction generator is B^T phi for a dual generator phi
    sub = diagonal_plane()
    w = square_based_cone()
    r = restriction_wedge(w, sub)
    expected = Wedge(
        sub.dim,
        [
            RationalVector([phi.dot(b) for b in sub.basis_vectors()])
            for phi in dual_wedge(w).generators
        ],
    )
    assert r == expected


def test_predual_identity_on_fixed_instances():
    assert predual_identity_check(orthant(3), diagonal_plane())
    assert predual_identity_check(square_based_cone(), Subspace.from_vectors([V(0, 0, 1)]))
    assert predual_identity_check(orthant(2), Subspace.full(2))


def test_predual_identity_battery():
    rng = random.Random(31)
    for _ in range(40):
        dim = rng.randint(2, 4)
        w = rand_generating_wedge(rng, dim)
        sub = rand_subspace(rng, dim, rng.randint(1, dim))
        assert predual_identity_check(w, sub)


# --- functional extension ---------------------------------------------------


def test_extend_functional_positive_case():
    result = extend_functional(V(1, 2), diagonal_plane(), orthant(3))
    assert result.extended
    phi = result.functional
    # restriction matches f and phi is nonnegative on the wedge
    assert phi.dot(V(1, 1, 0)) == 1
    assert phi.dot(V(0, 0, 1)) == 2
    assert all(phi.dot(g) >= 0 for g in orthant(3).generators)


def test_extend_functional_negative_case():
    result = extend_functional(V(-1, 0), diagonal_plane(), orthant(3))
    assert not result.extended
    x = result.witness_ambient
    # witness sits in the wedge, inside the subspace, and f is negative on it
    assert orthant(3).contains(x)
    assert diagonal_plane().contains(x)
    assert V(-1, 0).dot(result.witness_coords) < 0


def test_extend_functional_dimension_checks():
    with pytest.raises(InputError):
        extend_functional(V(1), diagonal_plane(), orthant(3))
    with pytest.raises(InputError):
        extend_functional(V(1, 2), diagonal_plane(), orthant(4))


def test_restrictions_of_positive_functionals_always_extend():
    # f = phi restricted to E for phi in the dual: extendable by construction
    rng = random.Random(32)
    for _ in range(40):
        dim = rng.randint(2, 4)
        w = rand_generating_wedge(rng, dim)
        sub = rand_subspace(rng, dim, rng.randint(1, dim))
        duals = dual_wedge(w).generators
        if not duals:
            continue
        phi = duals[rng.randrange(len(duals))]
        f = RationalVector([phi.dot(b) for b in sub.basis_vectors()])
        result = extend_functional(f, sub, w)
        assert result.extended
        ext = result.functional
        assert all(ext.dot(g) >= 0 for g in w.generators)
        for b, fv in zip(sub.basis_vectors(), f):
            assert ext.dot(b) == fv


def test_extension_decision_matches_restriction_wedge_membership():
    # f extends iff f lies in the restriction wedge: two independent routes
    rng = random.Random(33)
    extended = refused = 0
    for _ in range(120):
        dim = rng.randint(2, 4)
        w = rand_generating_wedge(rng, dim)
        sub = rand_subspace(rng, dim, rng.randint(1, dim))
        f = RationalVector([rng.randint(-3, 3) for _ in range(sub.dim)])
        result = extend_functional(f, sub, w)
        in_restriction = cone_membership(
            list(restriction_wedge(w, sub).generators), f
        ).is_member
        assert result.extended == in_restriction
        if result.extended:
            extended += 1
        else:
            refused += 1
            assert w.contains(result.witness_ambient)
            assert sub.contains(result.witness_ambient)
            assert f.dot(result.witness_coords) < 0
    assert extended > 10 and refused > 10


# --- orthant embedding -------------------------------------------------------


def test_orthant_embeds_identically():
    emb = orthant_embedding(orthant(3))
    assert emb.matrix == RationalMatrix.identity(3)
    assert emb.m == 3


def test_square_based_cone_embedding():
    emb = orthant_embedding(square_based_cone())
    assert emb.m == 4
    assert emb.dim == 3
    # bipositive: lattice points land in the orthant iff they lie in the cone
    for point in itertools.product(range(-2, 3), repeat=3):
        x = V(*point)
        image_nonneg = all(e >= 0 for e in emb.embed(x))
        assert image_nonneg == square_based_cone().contains(x)


def test_embedding_rejects_nonpointed_and_nongenerating():
    with pytest.raises(InputError, match="generating pointed"):
        orthant_embedding(Wedge(2, [V(1, 0), V(-1, 0), V(0, 1)]))
    with pytest.raises(InputError, match="generating pointed"):
        orthant_embedding(Wedge(2, [V(1, 0)]))


def test_embedding_battery_is_bipositive_on_generators():
    rng = random.Random(34)
    for _ in range(30):
        dim = rng.randint(2, 4)
        w = rand_generating_wedge(rng, dim)
        if classify(w).lineality_dim != 0:
            continue
        emb = orthant_embedding(w)
        for g in w.generators:
            assert all(e >= 0 for e in emb.embed(g))


# --- operator extension -------------------------------------------------------


def test_tensor_generators_shape_and_pairing():
    emb = orthant_embedding(square_based_cone())
    gens = tensor_cone_generators(emb)
    rays = extremal_rays(square_based_cone())
    assert len(gens) == len(rays) * emb.m
    assert gens[0] == outer(rays[0], emb.dual_rays[0])


def test_identity_extends_over_orthant():
    emb = orthant_embedding(orthant(3))
    result = extend_operator(RationalMatrix.identity(3), emb)
    assert result.extended
    assert result.extension_matrix @ emb.matrix == RationalMatrix.identity(3)


def test_identity_witness_for_square_based_cone():
    emb = orthant_embedding(square_based_cone())
    result = extend_operator(RationalMatrix.identity(3), emb)
    assert not result.extended
    h = result.witness.form
    rays = extremal_rays(square_based_cone())
    for p in rays:
        for q in emb.dual_rays:
            assert p.dot(h.matvec(q)) >= 0
    assert h.trace() < 0


def test_operator_shape_validation():
    emb = orthant_embedding(orthant(2))
    with pytest.raises(InputError):
        extend_operator(RationalMatrix.identity(3), emb)


def test_constructed_tensor_combinations_extend():
    rng = random.Random(35)
    for cone in (orthant(3), square_based_cone()):
        emb = orthant_embedding(cone)
        rays = extremal_rays(cone)
        for _ in range(25):
            op = RationalMatrix.zeros(3, 3)
            for p in rays:
                for q in emb.dual_rays:
                    c = rng.randint(0, 2)
                    if c:
                        op = op + outer(p.scale(c), q)
            result = extend_operator(op, emb)
            assert result.extended
            assert result.extension_matrix @ emb.matrix == op
            assert result.decomposition.reconstruct() == op
            for y in result.columns:
                assert cone.contains(y)


def test_witness_separates_on_random_nonmembers():
    rng = random.Random(36)
    emb = orthant_embedding(square_based_cone())
    rays = extremal_rays(square_based_cone())
    seen = 0
    while seen < 15:
        op = RationalMatrix(
            [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        )
        result = extend_operator(op, emb)
        if result.extended:
            continue
        seen += 1
        h = result.witness.form
        assert all(
            p.dot(h.matvec(q)) >= 0 for p in rays for q in emb.dual_rays
        )
        assert h.vectorize().dot(op.vectorize()) < 0


# --- identity approximability ---------------------------------------------


def test_identity_approximable_on_simplex_cones():
    verdict = identity_approximable(orthant(3))
    assert verdict.approximable and verdict.is_simplex
    skew = Wedge(2, [V(1, 0), V(1, 2)])
    verdict = identity_approximable(skew)
    assert verdict.approximable and verdict.is_simplex


def test_identity_not_approximable_on_square_based_cone():
    verdict = identity_approximable(square_based_cone())
    assert not verdict.approximable
    assert not verdict.is_simplex
    assert verdict.result.witness is not None


def test_identity_approximable_battery_matches_classification():
    # random invertible generator matrices give simplex cones; adding one
    # more generator in general position usually breaks it; either way the
    # decision must match the classification
    rng = random.Random(37)
    for _ in range(30):
        dim = rng.randint(2, 4)
        while True:
            gens = [
                RationalVector([rng.randint(-3, 3) for _ in range(dim)])
                for _ in range(dim + rng.randint(0, 1))
            ]
            w = Wedge(dim, gens)
            shape = classify(w)
            if shape.is_generating and shape.is_cone:
                break
        verdict = identity_approximable(w)
        assert verdict.approximable == shape.is_simplex
