"""Finitely generated wedges: duality, extremal rays, classification.

A wedge is the set of nonnegative rational combinations of finitely many
generators. Generators are stored canonically (integer entries with gcd 1,
deduplicated, descending lexicographic order), so two equal constructions
produce structurally equal objects and serialized output is reproducible.

Duals are computed by the double description method: the lineality space
of the inequality system is split off exactly, the pointed part is built
ray by ray from a simplicial start, and adjacency is decided by the
standard zero-set containment test. Everything is exact; membership
questions go through the certified LP layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import lp
from .errors import InputError
from .linalg import (
    RationalMatrix,
    RationalVector,
    Subspace,
    inverse,
    kernel_basis,
    rank,
)


class Wedge:
    """A finitely generated wedge in Q^n, canonically stored.

    The zero wedge is the empty generator list; a zero vector is never a
    generator. ambient_dim is kept explicitly since generators may be
    absent or fail to span.
    """

    __slots__ = ("ambient_dim", "generators")

    def __init__(self, ambient_dim: int, generators: Iterable[RationalVector] = ()) -> None:
        if ambient_dim < 1:
            raise InputError("ambient_dim must be at least 1")
        canonical: list[RationalVector] = []
        seen = set()
        for idx, g in enumerate(generators):
            if not isinstance(g, RationalVector):
                g = RationalVector(g)
            if g.dim != ambient_dim:
                raise InputError(f"generator {idx}: expected dim {ambient_dim}, got {g.dim}")
            g = g.primitive()
            if g.is_zero() or g.entries in seen:
                continue
            seen.add(g.entries)
            canonical.append(g)
        canonical.sort(key=lambda v: v.entries, reverse=True)
        self.ambient_dim = ambient_dim
        self.generators: tuple[RationalVector, ...] = tuple(canonical)

    def __eq__(self, other: object) -> bool:
        """Structural equality of canonical forms; use wedge_equal for
        equality as sets."""
        return (
            isinstance(other, Wedge)
            and self.ambient_dim == other.ambient_dim
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.generators))

    def __repr__(self) -> str:
        return f"Wedge(dim={self.ambient_dim}, {len(self.generators)} generators)"

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, x: RationalVector) -> bool:
        return lp.cone_membership(self.generators, x).is_member


@dataclass(frozen=True)
class WedgeClass:
    """Structural classification of a wedge."""

    is_generating: bool
    lineality_dim: int
    is_cone: bool
    is_simplex: bool


def orthant(dim: int) -> Wedge:
    """The standard nonnegative orthant in Q^dim."""
    return Wedge(dim, [RationalVector.unit(dim, i) for i in range(dim)])


def full_space_wedge(dim: int) -> Wedge:
    units = [RationalVector.unit(dim, i) for i in range(dim)]
    return Wedge(dim, units + [-u for u in units])


def _independent_row_indices(rows: Sequence[RationalVector], dim: int, need: int) -> list[int]:
    chosen: list[int] = []
    current = 0
    for i, row in enumerate(rows):
        candidate = [rows[j] for j in chosen] + [row]
        r = rank(RationalMatrix.from_rows(candidate, cols=dim))
        if r > current:
            chosen.append(i)
            current = r
            if current == need:
                break
    return chosen


def _dd_pointed(constraints: list[RationalVector], start: list[int], dim: int) -> list[RationalVector]:
    """Double description for a pointed cone {t : <c, t> >= 0 for all c}.

    start indexes dim constraints forming an invertible matrix; the cone
    they cut out is simplicial and seeds the ray list. Remaining
    constraints are inserted one at a time. Returns the extremal rays.
    """
    m0 = RationalMatrix.from_rows([constraints[i] for i in start])
    inv = inverse(m0)
    assert inv is not None
    rays: list[RationalVector] = [inv.col(j).primitive() for j in range(dim)]
    zerosets: list[set[int]] = [set(range(dim)) - {j} for j in range(dim)]

    order = list(start) + [i for i in range(len(constraints)) if i not in set(start)]
    for pos in range(dim, len(order)):
        a = constraints[order[pos]]
        pair = [a.dot(r) for r in rays]
        pos_idx = [i for i, p in enumerate(pair) if p > 0]
        zero_idx = [i for i, p in enumerate(pair) if p == 0]
        neg_idx = [i for i, p in enumerate(pair) if p < 0]
        if not neg_idx:
            for i in zero_idx:
                zerosets[i].add(pos)
            continue
        new_rays: list[RationalVector] = []
        new_zero: list[set[int]] = []
        for i in pos_idx:
            new_rays.append(rays[i])
            new_zero.append(zerosets[i])
        for i in zero_idx:
            new_rays.append(rays[i])
            new_zero.append(zerosets[i] | {pos})
        for ip in pos_idx:
            zp = zerosets[ip]
            for ineg in neg_idx:
                common = zp & zerosets[ineg]
                adjacent = True
                for other in range(len(rays)):
                    if other in (ip, ineg):
                        continue
                    if common <= zerosets[other]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = rays[ineg].scale(pair[ip]) - rays[ip].scale(pair[ineg])
                new_rays.append(combo.primitive())
                new_zero.append(common | {pos})
        rays = new_rays
        zerosets = new_zero
        if not rays:
            break
    return rays


def cone_from_inequalities(normals: Sequence[RationalVector], dim: int) -> Wedge:
    """Generators of {x in Q^dim : <n, x> >= 0 for every normal n}.

    The lineality space (kernel of the normal matrix) is split off first;
    the pointed remainder lives in coordinates over independent normals
    and is enumerated by double description. Lineality directions come
    back as +/- pairs of generators.
    """
    cleaned: list[RationalVector] = []
    seen = set()
    for n in normals:
        if n.dim != dim:
            raise InputError(f"normal has dim {n.dim}, expected {dim}")
        n = n.primitive()
        if n.is_zero() or n.entries in seen:
            continue
        seen.add(n.entries)
        cleaned.append(n)
    if not cleaned:
        return full_space_wedge(dim)

    matrix = RationalMatrix.from_rows(cleaned, cols=dim)
    lineality = kernel_basis(matrix)
    r = dim - len(lineality)
    generators: list[RationalVector] = []
    for l in lineality:
        generators.append(l)
        generators.append(-l)
    if r == 0:
        return Wedge(dim, generators)

    chosen = _independent_row_indices(cleaned, dim, r)
    # the chosen normals span a complement of the kernel, so they serve as
    # coordinates for the pointed part: x = sum t_j * b_j
    basis_vectors = [cleaned[i] for i in chosen]
    reduced = [
        RationalVector([n.dot(b) for b in basis_vectors]) for n in cleaned
    ]
    rays_t = _dd_pointed(reduced, chosen, r)
    for t in rays_t:
        x = RationalVector.zero(dim)
        for coeff, b in zip(t, basis_vectors):
            if coeff:
                x = x + b.scale(coeff)
        generators.append(x)
    return Wedge(dim, generators)


def dual_wedge(wedge: Wedge) -> Wedge:
    """The dual wedge {phi : <g, phi> >= 0 for every generator g}.

    Computed by double description; the dual of the zero wedge is the full
    space, represented by the +/- unit generators.
    """
    return cone_from_inequalities(wedge.generators, wedge.ambient_dim)


def lineality_dimension(wedge: Wedge) -> int:
    """Dimension of wedge intersect -wedge.

    A generator g lies in the lineality space exactly when -g is still in
    the wedge; the lineality space is spanned by those generators.
    """
    if not wedge.generators:
        return 0
    symmetric = [
        g for g in wedge.generators
        if lp.cone_membership(wedge.generators, -g).is_member
    ]
    if not symmetric:
        return 0
    return rank(RationalMatrix.from_rows(symmetric, cols=wedge.ambient_dim))


def extremal_rays(wedge: Wedge) -> list[RationalVector]:
    """The extremal rays of a pointed wedge, canonically normalized.

    A generator is dropped when it is a nonnegative combination of the
    others; what survives is exactly the set of extremal rays. Raises for
    non-pointed wedges, where extremal rays are undefined.
    """
    if lineality_dimension(wedge) != 0:
        raise InputError("extremal rays are undefined for a non-pointed wedge")
    current = list(wedge.generators)
    for g in wedge.generators:
        if len(current) == 1:
            break
        others = [h for h in current if h != g]
        if lp.cone_membership(others, g).is_member:
            current = others
    return current


def classify(wedge: Wedge) -> WedgeClass:
    """Generating / pointed / simplex classification.

    A wedge is a cone when its lineality space is trivial, and a simplex
    cone when additionally its extremal rays are linearly independent and
    span the ambient space.
    """
    gen_rank = rank(RationalMatrix.from_rows(list(wedge.generators), cols=wedge.ambient_dim))
    is_generating = gen_rank == wedge.ambient_dim
    lin_dim = lineality_dimension(wedge)
    is_cone = lin_dim == 0
    is_simplex = False
    if is_cone and is_generating:
        rays = extremal_rays(wedge)
        is_simplex = len(rays) == wedge.ambient_dim
    return WedgeClass(
        is_generating=is_generating,
        lineality_dim=lin_dim,
        is_cone=is_cone,
        is_simplex=is_simplex,
    )


def wedge_equal(a: Wedge, b: Wedge) -> bool:
    """Equality as sets, decided by mutual generator membership."""
    if a.ambient_dim != b.ambient_dim:
        raise InputError(f"dimension mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.generators == b.generators:
        return True
    return all(lp.cone_membership(b.generators, g).is_member for g in a.generators) and all(
        lp.cone_membership(a.generators, g).is_member for g in b.generators
    )


def double_dual_check(wedge: Wedge) -> bool:
    """Whether the double dual reproduces the wedge.

    True for every finitely generated wedge (they are closed); exposed as
    a check rather than assumed.
    """
    return wedge_equal(dual_wedge(dual_wedge(wedge)), wedge)


def intersect_subspace(wedge: Wedge, subspace: Subspace) -> Wedge:
    """The wedge cut down to a subspace, in subspace coordinates.

    Uses the dual description: x = B c lies in the wedge exactly when
    every dual generator pairs nonnegatively, which reads <B^T d, c> >= 0
    in coordinates.
    """
    if subspace.ambient_dim != wedge.ambient_dim:
        raise InputError(
            f"dimension mismatch: subspace ambient {subspace.ambient_dim}, wedge {wedge.ambient_dim}"
        )
    bt = subspace.basis.transpose()
    normals = [bt.matvec(d) for d in dual_wedge(wedge).generators]
    return cone_from_inequalities(normals, subspace.dim)
