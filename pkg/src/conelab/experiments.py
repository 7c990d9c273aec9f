"""Sampling experiments and worked instances.

Two kinds of computation live here, deliberately quarantined from the
exact core:

* almost_all_experiment samples positive functionals on a subspace with
  exact integer coefficients and counts how many extend; on polyhedral
  instances the fraction is exactly 1 and the whole run is reproducible
  bit for bit from the seed.
* The Lorentz instance works in float64. Its positive cone is not
  polyhedral, and the ray where extension fails has an explicit closed
  form, as does the approximating sequence showing the extendable
  functionals are still dense.

counterexample_report packages the square-base cone story: a generating
pointed non-simplex cone whose identity operator admits no positive
rank-one decomposition, with every inequality of the separating form
restated so the conclusion can be checked by hand.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .cones import Wedge, classify, dual_wedge, intersect_subspace
from .errors import InputError
from .extension import (
    IdentityApproximability,
    OperatorExtensionResult,
    OrthantEmbedding,
    extend_functional,
    identity_approximable,
)
from .linalg import RationalVector, Subspace

COEFFICIENT_BOX = 100


@dataclass(frozen=True)
class AlmostAllReport:
    """Outcome of an extendability sampling run.

    fraction is extendable/samples as an exact rational, or None when no
    samples were requested.
    """

    samples: int
    extendable: int
    fraction: Optional[Fraction]
    seed: int
    instance: str


def almost_all_experiment(
    f_plus: Wedge, subspace: Subspace, samples: int, seed: int
) -> AlmostAllReport:
    """Sample positive functionals on the subspace and count extensions.

    The sampling law: functionals are nonnegative integer combinations of
    the generators of the dual of the inherited cone, with coefficients
    drawn uniformly from {0, ..., 100} by a seeded Mersenne Twister. Every
    draw and every decision is exact, so runs with equal seeds are
    identical across platforms.
    """
    if samples < 0:
        raise InputError("sample count must be nonnegative")
    inherited = intersect_subspace(f_plus, subspace)
    law = dual_wedge(inherited)
    rng = random.Random(seed)
    extendable = 0
    for _ in range(samples):
        f = RationalVector.zero(subspace.dim)
        for g in law.generators:
            c = rng.randint(0, COEFFICIENT_BOX)
            if c:
                f = f + g.scale(c)
        if extend_functional(f, subspace, f_plus).extended:
            extendable += 1
    fraction = Fraction(extendable, samples) if samples else None
    instance = (
        f"F+ dim {f_plus.ambient_dim} with {len(f_plus.generators)} generators; "
        f"E dim {subspace.dim}; sampling over {len(law.generators)} dual generators, "
        f"coefficients in [0, {COEFFICIENT_BOX}]"
    )
    return AlmostAllReport(
        samples=samples,
        extendable=extendable,
        fraction=fraction,
        seed=seed,
        instance=instance,
    )


@dataclass(frozen=True)
class LorentzFunctional:
    """Functional on the plane spanned by (1,0,1) and (0,1,0) inside the
    Lorentz cone's space, given by its values (u, v) on that basis."""

    u: float
    v: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise InputError("Lorentz functional coordinates must be finite")


@dataclass(frozen=True)
class LorentzExtension:
    extendable: bool
    phi: Optional[tuple[float, float, float]]


def lorentz_extendable(f: LorentzFunctional) -> LorentzExtension:
    """Closed-form extension test over the Lorentz cone z >= sqrt(x^2+y^2).

    The inherited cone on the plane is the single ray through (1,0,1), so
    f is positive exactly when u >= 0; it extends exactly when u > 0 or
    f = 0. For u > 0 the extension (a, b, c) = (u - c, v, (u^2+v^2)/(2u))
    sits on the boundary of the (self-dual) cone with a + c = u, b = v.
    """
    u, v = f.u, f.v
    if u == 0.0 and v == 0.0:
        return LorentzExtension(extendable=True, phi=(0.0, 0.0, 0.0))
    if u > 0.0:
        c = (u * u + v * v) / (2.0 * u)
        return LorentzExtension(extendable=True, phi=(u - c, v, c))
    return LorentzExtension(extendable=False, phi=None)


def lorentz_approximate(
    f: LorentzFunctional, eps: float
) -> Iterator[tuple[LorentzFunctional, tuple[float, float, float]]]:
    """Extendable functionals marching toward a non-extendable one.

    Yields (f_k, phi_k) with f_k = (1/k, v) for k = 1, ..., ceil(1/eps),
    each phi_k an exact closed-form extension of f_k; the final gap to f
    is 1/ceil(1/eps) <= eps. Raises when f is already extendable (nothing
    to approximate) or eps is not positive.
    """
    if not (eps > 0.0) or not math.isfinite(eps):
        raise InputError("eps must be a positive finite number")
    if lorentz_extendable(f).extendable:
        raise InputError("nothing to approximate: the functional is already extendable")
    steps = math.ceil(1.0 / eps)
    for k in range(1, steps + 1):
        fk = LorentzFunctional(1.0 / k, f.v)
        ext = lorentz_extendable(fk)
        assert ext.phi is not None
        yield fk, ext.phi


@dataclass(frozen=True)
class LorentzApproximationReport:
    """Summary of a full approximation run, small enough to serialize."""

    target: LorentzFunctional
    eps: float
    steps: int
    final: LorentzFunctional
    final_phi: tuple[float, float, float]
    max_gap: float
    max_cone_residual: float
    max_restriction_error: float


def lorentz_approximation_report(f: LorentzFunctional, eps: float) -> LorentzApproximationReport:
    """Run lorentz_approximate to completion, verifying every element.

    Tracks the worst relative cone residual |c^2 - a^2 - b^2| / c^2 and
    the worst restriction mismatch against (1/k, v) along the way.
    """
    steps = 0
    worst_residual = 0.0
    worst_restriction = 0.0
    last: Optional[tuple[LorentzFunctional, tuple[float, float, float]]] = None
    for fk, phi in lorentz_approximate(f, eps):
        a, b, c = phi
        worst_residual = max(worst_residual, abs(c * c - a * a - b * b) / (c * c))
        worst_restriction = max(
            worst_restriction, abs((a + c) - fk.u), abs(b - fk.v)
        )
        steps += 1
        last = (fk, phi)
    assert last is not None
    final, final_phi = last
    return LorentzApproximationReport(
        target=f,
        eps=eps,
        steps=steps,
        final=final,
        final_phi=final_phi,
        max_gap=abs(final.u - f.u),
        max_cone_residual=worst_residual,
        max_restriction_error=worst_restriction,
    )


@dataclass(frozen=True)
class LorentzDensityReport:
    """Extendability frequency for (u, v) sampled from [0,1] x [-1,1]."""

    samples: int
    extendable: int
    fraction: float
    seed: int


def lorentz_density_experiment(samples: int, seed: int) -> LorentzDensityReport:
    """Sample float functionals on the Lorentz instance and count extensions.

    Positivity holds on u >= 0 while extension needs u > 0, so the
    non-extendable positives form a null set and the measured fraction
    sits at 1 up to the probability of drawing u = 0.0 exactly.
    """
    if samples < 0:
        raise InputError("sample count must be nonnegative")
    rng = random.Random(seed)
    extendable = 0
    for _ in range(samples):
        f = LorentzFunctional(rng.random(), 2.0 * rng.random() - 1.0)
        if lorentz_extendable(f).extendable:
            extendable += 1
    fraction = extendable / samples if samples else float("nan")
    return LorentzDensityReport(
        samples=samples, extendable=extendable, fraction=fraction, seed=seed
    )


@dataclass(frozen=True)
class CounterexampleReport:
    """Identity-extendability verdict for one cone, with full evidence."""

    cone: Wedge
    simplex: bool
    identity_extendable: bool
    strict_containment: bool
    embedding: OrthantEmbedding
    result: OperatorExtensionResult

    def text_block(self) -> str:
        """Human-readable restatement of every verified inequality."""
        from .cones import extremal_rays

        lines = [
            f"cone: {len(self.cone.generators)} generators in dimension {self.cone.ambient_dim}",
            f"simplex cone: {'yes' if self.simplex else 'no'}",
            f"identity extendable: {'yes' if self.identity_extendable else 'no'}",
        ]
        rays = extremal_rays(self.cone)
        duals = self.embedding.dual_rays
        if self.identity_extendable:
            assert self.result.decomposition is not None
            lines.append("identity = sum of positive rank-one tensors:")
            for term in self.result.decomposition.terms:
                lines.append(
                    f"  {term.coefficient} * {tuple(map(str, term.vector.entries))}"
                    f" (x) {tuple(map(str, term.functional.entries))}"
                )
            lines.append(
                "conclusion: the extendable positive operators exhaust the positive cone"
            )
        else:
            assert self.result.witness is not None
            h = self.result.witness.form
            lines.append("separating bilinear form H (rows):")
            for row in h.entries:
                lines.append("  [" + " ".join(str(e) for e in row) + "]")
            lines.append(
                f"pairings p^T H q over all {len(rays)} x {len(duals)} generator pairs:"
            )
            for i, p in enumerate(rays):
                for j, q in enumerate(duals):
                    value = p.dot(h.matvec(q))
                    lines.append(
                        f"  p{i + 1}^T H q{j + 1} = {value}  (>= 0)"
                    )
            lines.append(f"<identity, H> = trace(H) = {h.trace()}  (< 0)")
            lines.append(
                "conclusion: extendable positive operators form a closed cone "
                "strictly contained in the positive operators"
            )
        return "\n".join(lines)


def counterexample_report(e_plus: Wedge) -> CounterexampleReport:
    """Assemble the identity-extendability story for a cone.

    Runs the embedding, the classification and the identity test (whose
    agreement is asserted internally) and restates the evidence.
    """
    verdict: IdentityApproximability = identity_approximable(e_plus)
    return CounterexampleReport(
        cone=e_plus,
        simplex=verdict.is_simplex,
        identity_extendable=verdict.approximable,
        strict_containment=not verdict.is_simplex,
        embedding=verdict.embedding,
        result=verdict.result,
    )
