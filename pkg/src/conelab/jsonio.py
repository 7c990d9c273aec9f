"""JSON serialization for every public object.

Rationals travel as strings "p/q" (or "p" when the denominator is 1) with
the sign on the numerator; vectors and matrices are nested arrays of such
strings. Parsing normalizes on load, so "2/4" comes back as "1/2", and
every diagnostic names the offending field. The CLI calls these same
functions, which keeps its output byte-identical to library serialization.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from .cones import Wedge, WedgeClass
from .errors import InputError
from .experiments import (
    AlmostAllReport,
    CounterexampleReport,
    LorentzApproximationReport,
    LorentzDensityReport,
    LorentzExtension,
    LorentzFunctional,
)
from .extension import (
    FunctionalExtensionResult,
    IdentityApproximability,
    OperatorExtensionResult,
    OrthantEmbedding,
    TensorDecomposition,
)
from .linalg import RationalMatrix, RationalVector, Subspace, format_rational
from .lp import FarkasCertificate, FeasibilityResult, MembershipResult


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{where}: expected a rational string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: malformed rational {value!r} ({exc})") from None


def vector_to_json(v: RationalVector) -> list[str]:
    return [format_rational(e) for e in v]


def parse_vector(data: Any, where: str, expect_dim: Optional[int] = None) -> RationalVector:
    if not isinstance(data, list):
        raise InputError(f"{where}: expected an array")
    if expect_dim is not None and len(data) != expect_dim:
        raise InputError(f"{where}: expected dim {expect_dim}, got {len(data)}")
    return RationalVector(parse_rational(e, f"{where}[{i}]") for i, e in enumerate(data))


def matrix_to_json(m: RationalMatrix) -> list[list[str]]:
    return [[format_rational(e) for e in row] for row in m.entries]


def parse_matrix(data: Any, where: str) -> RationalMatrix:
    if not isinstance(data, list) or not data:
        raise InputError(f"{where}: expected a nonempty array of rows")
    width = None
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list):
            raise InputError(f"{where}[{i}]: expected an array")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{where}[{i}]: expected {width} entries, got {len(row)}")
        rows.append([parse_rational(e, f"{where}[{i}][{j}]") for j, e in enumerate(row)])
    return RationalMatrix(rows)


def wedge_to_json(w: Wedge) -> dict:
    return {"dim": w.ambient_dim, "generators": [vector_to_json(g) for g in w.generators]}


def parse_wedge(data: Any) -> Wedge:
    if not isinstance(data, dict):
        raise InputError("wedge: expected an object with 'dim' and 'generators'")
    if "dim" not in data:
        raise InputError("wedge: missing field 'dim'")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InputError(f"dim: expected a positive integer, got {dim!r}")
    gens_data = data.get("generators")
    if not isinstance(gens_data, list):
        raise InputError("generators: expected an array")
    generators = []
    for i, g in enumerate(gens_data):
        if not isinstance(g, list):
            raise InputError(f"generator {i}: expected an array")
        if len(g) != dim:
            raise InputError(f"generator {i}: expected dim {dim}")
        generators.append(
            RationalVector(parse_rational(e, f"generator {i}[{j}]") for j, e in enumerate(g))
        )
    return Wedge(dim, generators)


def subspace_to_json(s: Subspace) -> dict:
    return {
        "ambient_dim": s.ambient_dim,
        "basis": [vector_to_json(c) for c in s.basis.col_vectors()],
    }


def parse_subspace(data: Any) -> Subspace:
    if not isinstance(data, dict):
        raise InputError("subspace: expected an object with 'ambient_dim' and 'basis'")
    if "ambient_dim" not in data:
        raise InputError("subspace: missing field 'ambient_dim'")
    n = data["ambient_dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"ambient_dim: expected a positive integer, got {n!r}")
    basis_data = data.get("basis")
    if not isinstance(basis_data, list) or not basis_data:
        raise InputError("basis: expected a nonempty array of columns")
    cols = []
    for i, col in enumerate(basis_data):
        if not isinstance(col, list):
            raise InputError(f"basis column {i}: expected an array")
        if len(col) != n:
            raise InputError(f"basis column {i}: expected dim {n}")
        cols.append(
            RationalVector(parse_rational(e, f"basis column {i}[{j}]") for j, e in enumerate(col))
        )
    return Subspace.from_vectors(cols)


def load_json(text: str, where: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: malformed JSON ({exc})") from None


def parse_wedge_file(path: str) -> Wedge:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_wedge(load_json(handle.read(), path))


def parse_subspace_file(path: str) -> Subspace:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_subspace(load_json(handle.read(), path))


def wedge_class_to_json(c: WedgeClass) -> dict:
    return {
        "is_generating": c.is_generating,
        "lineality_dim": c.lineality_dim,
        "is_cone": c.is_cone,
        "is_simplex": c.is_simplex,
    }


def farkas_to_json(cert: FarkasCertificate) -> dict:
    return {
        "eq_multipliers": vector_to_json(cert.eq_multipliers),
        "ineq_multipliers": vector_to_json(cert.ineq_multipliers),
    }


def feasibility_to_json(result: FeasibilityResult) -> dict:
    if result.feasible:
        assert result.point is not None
        return {"status": "feasible", "point": vector_to_json(result.point)}
    assert result.certificate is not None
    return {"status": "infeasible", "certificate": farkas_to_json(result.certificate)}


def membership_to_json(result: MembershipResult) -> dict:
    if result.is_member:
        assert result.coefficients is not None
        return {"status": "member", "coefficients": vector_to_json(result.coefficients)}
    assert result.witness is not None
    return {"status": "not_member", "witness": vector_to_json(result.witness)}


def functional_extension_to_json(
    result: FunctionalExtensionResult,
    f: RationalVector,
    subspace: Subspace,
    f_plus: Wedge,
) -> dict:
    """Result plus a certificate block echoing every verification pairing."""
    if result.extended:
        phi = result.functional
        assert phi is not None
        return {
            "status": "extended",
            "functional": vector_to_json(phi),
            "certificate": {
                "restriction": vector_to_json(subspace.basis.transpose().matvec(phi)),
                "generator_pairings": [
                    format_rational(g.dot(phi)) for g in f_plus.generators
                ],
            },
        }
    coords = result.witness_coords
    ambient = result.witness_ambient
    assert coords is not None and ambient is not None
    from .extension import restriction_wedge

    restrictions = restriction_wedge(f_plus, subspace)
    return {
        "status": "not_extendable",
        "witness_coords": vector_to_json(coords),
        "witness_ambient": vector_to_json(ambient),
        "certificate": {
            "functional_value": format_rational(f.dot(coords)),
            "restriction_pairings": [
                format_rational(r.dot(coords)) for r in restrictions.generators
            ],
        },
    }


def embedding_to_json(embedding: OrthantEmbedding) -> dict:
    return {
        "cone": wedge_to_json(embedding.cone),
        "m": embedding.m,
        "dual_rays": [vector_to_json(phi) for phi in embedding.dual_rays],
        "matrix": matrix_to_json(embedding.matrix),
    }


def decomposition_to_json(dec: TensorDecomposition) -> dict:
    return {
        "terms": [
            {
                "coefficient": format_rational(t.coefficient),
                "vector": vector_to_json(t.vector),
                "functional": vector_to_json(t.functional),
            }
            for t in dec.terms
        ],
        "reconstruction": matrix_to_json(dec.reconstruct()),
    }


def operator_extension_to_json(
    result: OperatorExtensionResult,
    operator: RationalMatrix,
    embedding: OrthantEmbedding,
) -> dict:
    from .cones import extremal_rays

    if result.extended:
        assert result.columns is not None
        assert result.extension_matrix is not None
        assert result.decomposition is not None
        return {
            "status": "extended",
            "columns": [vector_to_json(y) for y in result.columns],
            "extension_matrix": matrix_to_json(result.extension_matrix),
            "decomposition": decomposition_to_json(result.decomposition),
            "certificate": {
                "reconstruction": matrix_to_json(
                    result.extension_matrix @ embedding.matrix
                ),
            },
        }
    assert result.witness is not None
    h = result.witness.form
    rays = extremal_rays(embedding.cone)
    pairings = [
        {
            "ray": i,
            "dual_ray": j,
            "value": format_rational(p.dot(h.matvec(q))),
        }
        for i, p in enumerate(rays)
        for j, q in enumerate(embedding.dual_rays)
    ]
    return {
        "status": "not_extendable",
        "witness": matrix_to_json(h),
        "certificate": {
            "pairings": pairings,
            "operator_pairing": format_rational(
                h.vectorize().dot(operator.vectorize())
            ),
        },
    }


def identity_approximability_to_json(verdict: IdentityApproximability) -> dict:
    d = verdict.embedding.dim
    return {
        "approximable": verdict.approximable,
        "is_simplex": verdict.is_simplex,
        "detail": operator_extension_to_json(
            verdict.result, RationalMatrix.identity(d), verdict.embedding
        ),
    }


def almost_all_to_json(report: AlmostAllReport) -> dict:
    return {
        "samples": report.samples,
        "extendable": report.extendable,
        "fraction": None if report.fraction is None else format_rational(report.fraction),
        "seed": report.seed,
        "instance": report.instance,
    }


def lorentz_functional_to_json(f: LorentzFunctional) -> list[float]:
    return [f.u, f.v]


def lorentz_extension_to_json(f: LorentzFunctional, result: LorentzExtension) -> dict:
    out: dict = {
        "functional": lorentz_functional_to_json(f),
        "extendable": result.extendable,
    }
    if result.extendable:
        assert result.phi is not None
        out["phi"] = list(result.phi)
    return out


def lorentz_approximation_to_json(report: LorentzApproximationReport) -> dict:
    return {
        "target": lorentz_functional_to_json(report.target),
        "eps": report.eps,
        "steps": report.steps,
        "final": lorentz_functional_to_json(report.final),
        "final_phi": list(report.final_phi),
        "max_gap": report.max_gap,
        "max_cone_residual": report.max_cone_residual,
        "max_restriction_error": report.max_restriction_error,
    }


def lorentz_density_to_json(report: LorentzDensityReport) -> dict:
    return {
        "samples": report.samples,
        "extendable": report.extendable,
        "fraction": report.fraction,
        "seed": report.seed,
    }


def counterexample_to_json(report: CounterexampleReport) -> dict:
    return {
        "cone": wedge_to_json(report.cone),
        "simplex": report.simplex,
        "identity_extendable": report.identity_extendable,
        "strict_containment": report.strict_containment,
        "detail": operator_extension_to_json(
            report.result,
            RationalMatrix.identity(report.cone.ambient_dim),
            report.embedding,
        ),
    }


def dumps(payload: Any) -> str:
    """Canonical JSON rendering: two-space indent, stable key order as
    constructed, trailing newline."""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"
