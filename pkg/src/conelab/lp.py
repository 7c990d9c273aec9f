"""Exact linear feasibility and cone membership with certificates.

Both entry points decide their question over the rationals and return a
verifiable object for whichever branch holds, never both:

* feasibility: a point satisfying every constraint exactly, or a Farkas
  certificate (y, z) with z >= 0, y^T Aeq = z^T Ain and y^T beq < 0.
* cone_membership: coefficients lambda >= 0 with sum(lambda_i g_i) equal to
  the target exactly, or a separating witness h with <g_i, h> >= 0 for all
  generators and <target, h> < 0.

The engine is a phase-one simplex with Bland's smallest-index rule, so runs
are deterministic and cycle-free. Tableau rows are kept as integer lists
(each row a positive multiple of the exact row, gcd-reduced after every
pivot); results are reconstructed as Fractions, and each branch re-checks
its own identities before returning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import InputError, InternalConsistencyError
from .linalg import RationalMatrix, RationalVector

# Test harnesses may assign a callable here to observe every decision made
# by this module; see install_audit_hook.
audit_hook: Optional[Callable[[str, tuple, object], None]] = None


def install_audit_hook(hook: Optional[Callable[[str, tuple, object], None]]) -> None:
    """Register a callable invoked as hook(kind, args, result) on every
    feasibility or membership decision. Pass None to remove it."""
    global audit_hook
    audit_hook = hook


@dataclass(frozen=True)
class FeasibilitySystem:
    """Constraints eq_matrix x = eq_rhs together with ineq_matrix x >= 0.

    Either block may be empty (zero rows); column counts must agree.
    """

    eq_matrix: RationalMatrix
    eq_rhs: RationalVector
    ineq_matrix: RationalMatrix

    def __post_init__(self) -> None:
        if self.eq_matrix.rows != self.eq_rhs.dim:
            raise InputError(
                f"eq_rhs has dim {self.eq_rhs.dim}, expected {self.eq_matrix.rows}"
            )
        if self.eq_matrix.cols != self.ineq_matrix.cols:
            raise InputError(
                f"equality block has {self.eq_matrix.cols} columns, "
                f"inequality block has {self.ineq_matrix.cols}"
            )

    @property
    def num_vars(self) -> int:
        return self.eq_matrix.cols


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers proving infeasibility: z >= 0, y^T Aeq = z^T Ain, y^T beq < 0."""

    eq_multipliers: RationalVector
    ineq_multipliers: RationalVector


@dataclass(frozen=True)
class FeasibilityResult:
    point: Optional[RationalVector]
    certificate: Optional[FarkasCertificate]

    def __post_init__(self) -> None:
        if (self.point is None) == (self.certificate is None):
            raise InternalConsistencyError("exactly one branch of a feasibility result must be set")

    @property
    def feasible(self) -> bool:
        return self.point is not None


@dataclass(frozen=True)
class MembershipResult:
    coefficients: Optional[RationalVector]
    witness: Optional[RationalVector]

    def __post_init__(self) -> None:
        if (self.coefficients is None) == (self.witness is None):
            raise InternalConsistencyError("exactly one branch of a membership result must be set")

    @property
    def is_member(self) -> bool:
        return self.coefficients is not None


def _scaled_int_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int, int]:
    """Clear denominators: returns (integer coefficients + rhs, rhs, scale)."""
    scale = 1
    for e in coeffs:
        scale = scale * e.denominator // math.gcd(scale, e.denominator)
    scale = scale * rhs.denominator // math.gcd(scale, rhs.denominator)
    ints = [int(e * scale) for e in coeffs]
    return ints, int(rhs * scale), scale


def _phase_one(
    rows: list[list[Fraction]],
    rhs: list[Fraction],
    ready: list[Optional[int]],
    width: int,
) -> tuple[Optional[list[Fraction]], Optional[list[Fraction]]]:
    """Minimise the artificial sum for rows . x = rhs, x >= 0, rhs >= 0.

    ready[i] names a column usable as row i's initial basic variable: its
    coefficient in row i must be positive and it must not appear in any
    other row. Rows without one get an artificial variable.

    Returns (x, None) with x over the structural columns when feasible,
    else (None, pi) with multipliers on the input rows satisfying
    sum(pi_i rows[i][j]) <= 0 for every column j and pi . rhs > 0.
    """
    m = len(rows)
    tableau: list[list[int]] = []
    scales: list[int] = []
    for coeffs, b in zip(rows, rhs):
        if b < 0:
            raise InternalConsistencyError("phase one requires nonnegative right-hand sides")
        ints, ib, scale = _scaled_int_row(coeffs, b)
        tableau.append(ints + [ib])
        scales.append(scale)

    art_cols: list[Optional[int]] = [None] * m
    basis: list[int] = [0] * m
    init_col: list[int] = [0] * m
    total = width
    for i in range(m):
        if ready[i] is not None:
            basis[i] = init_col[i] = ready[i]
        else:
            art_cols[i] = total
            basis[i] = init_col[i] = total
            total += 1
    # splice artificial columns in (coefficient 1, own row only)
    for i, row in enumerate(tableau):
        body, b = row[:-1], row[-1]
        extra = [0] * (total - width)
        if art_cols[i] is not None:
            extra[art_cols[i] - width] = 1
        tableau[i] = body + extra + [b]

    # reduced cost row for min(sum of artificials), kept integer with its own
    # positive scale; the rhs slot carries -(objective value) * scale
    obj = [0] * (total + 1)
    for j in range(width, total):
        obj[j] = 1
    for i in range(m):
        if art_cols[i] is not None:
            row = tableau[i]
            for j in range(total + 1):
                obj[j] -= row[j]
    obj_scale = 1

    while True:
        enter = -1
        for j in range(total):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_num = best_den = 0
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                num = tableau[i][-1]
                if leave < 0 or num * best_den < best_num * a or (
                    num * best_den == best_num * a and basis[i] < basis[leave]
                ):
                    leave, best_num, best_den = i, num, a
        if leave < 0:
            raise InternalConsistencyError("phase one objective cannot be unbounded")
        pivot_row = tableau[leave]
        p = pivot_row[enter]
        for i in range(m):
            if i == leave:
                continue
            f = tableau[i][enter]
            if f:
                row = tableau[i]
                new = [p * a - f * b for a, b in zip(row, pivot_row)]
                g = 0
                for v in new:
                    g = math.gcd(g, v)
                if g > 1:
                    new = [v // g for v in new]
                tableau[i] = new
        f = obj[enter]
        if f:
            obj = [p * a - f * b for a, b in zip(obj, pivot_row)]
            obj_scale *= p
            g = obj_scale
            for v in obj:
                g = math.gcd(g, v)
            if g > 1:
                obj = [v // g for v in obj]
                obj_scale //= g
        g = 0
        for v in pivot_row:
            g = math.gcd(g, v)
        if g > 1:
            tableau[leave] = [v // g for v in pivot_row]
        basis[leave] = enter

    value = Fraction(-obj[total], obj_scale)
    if value == 0:
        x = [Fraction(0)] * width
        for i in range(m):
            b = basis[i]
            if b < width:
                x[b] = Fraction(tableau[i][-1], tableau[i][b])
        return x, None
    pi: list[Fraction] = []
    for i in range(m):
        j0 = init_col[i]
        cost0 = 1 if art_cols[i] is not None else 0
        d0 = 1 if art_cols[i] is not None else rows[i][j0] * scales[i]
        reduced = Fraction(obj[j0], obj_scale)
        pi.append((cost0 - reduced) / d0 * scales[i])
    return None, pi


def feasibility(system: FeasibilitySystem) -> FeasibilityResult:
    """Decide eq_matrix x = eq_rhs, ineq_matrix x >= 0 over the rationals.

    Free variables are split into positive parts internally; inequality
    rows get slacks. The returned branch is re-verified exactly before it
    leaves this function.
    """
    n = system.num_vars
    k = system.eq_matrix.rows
    m = system.ineq_matrix.rows
    width = 2 * n + m

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    ready: list[Optional[int]] = []
    flips: list[Fraction] = []
    for i in range(k):
        sigma = Fraction(1) if system.eq_rhs[i] >= 0 else Fraction(-1)
        a = system.eq_matrix.entries[i]
        rows.append([sigma * e for e in a] + [-sigma * e for e in a] + [Fraction(0)] * m)
        rhs.append(sigma * system.eq_rhs[i])
        ready.append(None)
        flips.append(sigma)
    for i in range(m):
        # stored as -a.x + s = 0 so the slack column starts basic
        a = system.ineq_matrix.entries[i]
        row = [-e for e in a] + list(a) + [Fraction(0)] * m
        row[2 * n + i] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(0))
        ready.append(2 * n + i)

    x_split, pi = _phase_one(rows, rhs, ready, width)
    if x_split is not None:
        point = RationalVector([x_split[j] - x_split[n + j] for j in range(n)])
        result = FeasibilityResult(point=point, certificate=None)
    else:
        assert pi is not None
        y = RationalVector([-flips[i] * pi[i] for i in range(k)])
        z = RationalVector([-pi[k + i] for i in range(m)])
        joint = RationalVector(list(y.entries) + list(z.entries)).primitive()
        cert = FarkasCertificate(
            eq_multipliers=RationalVector(joint.entries[:k]),
            ineq_multipliers=RationalVector(joint.entries[k:]),
        )
        result = FeasibilityResult(point=None, certificate=cert)
    problems = verify_feasibility(system, result)
    if problems:
        raise InternalConsistencyError("; ".join(problems))
    if audit_hook is not None:
        audit_hook("feasibility", (system,), result)
    return result


def cone_membership(
    generators: Sequence[RationalVector], target: RationalVector
) -> MembershipResult:
    """Decide whether target is a nonnegative combination of the generators.

    The zero target is a member with all-zero coefficients, also over an
    empty generator list. Witnesses come back scaled to integer entries
    with gcd 1.
    """
    for idx, g in enumerate(generators):
        if g.dim != target.dim:
            raise InputError(f"generator {idx}: expected dim {target.dim}, got {g.dim}")
    if target.is_zero():
        return _checked_membership(
            generators, target,
            MembershipResult(coefficients=RationalVector.zero(len(generators)), witness=None),
        )

    n = target.dim
    width = len(generators)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    flips: list[Fraction] = []
    for i in range(n):
        sigma = Fraction(1) if target[i] >= 0 else Fraction(-1)
        rows.append([sigma * g[i] for g in generators])
        rhs.append(sigma * target[i])
        flips.append(sigma)

    lam, pi = _phase_one(rows, rhs, [None] * n, width)
    if lam is not None:
        result = MembershipResult(coefficients=RationalVector(lam), witness=None)
    else:
        assert pi is not None
        h = RationalVector([-flips[i] * pi[i] for i in range(n)]).primitive()
        result = MembershipResult(coefficients=None, witness=h)
    return _checked_membership(generators, target, result)


def _checked_membership(
    generators: Sequence[RationalVector], target: RationalVector, result: MembershipResult
) -> MembershipResult:
    problems = verify_membership(generators, target, result)
    if problems:
        raise InternalConsistencyError("; ".join(problems))
    if audit_hook is not None:
        audit_hook("membership", (tuple(generators), target), result)
    return result


def verify_feasibility(system: FeasibilitySystem, result: FeasibilityResult) -> list[str]:
    """Exact re-check of whichever branch the result carries.

    Returns a list of violated identities, empty when everything holds.
    """
    problems: list[str] = []
    if result.feasible:
        x = result.point
        assert x is not None
        if x.dim != system.num_vars:
            return [f"point has dim {x.dim}, expected {system.num_vars}"]
        if system.eq_matrix.matvec(x) != system.eq_rhs:
            problems.append("point violates an equality constraint")
        for i in range(system.ineq_matrix.rows):
            if system.ineq_matrix.row(i).dot(x) < 0:
                problems.append(f"point violates inequality {i}")
    else:
        cert = result.certificate
        assert cert is not None
        y, z = cert.eq_multipliers, cert.ineq_multipliers
        if y.dim != system.eq_matrix.rows or z.dim != system.ineq_matrix.rows:
            return ["certificate multiplier dimensions are wrong"]
        if any(zi < 0 for zi in z):
            problems.append("inequality multipliers must be nonnegative")
        lhs = system.eq_matrix.transpose().matvec(y)
        rhsv = system.ineq_matrix.transpose().matvec(z)
        if lhs != rhsv:
            problems.append("certificate identity y^T Aeq = z^T Ain fails")
        if y.dot(system.eq_rhs) >= 0:
            problems.append("certificate needs y^T beq < 0")
    return problems


def verify_membership(
    generators: Sequence[RationalVector], target: RationalVector, result: MembershipResult
) -> list[str]:
    """Exact re-check of a membership result; empty list means it holds."""
    problems: list[str] = []
    if result.is_member:
        lam = result.coefficients
        assert lam is not None
        if lam.dim != len(generators):
            return [f"expected {len(generators)} coefficients, got {lam.dim}"]
        if any(c < 0 for c in lam):
            problems.append("coefficients must be nonnegative")
        combo = RationalVector.zero(target.dim)
        for c, g in zip(lam, generators):
            if c:
                combo = combo + g.scale(c)
        if combo != target:
            problems.append("coefficients do not reconstruct the target")
    else:
        h = result.witness
        assert h is not None
        if h.dim != target.dim:
            return [f"witness has dim {h.dim}, expected {target.dim}"]
        for i, g in enumerate(generators):
            if g.dot(h) < 0:
                problems.append(f"witness pairs negatively with generator {i}")
        if target.dot(h) >= 0:
            problems.append("witness needs <target, h> < 0")
    return problems
