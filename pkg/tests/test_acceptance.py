"""Acceptance gate: nine exact, certificate-backed criteria.

Criteria run in order; run pytest with -s to see one PASS line per
criterion. A module-wide audit hook re-verifies every LP decision made
anywhere below with independent arithmetic, and criterion 8 asserts
that log is clean. No criterion uses a tolerance except the float-only
Lorentz checks (gap 1e-6, relative residual 1e-9), which are pinned
here and nowhere else.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conelab import lp
from conelab.cones import (
    Wedge,
    classify,
    double_dual_check,
    dual_wedge,
    extremal_rays,
    intersect_subspace,
    orthant,
)
from conelab.experiments import (
    LorentzFunctional,
    almost_all_experiment,
    lorentz_approximation_report,
    lorentz_density_experiment,
    lorentz_extendable,
)
from conelab.extension import (
    extend_functional,
    extend_operator,
    identity_approximable,
    orthant_embedding,
)
from conelab.linalg import (
    RationalMatrix,
    RationalVector,
    Subspace,
    inverse,
    outer,
    rank,
)


def announce(criterion, detail):
    print(f"ACCEPTANCE {criterion}: PASS ({detail})")


def V(*entries):
    return RationalVector(entries)


def square_based_cone():
    return Wedge(3, [V(1, 1, 1), V(1, -1, 1), V(-1, 1, 1), V(-1, -1, 1)])


def pentagonal_cone():
    return Wedge(3, [
        V(1000, 0, 1000),
        V(309, 951, 1000),
        V(-809, 588, 1000),
        V(-809, -588, 1000),
        V(309, -951, 1000),
    ])


# --- audit wrapper: criterion 8 watches everything below -------------------


def _audit_feasibility(system, result):
    problems = []
    if result.point is not None:
        x = result.point
        if system.eq_matrix.matvec(x) != system.eq_rhs:
            problems.append("feasible point violates equalities")
        if any(system.ineq_matrix.row(i).dot(x) < 0 for i in range(system.ineq_matrix.rows)):
            problems.append("feasible point violates inequalities")
    else:
        cert = result.certificate
        y, z = cert.eq_multipliers, cert.ineq_multipliers
        if any(zi < 0 for zi in z):
            problems.append("certificate has negative inequality multiplier")
        if system.eq_matrix.transpose().matvec(y) != system.ineq_matrix.transpose().matvec(z):
            problems.append("certificate combination identity fails")
        if y.dot(system.eq_rhs) >= 0:
            problems.append("certificate value is not negative")
    return problems


def _audit_membership(generators, target, result):
    problems = []
    if result.coefficients is not None:
        lam = result.coefficients
        if any(c < 0 for c in lam):
            problems.append("negative combination coefficient")
        combo = RationalVector.zero(target.dim)
        for c, g in zip(lam, generators):
            if c:
                combo = combo + g.scale(c)
        if combo != target:
            problems.append("coefficients fail to reconstruct the target")
    else:
        h = result.witness
        if any(g.dot(h) < 0 for g in generators):
            problems.append("witness pairs negatively with a generator")
        if target.dot(h) >= 0:
            problems.append("witness fails to separate the target")
    return problems


@pytest.fixture(scope="module", autouse=True)
def lp_audit():
    record = {"calls": 0, "problems": []}

    def hook(kind, args, result):
        record["calls"] += 1
        if kind == "feasibility":
            (system,) = args
            exclusive = (result.point is None) != (result.certificate is None)
            problems = _audit_feasibility(system, result)
        else:
            generators, target = args
            exclusive = (result.coefficients is None) != (result.witness is None)
            problems = _audit_membership(generators, target, result)
        if not exclusive:
            problems.append("result does not carry exactly one branch")
        record["problems"].extend(problems)

    lp.install_audit_hook(hook)
    yield record
    lp.install_audit_hook(None)


# --- shared random instances for criteria 2, 3 and 4 -----------------------


@pytest.fixture(scope="module")
def instances():
    rng = random.Random(202)
    pairs = []
    for _ in range(100):
        dim = rng.randint(2, 4)
        gens = [
            RationalVector([rng.randint(-3, 3) for _ in range(dim)])
            for _ in range(rng.randint(1, 8))
        ]
        wedge = Wedge(dim, gens)
        k = rng.randint(1, dim)
        while True:
            basis = [
                RationalVector([rng.randint(-3, 3) for _ in range(dim)])
                for _ in range(k)
            ]
            if rank(RationalMatrix.from_cols(basis, dim=dim)) == k:
                break
        pairs.append((wedge, Subspace.from_vectors(basis)))
    return pairs


def sample_positive_functional(rng, law, dim):
    f = RationalVector.zero(dim)
    for g in law.generators:
        c = rng.randint(0, 100)
        if c:
            f = f + g.scale(c)
    return f


# --- criteria ----------------------------------------------------------------


def test_criterion_1_bipolar_suite():
    rng = random.Random(201)
    start = time.perf_counter()
    for _ in range(200):
        dim = rng.randint(1, 5)
        gens = [
            RationalVector([rng.randint(-3, 3) for _ in range(dim)])
            for _ in range(rng.randint(0, 10))
        ]
        assert double_dual_check(Wedge(dim, gens))
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    announce(1, f"200 wedges double-dualized exactly in {elapsed:.2f}s")


def test_criterion_2_predual_identity(instances):
    from conelab.extension import predual_identity_check

    for wedge, sub in instances:
        assert predual_identity_check(wedge, sub)
    announce(2, "inherited wedge equals the predual of the restriction wedge, 100/100")


def test_criterion_3_positive_functionals_all_extend(instances):
    rng = random.Random(203)
    checked = 0
    for wedge, sub in instances:
        law = dual_wedge(intersect_subspace(wedge, sub))
        for _ in range(1000):
            f = sample_positive_functional(rng, law, sub.dim)
            result = extend_functional(f, sub, wedge)
            assert result.extended, "a positive functional failed to extend"
            phi = result.functional
            # exact re-verification against every generator and basis vector
            assert all(phi.dot(g) >= 0 for g in wedge.generators)
            restriction = RationalVector([phi.dot(b) for b in sub.basis_vectors()])
            assert restriction == f
            checked += 1
    assert checked == 100_000
    announce(3, "100000 sampled positive functionals extended, zero failures")


def test_criterion_4_almost_all_fractions(instances):
    for wedge, sub in instances[:5]:
        report = almost_all_experiment(wedge, sub, 200, seed=7)
        assert report.fraction == Fraction(1)
    lorentz = lorentz_density_experiment(100_000, seed=2026)
    assert lorentz.samples == 100_000
    assert lorentz.fraction >= 1.0 - 1e-6
    announce(4, f"polyhedral fractions exactly 1; Lorentz fraction {lorentz.fraction}")


def test_criterion_5_density_at_nonextendable_point():
    f = LorentzFunctional(0.0, 1.0)
    assert not lorentz_extendable(f).extendable
    report = lorentz_approximation_report(f, 1e-6)
    assert report.steps == 10**6
    assert report.max_gap <= 1e-6
    assert report.max_cone_residual <= 1e-9
    assert report.max_restriction_error <= 1e-9
    announce(
        5,
        f"10^6 extendable functionals reach gap {report.max_gap:.1e}, "
        f"worst relative residual {report.max_cone_residual:.1e}",
    )


def test_criterion_6_tensor_round_trip():
    rng = random.Random(206)
    for cone in (square_based_cone(), orthant(3)):
        embedding = orthant_embedding(cone)
        rays = extremal_rays(cone)
        for _ in range(200):
            op = RationalMatrix.zeros(3, 3)
            for p in rays:
                for q in embedding.dual_rays:
                    c = rng.randint(0, 3)
                    if c:
                        op = op + outer(p.scale(c), q)
            result = extend_operator(op, embedding)
            assert result.extended
            assert result.extension_matrix @ embedding.matrix == op
            assert result.decomposition.reconstruct() == op
    announce(6, "400 nonnegative tensor combinations reconstructed exactly")


def test_criterion_7_identity_iff_simplex():
    battery = [
        orthant(2),
        orthant(3),
        orthant(4),
        square_based_cone(),
        pentagonal_cone(),
    ]
    rng = random.Random(207)
    while len(battery) < 25:
        dim = rng.randint(2, 4)
        m = RationalMatrix([[rng.randint(-4, 4) for _ in range(dim)] for _ in range(dim)])
        if inverse(m) is not None:
            battery.append(Wedge(dim, m.col_vectors()))

    for cone in battery:
        verdict = identity_approximable(cone)
        assert verdict.approximable == classify(cone).is_simplex
        if verdict.approximable:
            dec = verdict.result.decomposition
            identity = RationalMatrix.identity(cone.ambient_dim)
            assert dec.reconstruct() == identity
            assert all(t.coefficient >= 0 for t in dec.terms)
            assert all(cone.contains(y) for y in verdict.result.columns)

    # the emitted witness for the square-based cone, checked exactly
    verdict = identity_approximable(square_based_cone())
    h = verdict.result.witness.form
    rays = extremal_rays(square_based_cone())
    duals = verdict.embedding.dual_rays
    assert all(p.dot(h.matvec(q)) >= 0 for p in rays for q in duals)
    assert h.trace() < 0
    # the hand witness diag(-1,-1,1) passes the same inequalities
    golden = RationalMatrix([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    assert all(p.dot(golden.matvec(q)) >= 0 for p in rays for q in duals)
    assert golden.trace() < 0
    announce(7, "identity extendability matched the simplex classification on 25 cones")


def test_criterion_8_certificate_exclusivity(lp_audit):
    # criteria 1-7 have run by now; the hook saw every lp decision they made
    assert lp_audit["calls"] > 100_000
    assert lp_audit["problems"] == []
    announce(8, f"{lp_audit['calls']} LP results re-verified, all certified, one branch each")


CLI_RUNS = [
    ["dual", "--in",
     '{"dim": 3, "generators": [["1", "1", "1"], ["1", "-1", "1"],'
     ' ["-1", "1", "1"], ["-1", "-1", "1"]]}'],
    ["classify", "--in",
     '{"dim": 3, "generators": [["1", "1", "1"], ["1", "-1", "1"],'
     ' ["-1", "1", "1"], ["-1", "-1", "1"]]}'],
    ["extend-operator", "--op", "identity", "--cone",
     '{"dim": 3, "generators": [["1", "1", "1"], ["1", "-1", "1"],'
     ' ["-1", "1", "1"], ["-1", "-1", "1"]]}'],
    ["counterexample", "--cone",
     '{"dim": 3, "generators": [["1", "1", "1"], ["1", "-1", "1"],'
     ' ["-1", "1", "1"], ["-1", "-1", "1"]]}'],
    ["extend-functional",
     "--cone", '{"dim": 3, "generators": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}',
     "--subspace", '{"ambient_dim": 3, "basis": [["1", "1", "0"], ["0", "0", "1"]]}',
     "--functional", '["-1", "2"]'],
    ["almost-all",
     "--cone", '{"dim": 3, "generators": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}',
     "--subspace", '{"ambient_dim": 3, "basis": [["1", "1", "0"], ["0", "0", "1"]]}',
     "--n", "50", "--seed", "7"],
    ["lorentz-demo", "--u", "0", "--v", "1", "--eps", "0.001"],
]


def test_criterion_9_byte_identical_cli_runs():
    for argv in CLI_RUNS:
        first = subprocess.run(
            [sys.executable, "-m", "conelab", *argv], capture_output=True
        )
        second = subprocess.run(
            [sys.executable, "-m", "conelab", *argv], capture_output=True
        )
        assert first.returncode == second.returncode
        assert first.stdout == second.stdout
        assert first.stdout  # every run above produces a JSON payload
    announce(9, f"{len(CLI_RUNS)} CLI invocations byte-identical across repeated runs")
