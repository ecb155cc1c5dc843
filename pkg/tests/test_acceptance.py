"""Acceptance suite.

One test per acceptance criterion, each printing a PASS/FAIL line with its
worst residual so the whole gate is readable from the pytest output (run with
-s or -v to see every line).

Known defect, kept deliberately red: the claim that the momentum-quadrature
squeeze parameter goes negative only for n = 1 (first order, r = 1) is false
for the physically consistent parameter computed from the actual covariances;
it holds only for the legacy bare-ratio curves.  See
test_criterion_4d_p_squeeze_only_for_n1, which encodes the claim as stated
and documents the analysis in its failure message.
"""

import hashlib
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from landau_su2 import cli
from landau_su2 import measure as measure_mod
from landau_su2 import observables as obs
from landau_su2 import verification as verif
from landau_su2.coherent_states import (
    CoherencePoint,
    ModelParams,
    build_state,
    build_state_deformed,
    normalization_constant,
)


def _report(criterion, passed, detail):
    print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} ({detail})")


@pytest.fixture(scope="module")
def observables_report():
    return verif.observables_suite()


@pytest.fixture(scope="module")
def algebra_report():
    return verif.algebra_suite()


@pytest.fixture(scope="module")
def measure_report():
    return verif.measure_suite()


def test_criterion_1_dual_path_equivalence(observables_report):
    dual = [c for c in observables_report.checks if c.name.startswith("dual_path_")]
    worst = max(c.residual for c in dual)
    ok = all(c.passed for c in dual)
    _report("1 dual-path equivalence", ok, f"worst residual {worst:.3e}, tol 1e-10")
    assert ok, [c.name for c in dual if not c.passed]


def test_criterion_2_exact_anchors():
    p = ModelParams(2, 2)
    one = Fraction(1)
    exact_ok = (
        normalization_constant(p, one) == Fraction(55, 36)
        and obs.k_plus_radial(p, one) == Fraction(42, 55)
        and obs.nb_mean(p, one) == Fraction(4, 11)
        and obs.nb_sq_mean(p, one) == Fraction(2, 5)
        and obs.mandel_pair_from_t(p, one)[1] == Fraction(-29, 110)
        and obs.cross_correlation_from_t(p, one) == Fraction(11, 20)
    )
    floats = [
        (float(normalization_constant(p, 1.0)), 55.0 / 36.0),
        (float(obs.k_plus_radial(p, 1.0)), 42.0 / 55.0),
        (float(obs.nb_mean(p, 1.0)), 4.0 / 11.0),
        (float(obs.nb_sq_mean(p, 1.0)), 2.0 / 5.0),
        (obs.mandel_q(p, CoherencePoint.from_t_phi(1.0, 0.0), mode="b"), -29.0 / 110.0),
        (obs.cross_correlation(p, CoherencePoint.from_t_phi(1.0, 0.0)), 11.0 / 20.0),
    ]
    worst_float = max(abs(a - b) / abs(b) for a, b in floats)
    ok = exact_ok and worst_float <= 1e-12
    _report("2 exact anchors", ok, f"rational mode exact={exact_ok}, float worst {worst_float:.2e}")
    assert ok


def test_criterion_3_first_order_analytic_suite():
    worst = 0.0
    for n in (1, 2, 3, 10):
        p = ModelParams(n, 1)
        for t in (0.1, 1.0, 10.0):
            z = CoherencePoint.from_t_phi(t, 0.0)
            nb = obs.number_moments(p, z).mean_nb
            worst = max(worst, abs(nb - n * t / (1 + t)))
            q_a, q_b = obs.mandel_q(p, z)
            worst = max(worst, abs(q_a - (-1 / (1 + t))), abs(q_b - (-t / (1 + t))))
            if n >= 2:
                worst = max(worst, abs(obs.cross_correlation(p, z) - (n - 1) / n))

    # two-level su(2) squeeze factor: the closed curve -2t/(1+t) is the
    # variance ratio on t < 1; past t = 1 the same ratio continues as
    # -2/(1+t), and exactly at t = 1 the factor is undefined because the
    # mean of K_3 vanishes there (the reference point of that contract).
    p1 = ModelParams(1, 1)
    for t in (0.1, 1.0, 10.0):
        rep = obs.su2_squeeze(p1, CoherencePoint.from_t_phi(t, 0.0))
        if t == 1.0:
            assert rep.s1 is None and rep.undefined_reason == obs.K3_UNDEFINED
            continue
        expected = -2 * t / (1 + t) if t < 1 else -2 / (1 + t)
        worst = max(worst, abs(rep.s1 - expected))
    ok = worst <= 1e-12
    _report("3 first-order analytic suite", ok, f"worst abs deviation {worst:.3e}")
    assert ok


def test_criterion_4_qualitative_claims_grid():
    # maximal antibunching of the first mode as t -> 0
    q_a_limit = obs.mandel_q(ModelParams(2, 1), CoherencePoint.from_t_phi(1e-8, 0.0), mode="a")
    lim_ok = abs(q_a_limit + 1.0) <= 1e-6

    # sub-Poissonian statistics of both modes and anti-correlation on the grid
    sub_ok, anti_ok = True, True
    for params, z in verif.grid_points():
        q_a, q_b = obs.mandel_q(params, z)
        sub_ok = sub_ok and q_a < 0 and q_b < 0
        if params.n >= 2:
            anti_ok = anti_ok and obs.cross_correlation(params, z) < 1.0

    # maximal su(2) squeezing in the X_1 component as t -> 1 from below
    rep = obs.su2_squeeze(ModelParams(1, 1), CoherencePoint.from_t_phi(1.0 - 1e-5, 0.0))
    s1_ok = abs(rep.s1 + 1.0) <= 1e-4

    ok = lim_ok and sub_ok and anti_ok and s1_ok
    _report("4 qualitative claims (antibunching, anti-correlation, maximal squeeze)", ok,
            f"q_a(1e-8)={q_a_limit:.8f}, s1(t->1)={rep.s1:.6f}")
    assert ok


def test_criterion_4d_p_squeeze_only_for_n1():
    """Claim under test: for r = 1 the momentum squeeze parameter attains
    negative values if and only if n = 1.

    This is FALSE for the squeeze parameter of the actual covariances: at
    n = 2, r = 1, t = 1, phi = 0 the state is a minimum-uncertainty state
    with sigma_pp = (n + 1 - n)/4 = 1/4 < 1/2, so S_p = -1/2 < 0.  The claim
    holds only for the legacy bare-ratio curves (exposed as
    legacy_quadrature_squeezes and asserted below), whose ratio omits the
    gamma prefactor of the ladder mean.  The test keeps the stated form and
    is expected to fail; see the decisions ledger and README for the audit.
    """
    t_values = [0.02 * i for i in range(1, 400)]

    legacy_negative = {}
    true_negative = {}
    for n in (1, 2, 3, 4, 5, 6):
        p = ModelParams(n, 1)
        legacy_negative[n] = any(
            obs.legacy_quadrature_squeezes(p, CoherencePoint.from_t_phi(t, 0.0))[1] < 0
            for t in t_values)
        true_negative[n] = any(
            obs.quadrature_covariances(p, CoherencePoint.from_t_phi(t, 0.0)).s_p < 0
            for t in t_values)

    # the legacy curves do satisfy the published claim
    assert legacy_negative == {1: True, 2: False, 3: False, 4: False, 5: False, 6: False}

    ok = all(true_negative[n] == (n == 1) for n in true_negative)
    _report("4d p-squeeze only for n=1 (covariance-based parameter)", ok,
            f"negative-S_p by n: {true_negative}; legacy curves satisfy the claim, "
            "the covariance-based parameter does not (documented defect)")
    assert ok, (
        "the covariance-based S_p is negative for every n on this grid "
        f"({true_negative}); the published claim holds only for the legacy "
        "bare-ratio curves, which omit the gamma prefactor of the ladder mean"
    )


def test_criterion_5_deformed_equivalence():
    worst = 0.0
    for n in (1, 2, 3, 4, 5, 6):
        for r in (1, 2, 3, 4):
            params = ModelParams(n, r)
            for t in (0.25, 1.0, 4.0):
                for phi in (0.0, 0.7, math.pi / 2):
                    z = CoherencePoint.from_t_phi(t, phi)
                    a = build_state(params, z)
                    b = build_state_deformed(params, z)
                    worst = max(worst, max(abs(x - y) for x, y in
                                           zip(a.coefficients, b.coefficients)))
    ok = worst <= 1e-12
    _report("5 deformed-state equivalence", ok, f"worst coefficient deviation {worst:.3e}")
    assert ok


def test_criterion_6_algebra_suite(algebra_report):
    worst = max(c.residual for c in algebra_report.checks)
    ok = algebra_report.passed
    _report("6 algebra suite", ok, f"worst entrywise residual {worst:.3e}")
    assert ok, [c.name for c in algebra_report.checks if not c.passed]


def test_criterion_7_measure_suite(measure_report):
    by_name = {c.name: c for c in measure_report.checks}
    moments = by_name["moment_conditions"]
    closed = by_name["mellin_vs_closed_r1"]
    positive = by_name["density_nonnegative"]

    header, rows = cli.run_figure("fig1", [2], [1, 2, 3, 4], [0.0], (0.05, 8.0, 40))
    emission_ok = len(rows) == 4 * 40 and header[-1] == "k_density"

    ok = measure_report.passed and emission_ok
    _report("7 measure suite", ok,
            f"moment residual {moments.residual:.2e} (tol 1e-6), "
            f"first-order match {closed.residual:.2e}, "
            f"negativity {positive.residual:.2e}, fig1 rows {len(rows)}")
    assert ok


def test_criterion_8_uncertainty_inequalities(observables_report):
    by_name = {c.name: c for c in observables_report.checks}
    su2 = by_name["uncertainty_su2"]
    rs = by_name["uncertainty_robertson_schrodinger"]

    q = obs.quadrature_covariances(ModelParams(1, 1), CoherencePoint.from_t_phi(1.0, 0.0))
    hbar = 1.0
    equality_gap = abs(q.sigma_xx * q.sigma_pp - q.sigma_xp ** 2 - hbar ** 2 / 4.0)

    ok = su2.passed and rs.passed and equality_gap <= 1e-8
    _report("8 uncertainty inequalities", ok,
            f"su2 slack {su2.residual:.2e}, RS slack {rs.residual:.2e}, "
            f"equality gap at the minimum-uncertainty point {equality_gap:.2e}")
    assert ok


def test_criterion_9_figure_determinism(tmp_path):
    figures = sorted(cli.FIGURE_DEFAULTS)
    mismatched = []
    for figure in figures:
        digests = set()
        for tag, threads in (("a", "1"), ("b", "1"), ("c", "8")):
            out = tmp_path / f"{figure}_{tag}.csv"
            proc = subprocess.run(
                [sys.executable, "-m", "landau_su2", "figure", figure,
                 "--out", str(out), "--t-points", "30", "--threads", threads],
                capture_output=True, text=True)
            assert proc.returncode == 0, proc.stderr
            digests.add(hashlib.sha256(out.read_bytes()).hexdigest())
        if len(digests) != 1:
            mismatched.append(figure)
    ok = not mismatched
    _report("9 figure determinism", ok,
            f"{len(figures)} figures, 3 runs each (1 and 8 threads), "
            f"mismatches: {mismatched or 'none'}")
    assert ok
