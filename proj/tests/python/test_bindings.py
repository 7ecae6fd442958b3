import json
import math

import numpy as np
import pytest

import autocat


def test_classify_and_verdicts():
    assert autocat.classify(0.5, 0.25)[0] == "C1"
    assert autocat.classify(1.0, 3.0)[0] == "C7"
    with pytest.raises(Exception):
        autocat.classify(1.5, 1.0)
    kind, citations = autocat.existence_verdict(autocat.ProblemParams(0.5, 0.5, 1.2), math.pi**2)
    assert isinstance(kind, str) and citations


def test_reaction_and_thresholds():
    p = autocat.ProblemParams(1.0, 2.0, 0.0)
    assert autocat.f_eval(p, 1.0) == 0.0
    assert autocat.f_prime(p, 1.0) == -1.0
    assert autocat.reaction(autocat.ProblemParams(0.5, 0.25, 0.0), 0.0) == 0.0
    assert autocat.lambda_c(0.5, 0.25) == pytest.approx(0.5065571237677284, rel=1e-12)
    assert autocat.threshold_fold_caseI(0.5, 0.25) == pytest.approx(0.5349922439811376, rel=1e-12)
    assert autocat.threshold_caseVII(3.0, 0.5) == pytest.approx(-0.5)


def test_mesh_and_eigenpair():
    mesh = autocat.interval_mesh(0.0, 1.0, 1024)
    lam1, phi = autocat.principal_eigenpair(mesh)
    assert abs(lam1 - math.pi**2) / math.pi**2 < 1e-5
    assert isinstance(phi, np.ndarray) and (phi > 0).all()
    ball = autocat.ball_mesh(3, 1.0, 400)
    assert autocat.principal_eigenpair(ball)[0] == pytest.approx(math.pi**2, rel=1e-3)


def test_solvers_agree_in_a_uniqueness_regime():
    mesh = autocat.interval_mesh(0.0, 1.0, 100)
    p = autocat.ProblemParams(0.5, 0.5, 0.5)
    _, phi = autocat.principal_eigenpair(mesh)
    mini = autocat.global_minimize(p, mesh, phi)
    newton = autocat.newton_solve(p, mesh, mini.solution)
    assert mini.converged and not mini.trivial
    assert newton.converged
    assert np.max(np.abs(mini.solution - newton.solution)) < 1e-6
    assert autocat.residual_norm(p, mesh, newton.solution) <= 1e-10
    assert autocat.energy(p, mesh, newton.solution) < 0


def test_branch_and_flat_profile():
    mesh = autocat.interval_mesh(0.0, 1.0, 100)
    p = autocat.ProblemParams(0.5, 0.25, 0.02)
    _, phi = autocat.principal_eigenpair(mesh)
    seed = autocat.global_minimize(p, mesh, phi)
    cfg = autocat.BranchConfig()
    cfg.lambda_min = 0.0
    cfg.lambda_max = 1.0
    branch = autocat.continue_branch(p, mesh, seed.solution, cfg)
    assert len(branch.folds) == 1
    q = autocat.ProblemParams(0.5, 0.25, 0.3)
    lo, hi = autocat.flat_profile_bracket(q, 1e-8, 1.0)
    found, profile, _ = autocat.find_flat_profile(q, lo, hi)
    assert found
    assert profile.a == pytest.approx(autocat.primitive_root(q), abs=1e-6)


def test_scenarios_and_config(tmp_path):
    ids = autocat.scenario_ids()
    assert "caseII-equal-exponents/no-solution-from-one" in ids
    report = autocat.run_scenario("caseII-equal-exponents/no-solution-from-one", tmp_path)
    assert report["passed"]
    cfg = json.loads(autocat.parse_config("[problem]\nm = 0.5\nn = 0.25\n"))
    assert cfg["problem"]["m"] == 0.5
    with pytest.raises(Exception):
        autocat.parse_config("[problem]\nmu = 1\n")
