import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselpd.definiteness import Verdict
from besselpd.exceptions import ConfigurationError, DomainError
from besselpd.monotonicity import Outcome
from besselpd.verification import (
    DEFAULT_TOLERANCES,
    REGISTRY,
    BridgeKernel,
    ScenarioConfig,
    bridge_kernels,
    run_scenarios,
    scenario_seed,
    verify_agm_inequality,
    verify_ismail_representation,
    verify_log_inequality,
    verify_monotone_k_derivative,
    verify_schoenberg_wendland_bridge,
    verify_watson_derivative,
)

from oracles import ISMAIL_LHS_15_4, X0_ALPHA1


def k_half(s):
    return math.sqrt(math.pi / (2 * s)) * math.exp(-s)


class TestAGM:
    def test_equal_arguments(self):
        rep = verify_agm_inequality(1.0, [(3.0, 3.0)])
        assert rep.verdict is Outcome.PASS
        assert rep.residuals["equality_residual"] <= 1e-12

    def test_strict_chain(self):
        rep = verify_agm_inequality(1.0, [(1.0, 4.0)])
        assert rep.residuals["min_gap_left"] > 0 and rep.residuals["min_gap_right"] > 0

    def test_large_order_sweep(self, rng):
        pairs = rng.uniform(0.1, 20, size=(2000, 2))
        rep = verify_agm_inequality(2.5, pairs)
        assert rep.verdict is Outcome.PASS

    @given(st.floats(0.1, 20), st.floats(0.1, 20), st.sampled_from([0.5, 1.0, 2.5]))
    @settings(max_examples=60, deadline=None)
    def test_left_bound_holds(self, x, y, alpha):
        assert verify_agm_inequality(alpha, [(x, y)]).residuals["violations_left"] == 0

    def test_right_bound_fails_for_half_order(self):
        # closed form K_{1/2}: the right-hand bound is below the middle term at (1, 20)
        x, y = 1.0, 20.0
        mid = math.sqrt(k_half(math.sqrt(x)) * k_half(math.sqrt(y)))
        right = ((x + y) / (2 * math.sqrt(x * y))) ** 0.75 * k_half(math.sqrt((x + y) / 2))
        assert right < mid
        rep = verify_agm_inequality(0.5, [(x, y)])
        assert rep.verdict is Outcome.FAIL
        assert rep.residuals["min_gap_right"] == pytest.approx((right - mid) / mid, rel=1e-10)

    def test_needs_positive_order(self):
        with pytest.raises(DomainError):
            verify_agm_inequality(0.0, [(1.0, 2.0)])

    def test_needs_positive_pairs(self):
        with pytest.raises(DomainError):
            verify_agm_inequality(1.0, [(-1.0, 2.0)])


class TestLogInequality:
    def test_root(self):
        rep = verify_log_inequality(1.0, [(2.0, 3.0)])
        assert abs(rep.residuals["x0"] - float(X0_ALPHA1)) < 1e-10

    def test_pair_above_root(self):
        x0 = float(X0_ALPHA1)
        rep = verify_log_inequality(1.0, [(x0 + 1, x0 + 4)])
        assert rep.verdict is Outcome.PASS and rep.residuals["min_gap"] > 0

    def test_equality(self):
        rep = verify_log_inequality(1.0, [(5.0, 5.0)])
        assert rep.residuals["equality_residual"] <= 1e-12

    def test_gated_pairs_excluded(self):
        rep = verify_log_inequality(1.0, [(0.3, 5.0), (2.0, 3.0)])
        assert rep.residuals["gated_pairs"] == 1 and rep.residuals["pairs"] == 1
        assert rep.verdict is Outcome.PASS

    def test_all_gated_is_inconclusive(self):
        assert verify_log_inequality(1.0, [(0.1, 0.2)]).verdict is Outcome.INCONCLUSIVE

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.5])
    def test_sweep(self, alpha, rng):
        rep = verify_log_inequality(alpha, rng.uniform(0.1, 20, size=(2000, 2)))
        assert rep.verdict is Outcome.PASS


class TestIdentities:
    def test_ismail_half_order(self):
        rep = verify_ismail_representation(0.5, 1.0)
        assert rep.residuals["lhs"] == 1.0
        assert abs(rep.residuals["rhs"] - 1.0) < 1e-4

    def test_ismail_oracle(self):
        rep = verify_ismail_representation(1.5, 4.0)
        assert abs(rep.residuals["lhs"] - float(ISMAIL_LHS_15_4)) < 1e-14
        assert rep.verdict is Outcome.PASS

    def test_ismail_large_x(self):
        rep = verify_ismail_representation(1.5, 100.0)
        assert abs(rep.residuals["rhs"] / rep.residuals["lhs"] - 1) < 1e-3

    def test_ismail_domain(self):
        with pytest.raises(DomainError):
            verify_ismail_representation(1.0, 0.0)

    def test_watson_half_order(self):
        assert verify_watson_derivative(0.5, [1.0]).residuals["max_abs_residual"] < 1e-8

    def test_watson_grid(self):
        rep = verify_watson_derivative(2.0, np.geomspace(0.5, 10, 8), 1e-7)
        assert rep.verdict is Outcome.PASS

    def test_watson_order_zero(self):
        assert verify_watson_derivative(0.0, [0.5, 1.0, 4.0], 1e-7).verdict is Outcome.PASS

    def test_k_derivative_half_order(self):
        # x^{3/2} K_{3/2}(x) = sqrt(pi/2) (1 + x) e^{-x}, derivative -sqrt(pi/2) x e^{-x}
        rep = verify_monotone_k_derivative(0.5, xs=[1.0, 2.0])
        assert rep.residuals["max_rel_residual"] < 1e-10

    def test_k_derivative_grid(self):
        rep = verify_monotone_k_derivative(1.0)
        assert rep.residuals["max_rel_residual"] < 1e-6
        assert abs(rep.residuals["derivative_at_0.01"]) < 0.02


class TestBridge:
    def test_order_one(self):
        rep = verify_schoenberg_wendland_bridge(1.0)
        assert rep.verdict is Outcome.PASS
        assert rep.residuals["scaledK[alpha=1.0].gram"] == "SPD"

    def test_constant_control(self):
        rep = verify_schoenberg_wendland_bridge(
            kernels={"one": BridgeKernel(lambda r: np.ones_like(np.asarray(r, dtype=float)), Verdict.PSD_ONLY)}
        )
        assert rep.residuals["one.cm"] == "pass" and rep.residuals["one.nonconstant"] is False
        assert rep.residuals["one.gram"] == "PSD_only" and rep.verdict is Outcome.PASS

    def test_square_control(self):
        rep = verify_schoenberg_wendland_bridge(kernels={"sq": bridge_kernels()["control_square"]})
        assert rep.residuals["sq.cm"] == "fail" and rep.residuals["sq.gram"] == "indefinite"
        assert rep.verdict is Outcome.PASS

    def test_disagreement_is_reported(self):
        # a CM, nonconstant profile whose Gram verdict is forced wrong by a bad kernel
        fake = BridgeKernel(lambda r: np.where(np.asarray(r) == 0, 0.0, np.exp(-np.asarray(r))),
                            psi=lambda u: np.exp(-np.sqrt(u)))
        rep = verify_schoenberg_wendland_bridge(kernels={"fake": fake})
        assert rep.verdict is Outcome.FAIL
        assert any("CM and nonconstant" in n for n in rep.notes)


class TestRunScenarios:
    def test_empty(self):
        assert run_scenarios([]) == []

    def test_unknown(self):
        with pytest.raises(ConfigurationError):
            run_scenarios(["nonsense"])

    def test_bad_override(self):
        with pytest.raises(ConfigurationError):
            run_scenarios(["parseval"], overrides={"colour": 1})

    def test_parseval(self):
        (rep,) = run_scenarios(["parseval"], overrides={"alpha": 0.5})
        assert rep.verdict is Outcome.PASS
        assert abs(rep.residuals["norm_ratio[alpha=0.5]"] - 1) < 1e-6

    def test_registry_citations(self):
        assert len(REGISTRY) == 22
        for sid, (citation, runner) in REGISTRY.items():
            assert citation and callable(runner)

    def test_report_citation_matches_registry(self):
        (rep,) = run_scenarios(["watson"])
        assert rep.citation == REGISTRY["watson"][0]
        assert "runtime" not in rep.to_dict()

    @pytest.mark.parametrize("sid", ["thm13_agm", "prop1_j_pd", "schoenberg_wendland"])
    def test_deterministic(self, sid):
        a = run_scenarios([sid], seed=3, overrides={"pairs": 200, "trials": 3})
        b = run_scenarios([sid], seed=3, overrides={"pairs": 200, "trials": 3})
        assert a[0].to_dict() == b[0].to_dict()

    def test_workers_keep_order(self):
        ids = ["watson", "ismail", "parseval"]
        reps = run_scenarios(ids, workers=3)
        assert [r.scenario_id for r in reps] == ids

    def test_seed_streams_are_private(self):
        a = scenario_seed(7, "thm13_agm").generate_state(2)
        b = scenario_seed(7, "thm13_log").generate_state(2)
        assert not np.array_equal(a, b)

    def test_j_scenario_never_indefinite(self):
        for seed in range(3):
            (rep,) = run_scenarios(["prop1_j_pd"], seed=seed)
            assert rep.verdict is not Outcome.FAIL


class TestScenarioConfig:
    def test_unknown_id(self):
        with pytest.raises(ConfigurationError):
            ScenarioConfig("nope")

    def test_counts_positive(self):
        with pytest.raises(ConfigurationError):
            ScenarioConfig("parseval", trials=0)

    def test_defaults(self):
        cfg = ScenarioConfig("parseval")
        assert cfg.tolerance("quadrature") == DEFAULT_TOLERANCES["quadrature"] == 1e-6
        assert DEFAULT_TOLERANCES["identity"] == 1e-8 and DEFAULT_TOLERANCES["ismail"] == 1e-4
        assert cfg.alphas((0.5, 1.0)) == (0.5, 1.0)
        assert ScenarioConfig("parseval", alpha=2).alphas((0.5,)) == (2.0,)
