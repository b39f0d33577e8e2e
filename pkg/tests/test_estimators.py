"""Estimation protocols: full-vector, random-element, and direct baselines."""

import numpy as np
import pytest

from bsqn.bellsampler import (
    CHatVector,
    c_hat_full,
    sample_syndrome_words_fast,
    sample_syndromes_fast,
    SyndromeHistogram,
)
from bsqn.estimators import (
    SignRule,
    bsqn_full,
    bsqn_random_element,
    dge_plan,
    dge_simulate,
)
from bsqn.graphs import complete_graph, path_graph, stabilizer_element
from bsqn.noise import exact_a, make_bimodal, make_depolarizing, make_explicit
from bsqn.transforms import w_from_a

ASSERTED = SignRule(asserted=True)


def _exact_c_hat(a: np.ndarray) -> CHatVector:
    w = w_from_a(a)
    raw = w**2
    n = a.shape[0].bit_length() - 1
    return CHatVector(n, np.clip(raw, 0.0, 1.0), raw)


class TestSignRule:
    def test_unasserted_refuses(self):
        with pytest.raises(ValueError):
            bsqn_full(_exact_c_hat(np.array([0.9, 0.1])), SignRule())

    def test_asserted_passes(self):
        bsqn_full(_exact_c_hat(np.array([0.9, 0.1])), ASSERTED)


class TestBsqnFull:
    def test_recovers_exact_diagonal(self):
        rng = np.random.default_rng(0)
        a = rng.dirichlet(np.array([30.0] + [1.0] * 15))  # a_0 dominant
        a_hat = bsqn_full(_exact_c_hat(a), ASSERTED)
        assert np.allclose(a_hat, a, atol=1e-12)

    def test_nonzero_reference_recovers_shifted_state(self):
        # dominant element away from the identity index flips signs by the
        # reference parity rule
        rng = np.random.default_rng(1)
        base = rng.dirichlet(np.array([30.0] + [1.0] * 15))
        b_ref = 0b1010
        a = np.empty_like(base)
        for b in range(16):
            a[b] = base[b ^ b_ref]
        rule = SignRule(reference_index=b_ref, asserted=True)
        a_hat = bsqn_full(_exact_c_hat(a), rule)
        assert np.allclose(a_hat, a, atol=1e-12)

    def test_rejects_selected_vector(self):
        c = CHatVector(2, np.zeros(2), np.zeros(2), indices=[0, 3])
        with pytest.raises(ValueError):
            bsqn_full(c, ASSERTED)

    def test_sampled_recovery_converges(self):
        rng = np.random.default_rng(2)
        g = complete_graph(4)
        state = make_depolarizing(4, 0.9)
        hist = sample_syndromes_fast(g, state, 200000, rng)
        a_hat = bsqn_full(c_hat_full(hist), ASSERTED)
        assert np.linalg.norm(a_hat - exact_a(state)) < 0.01


class TestBsqnRandomElement:
    def test_estimate_structure(self):
        rng = np.random.default_rng(3)
        words = sample_syndrome_words_fast(make_depolarizing(6, 0.7), 2000, rng)
        est = bsqn_random_element(words, 6, 0, 32, rng, ASSERTED)
        assert est.M == 32 and len(est.indices) == 32
        assert est.c_hat.shape == (32,)

    def test_mean_tracks_fidelity(self):
        rng = np.random.default_rng(4)
        state = make_depolarizing(20, 0.53)
        estimates = []
        for _ in range(60):
            words = sample_syndrome_words_fast(state, 4000, rng)
            est = bsqn_random_element(words, 20, 0, 40, rng, ASSERTED)
            estimates.append(est.estimate)
        assert abs(np.mean(estimates) - 0.53) < 0.04

    def test_target_away_from_reference(self):
        # bimodal state with its dominant mass at the reference, estimating
        # the other mode's element
        rng = np.random.default_rng(5)
        b_star = (1 << 12) - 1
        state = make_bimodal(12, 0.6, b_star)
        estimates = []
        for _ in range(60):
            words = sample_syndrome_words_fast(state, 4000, rng)
            est = bsqn_random_element(words, 12, b_star, 24, rng, ASSERTED)
            estimates.append(est.estimate)
        assert abs(np.mean(estimates) - 0.4) < 0.05

    def test_requires_positive_m(self):
        with pytest.raises(ValueError):
            bsqn_random_element(
                np.zeros((1, 1), dtype=np.uint64), 4, 0, 0, np.random.default_rng(0), ASSERTED
            )

    def test_requires_sign_rule(self):
        with pytest.raises(ValueError):
            bsqn_random_element(
                np.zeros((1, 1), dtype=np.uint64), 4, 0, 4, np.random.default_rng(0), SignRule()
            )


class TestDgePlans:
    def test_naive_counts(self):
        for n in (2, 3, 5):
            plan = dge_plan(complete_graph(n), "naive")
            assert len(plan.settings) == (1 << n) - 1
            assert plan.minimum_shots() == (1 << n) - 1

    def test_naive_any_graph(self):
        plan = dge_plan(path_graph(4), "naive")
        assert len(plan.settings) == 15

    def test_overlap_y_count_n8(self):
        plan = dge_plan(complete_graph(8), "complete_overlap_y")
        assert len(plan.settings) == 129  # 2^(n-1) + 1

    def test_overlap_y_all_y_setting_covers_even_weights(self):
        plan = dge_plan(complete_graph(4), "complete_overlap_y")
        all_y = plan.settings[0]
        assert all_y.bases == "YYYY"
        members = [b for b, _ in all_y.stabilizers]
        assert members == [b for b in range(1, 16) if b.bit_count() % 2 == 0]

    def test_even_weight_elements_are_all_y_on_support(self):
        g = complete_graph(6)
        for b in range(1, 64):
            if b.bit_count() % 2 == 0:
                letters = stabilizer_element(g, b).letters()
                on = {letters[k] for k in range(6) if (b >> k) & 1}
                assert on == {"Y"}

    def test_disjoint_y_counts(self):
        plan = dge_plan(complete_graph(4), "complete_disjoint_y")
        # complement pairs of even-weight elements + one per odd element
        assert len(plan.settings) == 4 + 8

    def test_disjoint_y_requires_even_n(self):
        with pytest.raises(ValueError):
            dge_plan(complete_graph(5), "complete_disjoint_y")

    def test_y_strategies_require_complete_graph(self):
        with pytest.raises(ValueError):
            dge_plan(path_graph(4), "complete_overlap_y")

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            dge_plan(complete_graph(4), "overlap")

    def test_every_element_covered_exactly_once_per_plan(self):
        for strategy in ("naive", "complete_overlap_y", "complete_disjoint_y"):
            plan = dge_plan(complete_graph(4), strategy)
            seen = [b for s in plan.settings for b, _ in s.stabilizers]
            assert sorted(seen) == list(range(1, 16))


class TestDgeSimulate:
    def test_budget_below_minimum_refused(self):
        g = complete_graph(8)
        plan = dge_plan(g, "complete_overlap_y")
        with pytest.raises(ValueError, match="below minimum"):
            dge_simulate(plan, g, make_depolarizing(8, 0.9), 128, np.random.default_rng(0))

    def test_budget_fully_allocated(self):
        g = complete_graph(4)
        plan = dge_plan(g, "naive")
        dge_simulate(plan, g, make_depolarizing(4, 0.9), 1000, np.random.default_rng(1))
        assert sum(plan.shots_per_setting) == 1000
        assert min(plan.shots_per_setting) >= 1

    def test_recovery_converges(self):
        rng = np.random.default_rng(2)
        g = complete_graph(4)
        state = make_depolarizing(4, 0.85)
        plan = dge_plan(g, "naive")
        w_hat, a_hat = dge_simulate(plan, g, state, 150000, rng)
        assert np.linalg.norm(a_hat - exact_a(state)) < 0.02
        assert w_hat[0] == 1.0

    def test_strategies_agree_on_complete_graph(self):
        rng = np.random.default_rng(3)
        g = complete_graph(4)
        state = make_depolarizing(4, 0.8)
        a_true = exact_a(state)
        for strategy in ("complete_overlap_y", "complete_disjoint_y"):
            plan = dge_plan(g, strategy)
            _, a_hat = dge_simulate(plan, g, state, 120000, rng)
            assert np.linalg.norm(a_hat - a_true) < 0.03
