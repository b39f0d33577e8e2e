"""Noise models, error sampling, and Pauli-channel conversion."""

import numpy as np
import pytest
from scipy import stats

from bsqn._bits import words_to_ints
from bsqn.graphs import PauliString, path_graph, str_to_bits
from bsqn.noise import (
    PauliChannel,
    channel_to_diagonal,
    dephasing_mu_for_fidelity,
    exact_a,
    make_bimodal,
    make_dephasing_iid,
    make_depolarizing,
    make_explicit,
    sample_error,
    sample_errors,
)
from bsqn.oracle import apply_pauli, dense_basis_state, dense_graph_state


def _all_models(n=4):
    return [
        make_depolarizing(n, 0.8),
        make_dephasing_iid(n, 0.1),
        make_bimodal(n, 0.7, (1 << n) - 1),
        make_explicit(np.random.default_rng(3).dirichlet(np.ones(1 << n))),
    ]


class TestConstruction:
    def test_depolarizing_vector(self):
        a = exact_a(make_depolarizing(3, 0.9))
        assert a[0] == pytest.approx(0.9)
        assert np.allclose(a[1:], 0.1 / 7)

    def test_dephasing_vector_is_weight_binomial(self):
        mu = 0.2
        a = exact_a(make_dephasing_iid(3, mu))
        for b in range(8):
            wt = b.bit_count()
            assert a[b] == pytest.approx(mu**wt * (1 - mu) ** (3 - wt))

    def test_bimodal_vector(self):
        a = exact_a(make_bimodal(3, 0.6, 0b101))
        assert a[0] == pytest.approx(0.6)
        assert a[0b101] == pytest.approx(0.4)
        assert a.sum() == pytest.approx(1.0)

    def test_all_vectors_normalized(self):
        for state in _all_models():
            assert exact_a(state).sum() == pytest.approx(1.0)

    def test_fidelity_property(self):
        for state in _all_models():
            assert state.fidelity == pytest.approx(exact_a(state)[0])

    def test_mu_for_fidelity_inverse(self):
        for n, F in [(5, 0.53), (40, 0.9)]:
            mu = dephasing_mu_for_fidelity(n, F)
            assert (1 - mu) ** n == pytest.approx(F)

    def test_validation(self):
        with pytest.raises(ValueError):
            make_depolarizing(3, 1.2)
        with pytest.raises(ValueError):
            make_bimodal(3, 0.5, 0)
        with pytest.raises(ValueError):
            make_explicit(np.array([0.5, 0.6]))
        with pytest.raises(ValueError):
            make_explicit(np.array([1.2, -0.2]))
        with pytest.raises(ValueError):
            make_explicit(np.ones(3) / 3)


class TestSampling:
    @pytest.mark.parametrize("state", _all_models(), ids=lambda s: s.model)
    def test_empirical_matches_exact(self, state):
        rng = np.random.default_rng(11)
        shots = 40000
        draws = words_to_ints(sample_errors(state, shots, rng))
        counts = np.bincount(draws, minlength=1 << state.n)
        expected = exact_a(state) * shots
        keep = expected > 0
        assert counts[~keep].sum() == 0
        p = stats.chisquare(counts[keep], expected[keep]).pvalue
        assert p > 1e-3

    def test_large_n_no_dense_structures(self):
        state = make_dephasing_iid(200, 0.003)
        rng = np.random.default_rng(4)
        words = sample_errors(state, 1000, rng)
        assert words.shape == (1000, 4)

    def test_single_draw(self):
        state = make_bimodal(5, 0.0, 0b10101)
        assert sample_error(state, np.random.default_rng(0)) == 0b10101

    def test_exact_a_guard(self):
        with pytest.raises(ValueError):
            exact_a(make_depolarizing(30, 0.9))


class TestPauliChannel:
    def test_rates_must_sum_to_one(self):
        with pytest.raises(ValueError):
            PauliChannel(2, {PauliString(2, 0, 0): 0.5})

    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError):
            PauliChannel(
                1, {PauliString(1, 0, 0): 1.5, PauliString(1, 1, 0): -0.5}
            )

    def test_single_qubit_errors_on_path(self):
        # each Pauli error lands on exactly one graph-basis element; verify
        # the receiving index against the dense state oracle
        g = path_graph(3)
        phi0 = dense_graph_state(g)
        errors = []
        for q in range(3):
            errors.append(PauliString(3, 1 << q, 0))  # X_q
            errors.append(PauliString(3, 0, 1 << q))  # Z_q
            errors.append(PauliString(3, 1 << q, 1 << q))  # Y_q
        rate = 1.0 / (len(errors) + 1)
        terms = {PauliString(3, 0, 0): rate}
        terms.update({p: rate for p in errors})
        a = exact_a(channel_to_diagonal(g, PauliChannel(3, terms)))
        expected = np.zeros(8)
        for p, r in terms.items():
            mapped = apply_pauli(phi0, p)
            for b in range(8):
                if abs(abs(np.vdot(dense_basis_state(g, b), mapped)) - 1) < 1e-10:
                    expected[b] += r
                    break
            else:
                raise AssertionError("error did not map to a basis element")
        assert np.allclose(a, expected, atol=1e-12)

    def test_distinct_coset_collapse(self):
        # Z on the middle qubit of the path and X on an end qubit flag the
        # same neighborhood, so their rates add up in one entry
        g = path_graph(3)
        z_mid = PauliString(3, 0, str_to_bits("010"))
        terms = {PauliString(3, 0, 0): 0.8, z_mid: 0.2}
        a = exact_a(channel_to_diagonal(g, PauliChannel(3, terms)))
        assert a[str_to_bits("010")] == pytest.approx(0.2)

    def test_guard(self):
        g = path_graph(13)
        with pytest.raises(ValueError):
            channel_to_diagonal(g, PauliChannel(13, {PauliString(13, 0, 0): 1.0}))
