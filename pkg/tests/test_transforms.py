"""Walsh-Hadamard transform and error metrics."""

import numpy as np
import pytest

from bsqn.transforms import (
    a_from_w,
    error_metrics,
    hellinger_diagnostic,
    w_from_a,
    wht,
    wht_inplace,
)


class TestWht:
    def test_length_two(self):
        assert np.array_equal(wht(np.array([1.0, 0.0])), [1.0, 1.0])
        assert np.array_equal(wht(np.array([0.0, 1.0])), [1.0, -1.0])

    def test_matches_matrix_definition(self):
        rng = np.random.default_rng(0)
        for n in range(1, 7):
            size = 1 << n
            v = rng.standard_normal(size)
            matrix = np.array(
                [[(-1) ** (b & i).bit_count() for i in range(size)] for b in range(size)],
                dtype=float,
            )
            assert np.allclose(wht(v), matrix @ v, atol=1e-12)

    def test_inplace_mutates(self):
        v = np.array([1.0, 2.0, 3.0, 4.0])
        out = wht_inplace(v)
        assert out is v
        assert np.array_equal(v, [10.0, -2.0, -4.0, 0.0])

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            wht(np.ones(3))

    def test_guard(self):
        class _Fake:
            shape = (1 << 27,)

        with pytest.raises(ValueError):
            wht_inplace(_Fake())


class TestDiagonalTransforms:
    def test_round_trip(self):
        rng = np.random.default_rng(1)
        a = rng.dirichlet(np.ones(64))
        assert np.allclose(a_from_w(w_from_a(a)), a, atol=1e-12)

    def test_depolarizing_closed_form(self):
        # uniform-error model: every nontrivial expectation collapses to
        # F - (1-F)/(2^n - 1)
        n, F = 4, 0.85
        size = 1 << n
        a = np.full(size, (1 - F) / (size - 1))
        a[0] = F
        w = w_from_a(a)
        assert w[0] == pytest.approx(1.0)
        expected = F - (1 - F) / (size - 1)
        assert np.allclose(w[1:], expected, atol=1e-12)

    def test_point_mass_gives_signs(self):
        a = np.zeros(8)
        a[0b101] = 1.0
        w = w_from_a(a)
        for i in range(8):
            assert w[i] == (-1) ** (0b101 & i).bit_count()


class TestErrorMetrics:
    def test_known_values(self):
        m = error_metrics(np.array([0.5, 0.5]), np.array([0.8, 0.2]))
        assert m["l2"] == pytest.approx(np.sqrt(0.09 + 0.09))
        assert m["linf"] == pytest.approx(0.3)
        assert m["fidelity_error"] == pytest.approx(0.3)

    def test_zero_for_identical(self):
        a = np.random.default_rng(2).dirichlet(np.ones(16))
        m = error_metrics(a, a)
        assert m["l2"] == 0.0 and m["linf"] == 0.0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            error_metrics(np.ones(2), np.ones(4))


class TestHellinger:
    def test_identical_is_zero(self):
        p = np.array([0.25, 0.75])
        assert hellinger_diagnostic(p, p) == 0.0

    def test_disjoint_is_one(self):
        assert hellinger_diagnostic(
            np.array([1.0, 0.0]), np.array([0.0, 1.0])
        ) == pytest.approx(1.0)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            hellinger_diagnostic(np.array([1.5, -0.5]), np.array([0.5, 0.5]))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            hellinger_diagnostic(np.array([0.5, 0.4]), np.array([0.5, 0.5]))
