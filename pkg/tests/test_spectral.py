import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spapprox.spectral import (
    Exponent,
    GridTooSmallError,
    SpectralFunction,
    SpectrumFormatError,
    best_approximation,
    fourier_from_samples,
    partial_sum,
    sp_norm,
)


class TestExponent:
    @pytest.mark.parametrize("p", [1, 1.5, 2, 3, 100])
    def test_accepts(self, p):
        assert float(Exponent(p)) == p

    @pytest.mark.parametrize("p", [0.5, 0.999, 0, -1, math.inf, math.nan])
    def test_rejects(self, p):
        with pytest.raises(ValueError):
            Exponent(p)


class TestSpectralFunction:
    def test_zero_pruning_and_support(self):
        f = SpectralFunction({1: 1.0, 2: 0.0, 3: 1e-13})
        assert f.support == (1,)
        assert f.order == 1

    def test_tolerance_equality(self):
        f = SpectralFunction({1: 1.0})
        g = SpectralFunction({1: 1.0 + 5e-13})
        assert f == g
        assert f != SpectralFunction({1: 1.0 + 1e-9})

    def test_rejects_non_integer_keys(self):
        with pytest.raises(SpectrumFormatError):
            SpectralFunction({1.5: 1.0})

    def test_arithmetic(self):
        f = SpectralFunction({1: 2.0, 2: 1.0})
        g = SpectralFunction({2: 1.0})
        assert (f - g).support == (1,)
        assert (2.0 * f)[1] == 4.0

    def test_evaluate_single_harmonic(self):
        f = SpectralFunction({2: 1.0})
        x = 0.3
        assert f.evaluate(x) == pytest.approx(np.exp(2j * x))

    def test_json_round_trip(self):
        f = SpectralFunction({-3: 1 + 2j, 5: -0.5j})
        assert SpectralFunction.from_json(json.dumps(f.to_json())) == f

    def test_json_duplicate_k_rejected(self):
        with pytest.raises(SpectrumFormatError, match="duplicate"):
            SpectralFunction.from_json([{"k": 1, "re": 1.0, "im": 0.0},
                                        {"k": 1, "re": 2.0, "im": 0.0}])


class TestSpNorm:
    @pytest.mark.parametrize("p", [1, 1.7, 2, 4])
    def test_single_term(self, p):
        assert sp_norm(SpectralFunction({1: 3.0}), p) == pytest.approx(3.0)

    def test_two_unit_terms(self):
        f = SpectralFunction({1: 1.0, -1: 1.0})
        assert sp_norm(f, 2) == pytest.approx(math.sqrt(2.0))

    def test_direct_sum(self):
        f = SpectralFunction({1: 1.0, 3: 0.5})
        assert sp_norm(f, 1) == pytest.approx(1.5)

    def test_empty_spectrum(self):
        assert sp_norm(SpectralFunction(), 2) == 0.0


class TestPartialSum:
    def test_support_filter(self):
        f = SpectralFunction({0: 1.0, 1: 1.0, 5: 1.0})
        assert partial_sum(f, 2).support == (0, 1)

    def test_empty(self):
        assert partial_sum(SpectralFunction(), 3).is_zero()

    def test_boundary_harmonic_removed(self):
        f = SpectralFunction({-4: 2j})
        assert partial_sum(f, 4).is_zero()


class TestBestApproximation:
    def test_tail_sum(self):
        f = SpectralFunction({1: 1.0, 3: 0.5})
        assert best_approximation(f, 1, 2) == pytest.approx(0.5)

    def test_no_tail(self):
        f = SpectralFunction({0: 1.0, 1: 2.0, -1: 1j})
        assert best_approximation(f, 2, 2) == 0.0

    def test_both_in_tail(self):
        f = SpectralFunction({-2: 1.0, 2: 1.0})
        assert best_approximation(f, 2, 2) == pytest.approx(math.sqrt(2.0))

    def test_equals_norm_of_remainder(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            ks = rng.choice(np.arange(-20, 21), size=6, replace=False)
            f = SpectralFunction({int(k): complex(*rng.standard_normal(2)) for k in ks})
            for p in (1, 1.5, 2, 3):
                for n in (1, 2, 5, 9):
                    direct = best_approximation(f, p, n)
                    via_norm = sp_norm(f - partial_sum(f, n), p)
                    assert direct == pytest.approx(via_norm, rel=1e-12, abs=1e-300)

    def test_nonincreasing_in_n(self):
        rng = np.random.default_rng(5)
        ks = rng.choice(np.arange(-15, 16), size=8, replace=False)
        f = SpectralFunction({int(k): complex(*rng.standard_normal(2)) for k in ks})
        vals = [best_approximation(f, 1.5, n) for n in range(1, 20)]
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.integers(-12, 12),
            st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        ),
        min_size=0,
        max_size=6,
        unique_by=lambda kv: kv[0],
    ),
    st.lists(
        st.tuples(
            st.integers(-12, 12),
            st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        ),
        min_size=0,
        max_size=6,
        unique_by=lambda kv: kv[0],
    ),
    st.sampled_from([1.0, 1.5, 2.0, 3.0]),
)
def test_triangle_inequality(pairs_f, pairs_g, p):
    f = SpectralFunction(dict(pairs_f))
    g = SpectralFunction(dict(pairs_g))
    assert sp_norm(f + g, p) <= sp_norm(f, p) + sp_norm(g, p) + 1e-12


class TestFourierFromSamples:
    def test_pure_exponential(self):
        x = 2 * np.pi * np.arange(16) / 16
        f = fourier_from_samples(np.exp(2j * x), band=4)
        assert f == SpectralFunction({2: 1.0})

    def test_zero_input(self):
        f = fourier_from_samples(np.zeros(16), band=4)
        assert f.is_zero()

    def test_cosine_against_hand_trapezoid(self):
        # oracle: direct O(N^2) trapezoid sum, written out independently
        n_grid, band = 8, 2
        x = 2 * np.pi * np.arange(n_grid) / n_grid
        samples = 2 * np.cos(x)
        expected = {}
        for k in range(-band, band + 1):
            acc = 0j
            for j in range(n_grid):
                acc += samples[j] * np.exp(-1j * k * x[j])
            expected[k] = acc / n_grid
        f = fourier_from_samples(samples, band)
        assert f == SpectralFunction({1: 1.0, -1: 1.0})
        for k, c in expected.items():
            assert f[k] == pytest.approx(c, abs=1e-12)

    def test_grid_too_small(self):
        with pytest.raises(GridTooSmallError):
            fourier_from_samples(np.zeros(8), band=4)

    def test_round_trip_random_sparse(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            ks = rng.choice(np.arange(-10, 11), size=5, replace=False)
            f = SpectralFunction({int(k): complex(*rng.standard_normal(2)) for k in ks})
            band = f.order
            x = 2 * np.pi * np.arange(4 * band + 3) / (4 * band + 3)
            g = fourier_from_samples(f.evaluate(x), band)
            for k in set(f.support) | set(g.support):
                assert g[k] == pytest.approx(f[k], abs=1e-10)
