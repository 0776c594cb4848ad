import math

import numpy as np
import pytest

from graphheat import (
    Distribution,
    StepSet,
    circulant_entropy,
    circulant_kernel,
    circulant_kernel_row,
    complete_heat_entropy,
    complete_rw_entropy,
    conditional_entropy,
    expm_oracle,
    giant_component_fraction,
    heat_kernel,
    lambert_w_principal,
    laplacian,
    make_circulant,
    make_complete,
    meanfield_er_entropy,
    meanfield_er_kernel_entries,
)


class TestCompleteEntropy:
    def test_zero_at_t0(self):
        assert complete_heat_entropy(10, 0.0) == 0.0
        assert complete_heat_entropy(10, 1e-12) == pytest.approx(0.0, abs=1e-9)

    def test_log_n_at_large_t(self):
        assert complete_heat_entropy(10, 1e3) == pytest.approx(math.log(10), abs=1e-15)

    def test_matches_spectral_pipeline(self, rng):
        for n in (3, 7, 20):
            k = heat_kernel(make_complete(n))
            p0 = Distribution.random_simplex(n, rng)
            for t in np.geomspace(1e-3, 5.0, 15):
                assert complete_heat_entropy(n, t) == pytest.approx(
                    conditional_entropy(k, p0, t), abs=1e-10
                )

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            complete_heat_entropy(1, 0.5)

    def test_monotone(self):
        ts = np.geomspace(1e-3, 3.0, 50)
        vals = [complete_heat_entropy(8, t) for t in ts]
        assert np.diff(vals).min() >= -1e-12


class TestCompleteRwEntropy:
    def test_zero_at_t0(self):
        assert complete_rw_entropy(6, 0.0) == 0.0

    def test_log_n_at_large_t(self):
        assert complete_rw_entropy(6, 1e4) == pytest.approx(math.log(6), abs=1e-12)

    def test_exact_time_rescaling(self):
        assert complete_rw_entropy(5, 2.0) == complete_heat_entropy(5, 0.5)


class TestCirculantKernel:
    def test_t0_is_delta(self):
        h = circulant_kernel_row(10, StepSet.of(1, 3), 0.0)
        assert np.abs(h - np.eye(10)[0]).max() <= 1e-12

    def test_cycle_formula(self):
        # h_t(r) = e^{-2t} (1/n) sum exp(2t cos(2 pi k/n)) omega^{kr}
        n, t = 11, 0.6
        h = circulant_kernel_row(n, StepSet.of(1), t)
        k = np.arange(n)
        phases = np.exp(2 * t * np.cos(2 * np.pi * k / n))
        direct = np.array(
            [
                math.exp(-2 * t) / n * (phases * np.exp(-2j * np.pi * k * r / n)).sum().real
                for r in range(n)
            ]
        )
        assert np.abs(h - direct).max() <= 1e-12

    @pytest.mark.parametrize("n,steps,t", [(20, (1, 2, 3), 1.0), (9, (1, 4), 0.3), (16, (1, 8), 2.0)])
    def test_matches_expm(self, n, steps, t):
        g = make_circulant(n, StepSet.of(*steps))
        expected = expm_oracle(-t * laplacian(g))
        assert np.abs(circulant_kernel_row(n, steps, t) - expected[0]).max() <= 1e-9
        assert np.abs(circulant_kernel(n, steps, t) - expected).max() <= 1e-9

    def test_fft_path_matches_direct(self):
        n, steps, t = 600, (1, 5, 17), 0.8
        fft = circulant_kernel_row(n, steps, t)  # above FFT threshold
        direct = circulant_kernel_row(n, steps, t, use_fft=False)
        assert np.abs(fft - direct).max() <= 1e-12

    def test_row_is_distribution(self):
        h = circulant_kernel_row(30, StepSet.of(2, 5), 0.5)
        assert h.min() >= 0.0
        assert abs(h.sum() - 1.0) <= 1e-10


class TestCirculantEntropy:
    def test_zero_at_t0(self):
        # the DFT sum leaves roundoff-level mass off the diagonal at t = 0
        assert circulant_entropy(12, StepSet.of(1), 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_log_n_limit(self):
        n = 12
        gap = np.sort(2 - 2 * np.cos(2 * np.pi * np.arange(n) / n))[1]
        assert circulant_entropy(n, StepSet.of(1), 50 / gap) == pytest.approx(
            math.log(n), abs=1e-6
        )

    def test_matches_generic_pipeline(self, rng):
        n, steps = 20, (1, 2, 3)
        k = heat_kernel(make_circulant(n, StepSet.of(*steps)))
        p0 = Distribution.random_simplex(n, rng)
        for t in (0.1, 0.7, 3.0):
            assert circulant_entropy(n, steps, t) == pytest.approx(
                conditional_entropy(k, p0, t), abs=1e-9
            )

    def test_denser_grows_faster(self):
        t = 0.5
        assert circulant_entropy(20, (1,), t) < circulant_entropy(20, (1, 2), t)
        assert circulant_entropy(20, (1, 2), t) < circulant_entropy(20, (1, 2, 3), t)


class TestMeanField:
    def test_kernel_entries_invariants(self):
        for t in (0.0, 0.2, 3.0, 1e4):
            a, b = meanfield_er_kernel_entries(50, 0.1, t)
            assert a + 49 * b == pytest.approx(1.0, abs=1e-12)
        a0, b0 = meanfield_er_kernel_entries(50, 0.1, 0.0)
        assert (a0, b0) == (1.0, 0.0)

    def test_zero_at_t0(self):
        assert meanfield_er_entropy(40, 0.2, 0.0) == 0.0

    def test_log_n_limit(self):
        assert meanfield_er_entropy(40, 0.2, 1e4) == pytest.approx(math.log(40), abs=1e-12)

    def test_p_one_is_complete(self):
        for t in np.geomspace(1e-3, 10.0, 20):
            assert meanfield_er_entropy(15, 1.0, t) == pytest.approx(
                complete_heat_entropy(15, t), abs=1e-14
            )

    def test_monotone_and_bounded(self):
        n = 30
        ts = np.geomspace(1e-3, 100.0, 80)
        vals = np.array([meanfield_er_entropy(n, 0.15, t) for t in ts])
        assert np.diff(vals).min() >= -1e-9
        assert vals.max() <= math.log(n) + 1e-9

    def test_invalid_p(self):
        with pytest.raises(ValueError):
            meanfield_er_entropy(10, 0.0, 1.0)


def bisection_fixed_point(c, tol=1e-13):
    """Independent oracle: solve S = 1 - exp(-c S) on (0, 1] by bisection."""
    lo, hi = 1e-12, 1.0
    f = lambda s: s - (1.0 - math.exp(-c * s))
    assert f(hi) >= 0
    # move lo right until f(lo) < 0 (S=0 is also a root)
    while f(lo) > 0:
        lo *= 2
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestGiantComponent:
    def test_c2_value(self):
        assert giant_component_fraction(2.0) == pytest.approx(0.79681, abs=1e-5)

    @pytest.mark.parametrize("c", [1.1, 2.0, 5.0, 10.0])
    def test_fixed_point_residual(self, c):
        s = giant_component_fraction(c)
        assert abs(s - (1.0 - math.exp(-c * s))) <= 1e-10

    @pytest.mark.parametrize("c", [1.1, 1.5, 2.0, 5.0, 10.0])
    def test_matches_bisection_oracle(self, c):
        assert giant_component_fraction(c) == pytest.approx(
            bisection_fixed_point(c), abs=1e-9
        )

    def test_limits(self):
        assert giant_component_fraction(50.0) == pytest.approx(1.0, abs=1e-12)
        assert 0.0 < giant_component_fraction(1.001) < 0.01

    def test_subcritical_rejected(self):
        with pytest.raises(ValueError):
            giant_component_fraction(1.0)


class TestLambertW:
    def test_known_values(self):
        assert lambert_w_principal(0.0) == 0.0
        assert lambert_w_principal(math.e) == pytest.approx(1.0, abs=1e-12)
        assert lambert_w_principal(-1.0 / math.e) == pytest.approx(-1.0, abs=1e-6)

    def test_residuals(self):
        for x in (-0.36, -0.1, -0.01, 0.5, 3.0, 100.0):
            w = lambert_w_principal(x)
            assert abs(w * math.exp(w) - x) <= 1e-10

    def test_domain(self):
        with pytest.raises(ValueError):
            lambert_w_principal(-1.0)
