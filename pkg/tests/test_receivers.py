"""Physical-layer formulas: induced channel, error probabilities, limits."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gkreceiver import (
    BinaryChannel,
    Displacement,
    ModeEnergy,
    Prior,
    c1_capacity,
    gk_error,
    gk_transition,
    helstrom_error,
    holevo_capacity,
    homodyne_error,
    simulate_clicks,
)

import oracles

energies = st.floats(min_value=0.0, max_value=10.0, allow_nan=False)
displacements = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
priors = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


class TestDomainTypes:
    def test_mode_energy_alpha_squares_back(self):
        for n in (0.0, 0.3, 1.0, 7.5):
            e = ModeEnergy(n)
            assert e.alpha * e.alpha == pytest.approx(n, rel=4e-16)

    @pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
    def test_mode_energy_rejects(self, bad):
        with pytest.raises(ValueError):
            ModeEnergy(bad)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
    def test_displacement_rejects(self, bad):
        with pytest.raises(ValueError):
            Displacement(bad)

    @pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan")])
    def test_prior_rejects(self, bad):
        with pytest.raises(ValueError):
            Prior(bad)

    def test_channel_rejects_bad_rows(self):
        with pytest.raises(ValueError):
            BinaryChannel(np.array([[0.6, 0.6], [0.5, 0.5]]))
        with pytest.raises(ValueError):
            BinaryChannel(np.array([[1.2, -0.2], [0.5, 0.5]]))
        with pytest.raises(ValueError):
            BinaryChannel(np.zeros((2, 3)))

    def test_channel_is_immutable(self):
        ch = gk_transition(1.0, 0.5)
        with pytest.raises(ValueError):
            ch.w[0, 0] = 0.3


class TestTransition:
    def test_exact_nulling_vacuum_arm(self):
        ch = gk_transition(1.0, 0.0)
        assert ch.w[1, 1] == 1.0
        assert ch.w[1, 0] == 0.0
        assert ch.w[0, 1] == pytest.approx(math.exp(-4.0), rel=1e-15)

    def test_zero_energy_rows_identical(self):
        for beta in (0.0, 0.7, -2.3):
            ch = gk_transition(0.0, beta)
            assert ch.w[0, 0] == ch.w[1, 0]
            assert ch.w[0, 1] == ch.w[1, 1]

    def test_mirror_displacement_nulls_plus_arm(self):
        ch = gk_transition(1.0, -2.0)
        assert ch.w[0, 1] == 1.0
        assert ch.w[1, 1] == pytest.approx(math.exp(-4.0), rel=1e-15)

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            gk_transition(float("nan"), 0.0)
        with pytest.raises(ValueError):
            gk_transition(1.0, float("nan"))

    @given(energies, displacements)
    def test_rows_sum_to_one(self, n, beta):
        ch = gk_transition(n, beta)
        assert abs(ch.w[0].sum() - 1.0) <= 1e-12
        assert abs(ch.w[1].sum() - 1.0) <= 1e-12

    @given(energies, displacements)
    def test_relabeling_symmetry(self, n, beta):
        # swapping which symbol is nulled swaps the channel rows
        mirror = -2.0 * math.sqrt(n) - beta
        w = gk_transition(n, beta).w
        wm = gk_transition(n, mirror).w
        assert w[0] == pytest.approx(wm[1], rel=1e-12, abs=1e-15)
        assert w[1] == pytest.approx(wm[0], rel=1e-12, abs=1e-15)

    @given(energies, displacements)
    def test_matches_independent_formula(self, n, beta):
        # the reference 1 - exp(...) form cancels near zero, so allow it an
        # absolute error at the double-rounding scale
        a, b = oracles.click_probs(n, beta)
        ch = gk_transition(n, beta)
        assert ch.w[0, 0] == pytest.approx(float(a), rel=1e-9, abs=2e-16)
        assert ch.w[1, 0] == pytest.approx(float(b), rel=1e-9, abs=2e-16)


class TestGkError:
    def test_zero_energy_equal_priors_is_half(self):
        for beta in (0.0, 1.3, -4.0):
            assert gk_error(0.0, beta, 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_exact_nulling_closed_form(self):
        assert gk_error(0.5, 0.0, 0.5) == 0.5 * math.exp(-2.0)

    def test_pure_plus_prior_only_misses(self):
        assert gk_error(1.0, 0.0, 1.0) == math.exp(-4.0)

    def test_closed_form_across_energies(self):
        for n in np.linspace(0.1, 10.0, 34):
            n = float(n)
            expected = 0.5 * math.exp(-4.0 * n)
            assert gk_error(n, 0.0, 0.5) == pytest.approx(expected, rel=1e-15)


class TestHelstrom:
    def test_zero_energy_collapses_to_min_prior(self):
        for p in np.linspace(0.0, 1.0, 21):
            p = float(p)
            assert helstrom_error(0.0, p) == pytest.approx(min(p, 1.0 - p), abs=1e-15)

    def test_equal_priors_value(self):
        naive = 0.5 * (1.0 - math.sqrt(1.0 - math.exp(-4.0)))
        assert helstrom_error(1.0, 0.5) == pytest.approx(naive, rel=1e-12)

    def test_deep_tail_keeps_precision(self):
        # naive evaluation underflows to 0 here
        val = helstrom_error(10.0, 0.5)
        assert val == pytest.approx(0.25 * math.exp(-40.0), rel=1e-3)

    @given(energies, priors)
    def test_prior_symmetry(self, n, p):
        # 1 - (1 - p) does not round-trip exactly, so compare within an ulp
        assert helstrom_error(n, p) == pytest.approx(
            helstrom_error(n, 1.0 - p), abs=1e-15)

    def test_decreasing_in_energy(self):
        for p in (0.1, 0.3, 0.5):
            vals = [helstrom_error(n, p) for n in np.linspace(0.01, 5.0, 40)]
            assert all(a > b for a, b in zip(vals, vals[1:]))

    @given(energies, displacements, priors)
    def test_quantum_limit_dominates_receiver(self, n, beta, p):
        assert helstrom_error(n, p) <= gk_error(n, beta, p) + 1e-12


class TestHomodyne:
    def test_zero_energy(self):
        assert homodyne_error(0.0) == 0.5

    def test_reference_values(self):
        assert homodyne_error(1.0) == pytest.approx(
            0.5 * math.erfc(math.sqrt(2.0)), rel=1e-15)
        assert homodyne_error(1.0) == pytest.approx(0.0227501, abs=5e-8)
        assert homodyne_error(10.0) == pytest.approx(1.2698e-10, rel=1e-4)


class TestCapacityLimits:
    def test_endpoints(self):
        assert c1_capacity(0.0) == 0.0
        assert holevo_capacity(0.0) == 0.0
        assert c1_capacity(10.0) == pytest.approx(1.0, abs=1e-6)
        assert holevo_capacity(10.0) == pytest.approx(1.0, abs=1e-6)

    def test_against_independent_composition(self):
        pe = float(oracles.h2(helstrom_error(1.0, 0.5)))
        assert c1_capacity(1.0) == pytest.approx(1.0 - pe, abs=1e-14)
        q = 0.5 * (1.0 - math.exp(-2.0))
        assert holevo_capacity(1.0) == pytest.approx(float(oracles.h2(q)), abs=1e-14)

    def test_holevo_dominates_c1(self):
        for n in np.logspace(-3, 1, 40):
            n = float(n)
            assert holevo_capacity(n) >= c1_capacity(n) - 1e-12


class TestSimulateClicks:
    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            simulate_clicks(1.0, 0.0, 0.5, 0, 1)

    def test_deterministic_given_seed(self):
        a = simulate_clicks(0.7, 0.2, 0.4, 20_000, 123)
        b = simulate_clicks(0.7, 0.2, 0.4, 20_000, 123)
        assert np.array_equal(a, b)
        c = simulate_clicks(0.7, 0.2, 0.4, 20_000, 124)
        assert not np.array_equal(a, c)

    def test_vacuum_arm_never_clicks(self):
        counts = simulate_clicks(1.0, 0.0, 0.5, 200_000, 7)
        assert counts[1, 0] == 0
        assert counts.sum() == 200_000

    def test_matches_analytic_rates(self):
        counts = simulate_clicks(1.0, 0.0, 0.5, 200_000, 11)
        w = gk_transition(1.0, 0.0).w
        for x in range(2):
            total = counts[x].sum()
            q = w[x, 0]
            sigma = math.sqrt(q * (1.0 - q) / total)
            emp = counts[x, 0] / total
            if sigma > 0:
                assert abs(emp - q) <= 5.0 * sigma
            else:
                assert emp == q

    def test_zero_energy_rows_statistically_equal(self):
        counts = simulate_clicks(0.0, 1.0, 0.5, 200_000, 5)
        rates = counts[:, 0] / counts.sum(axis=1)
        sigma = math.sqrt(sum(0.25 / counts[x].sum() for x in range(2)))
        assert abs(rates[0] - rates[1]) <= 5.0 * sigma
