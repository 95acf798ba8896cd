import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st
from numpy.testing import assert_allclose

from frdft.modules.dft_engine import DFTEngine, energy, parity
from frdft.modules.errors import (
    ConditioningError,
    InvalidInputError,
    ResourceCapError,
    UnsupportedParityError,
)
from frdft.modules.fractional_transform import (
    DECOMPOSED,
    RAW,
    FractionalTransform,
    TransformMatrix,
    apply_matrix,
    chirp_rates,
    frdft_apply,
    frdft_inverse,
    frdft_matrix,
    frdft_matrix_product,
    quadratic_phase,
    reduce_angle,
    root_sum,
    sigma,
    unitarity_deviation,
)
from tests.conftest import random_signal

E_MINUS_I_PI_4 = cmath.exp(-1j * math.pi / 4)


class TestChirpRates:

    def test_zero(self):
        rates = chirp_rates(0.0)
        assert (rates.q1, rates.q2) == (0.0, 0.0)

    def test_quarter_turn(self):
        rates = chirp_rates(math.pi / 2)
        assert rates.q1 == pytest.approx(1.0, abs=1e-15)
        assert rates.q2 == pytest.approx(1.0, abs=1e-15)

    def test_third_turn(self):
        rates = chirp_rates(math.pi / 3)
        assert rates.q1 == pytest.approx(0.5773503, abs=1e-7)
        assert rates.q2 == pytest.approx(0.8660254, abs=1e-7)

    def test_near_pi_names_the_bound(self):
        with pytest.raises(ConditioningError, match='1e\\+08'):
            chirp_rates(math.pi - 1e-12)

    def test_outside_open_interval(self):
        with pytest.raises(ConditioningError):
            chirp_rates(-math.pi)
        with pytest.raises(ConditioningError):
            chirp_rates(4.0)

    def test_custom_bound(self):
        with pytest.raises(ConditioningError, match='bound 10'):
            chirp_rates(3.0, conditioning_bound=10.0)


class TestQuadraticPhase:

    def test_zero_rate_is_identity(self, rng):
        x = random_signal(rng, 9)
        assert_allclose(quadratic_phase(x, 0.0), x)

    def test_first_sample_unchanged(self, rng):
        x = random_signal(rng, 9)
        assert quadratic_phase(x, 0.37)[0] == x[0]

    def test_n4_unit_rate(self):
        expected = [1, E_MINUS_I_PI_4, -1, E_MINUS_I_PI_4]
        assert_allclose(quadratic_phase([1, 1, 1, 1], 1.0), expected, atol=1e-15)

    def test_preserves_magnitudes(self, rng):
        x = random_signal(rng, 33)
        assert_allclose(np.abs(quadratic_phase(x, 0.81)), np.abs(x), rtol=1e-14)


class TestApply:

    def test_zero_angle_is_identity(self, transform, rng):
        for n in (4, 8, 64, 256):
            for _ in range(10):
                x = random_signal(rng, n, unit=True)
                assert np.max(np.abs(transform.apply(x, 0.0) - x)) <= 1e-12

    @pytest.mark.parametrize('n', [2, 4, 16, 64])
    def test_quarter_angle_raw_is_dft_up_to_sigma(self, transform, engine, rng, n):
        x = random_signal(rng, n)
        assert_allclose(transform.apply(x, math.pi / 2, mode=RAW), sigma(n) * engine.dft(x), atol=1e-10)

    def test_matches_matrix_path(self, transform, rng):
        x = random_signal(rng, 16)
        m = transform.matrix(16, 0.7)
        assert np.max(np.abs(transform.apply(x, 0.7) - apply_matrix(m, x))) <= 1e-10

    @pytest.mark.parametrize('n', [4, 8, 16, 32, 64, 128])
    def test_basis_vectors_reproduce_matrix_columns(self, transform, n):
        angles = np.random.default_rng(n).uniform(-3 * math.pi / 4, 3 * math.pi / 4, 20)
        basis = np.eye(n, dtype=np.complex128)
        for alpha in angles:
            columns = transform.apply(basis, float(alpha))
            assert np.max(np.abs(columns - transform.matrix(n, float(alpha)).entries)) <= 1e-9

    @pytest.mark.parametrize('n', [1, 3, 16, 100, 1024, 4096])
    def test_energy_and_inverse_pairing(self, transform, rng, n):
        x = random_signal(rng, n, unit=True)
        alpha = float(rng.uniform(-3 * math.pi / 4, 3 * math.pi / 4))
        y = transform.apply(x, alpha)
        assert abs(energy(y) - 1.0) <= 1e-10
        assert np.max(np.abs(transform.apply(y, -alpha) - x)) <= 1e-9
        assert np.max(np.abs(transform.inverse(y, alpha) - x)) <= 1e-9

    @pytest.mark.parametrize('n', [2, 4, 8, 16])
    def test_small_angle_continuity(self, transform, rng, n):
        x = random_signal(rng, n, unit=True)
        assert np.max(np.abs(transform.apply(x, 1e-6) - x)) <= 1e-4

    def test_continuity_scales_with_length(self, transform, rng):
        # first-order bound 2 pi N alpha for unit-energy signals
        for n in (64, 256, 1024):
            x = random_signal(rng, n, unit=True)
            assert np.max(np.abs(transform.apply(x, 1e-6) - x)) <= 2 * math.pi * n * 1e-6

    @pytest.mark.parametrize('n', [1, 3, 8, 12])
    def test_decomposed_quarter_turns_are_exact(self, transform, engine, rng, n):
        x = random_signal(rng, n)
        assert np.array_equal(transform.apply(x, math.pi / 2, mode=DECOMPOSED), engine.dft(x))
        assert np.array_equal(transform.apply(x, math.pi, mode=DECOMPOSED), parity(x))
        assert np.array_equal(transform.apply(x, 0.0, mode=DECOMPOSED), x)

    def test_decomposed_accepts_any_angle(self, transform, rng):
        x = random_signal(rng, 32, unit=True)
        for alpha in (math.pi, -math.pi, 7.5, -123.4, 1e4):
            assert abs(energy(transform.apply(x, alpha, mode=DECOMPOSED)) - 1.0) <= 1e-10

    def test_decomposed_matches_raw_inside_residual_range(self, transform, rng):
        x = random_signal(rng, 16)
        assert_allclose(transform.apply(x, 0.5, mode=DECOMPOSED), transform.apply(x, 0.5, mode=RAW))

    def test_raw_rejects_pi(self, transform):
        with pytest.raises(ConditioningError):
            transform.apply([1, 2, 3, 4], math.pi)

    def test_unknown_mode(self, transform):
        with pytest.raises(InvalidInputError):
            transform.apply([1, 2], 0.1, mode='centered')

    def test_module_level_helper(self, rng):
        x = random_signal(rng, 8)
        assert_allclose(frdft_apply(x, 0.3), FractionalTransform().apply(x, 0.3))
        assert np.max(np.abs(frdft_inverse(frdft_apply(x, 0.3), 0.3) - x)) <= 1e-12

    @given(st.floats(-2.3, 2.3), st.integers(1, 70))
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_inverse_pairing_property(self, alpha, n):
        x = random_signal(np.random.default_rng(n), n)
        t = FractionalTransform()
        assert np.max(np.abs(t.apply(t.apply(x, alpha), -alpha) - x)) <= 1e-9 * max(1.0, np.linalg.norm(x))


class TestMatrix:

    @pytest.mark.parametrize('n', [4, 8, 64, 256])
    def test_zero_angle_is_identity(self, transform, n):
        m = transform.matrix(n, 0.0)
        assert np.max(np.abs(m.entries - np.eye(n))) <= 1e-12

    def test_quarter_angle_n4(self, transform, engine):
        m = transform.matrix(4, math.pi / 2)
        assert_allclose(m.entries, E_MINUS_I_PI_4 * engine.dft_matrix(4), atol=1e-12)

    @pytest.mark.parametrize('n', [4, 16, 64, 256])
    def test_quarter_angle_is_sigma_times_dft(self, transform, engine, n):
        m = transform.matrix(n, math.pi / 2)
        assert np.max(np.abs(m.entries - sigma(n) * engine.dft_matrix(n))) <= 1e-10

    def test_unitary(self, transform):
        assert unitarity_deviation(transform.matrix(8, 0.3)) <= 1e-10

    @pytest.mark.parametrize('n', [1, 5, 12])
    def test_closed_form_matches_explicit_product(self, transform, n):
        closed = transform.matrix(n, -1.1)
        product = transform.product_matrix(n, -1.1)
        assert_allclose(closed.entries, product.entries, atol=1e-12)

    def test_worker_count_does_not_change_result(self):
        serial = FractionalTransform(matrix_workers=1).matrix(24, 0.45)
        threaded = FractionalTransform(matrix_workers=4).matrix(24, 0.45)
        assert np.array_equal(serial.entries, threaded.entries)

    def test_dimension_errors(self, transform):
        with pytest.raises(InvalidInputError):
            transform.matrix(0, 0.1)
        with pytest.raises(ResourceCapError, match='FRFT_MATRIX_CAP'):
            FractionalTransform(matrix_size_cap=8).matrix(9, 0.1)

    def test_conditioning_error(self, transform):
        with pytest.raises(ConditioningError):
            transform.matrix(4, math.pi)

    def test_module_level_helper(self):
        assert_allclose(frdft_matrix(6, 0.2).entries, FractionalTransform().matrix(6, 0.2).entries)
        assert_allclose(frdft_matrix_product(6, 0.2).entries, frdft_matrix(6, 0.2).entries, atol=1e-12)

    def test_additivity_is_measured(self, transform):
        deviation = transform.additivity_deviation(16, 0.2, 0.3)
        assert math.isfinite(deviation) and deviation >= 0.0


class TestApplyMatrix:

    def test_identity(self, rng):
        x = random_signal(rng, 5)
        assert_allclose(apply_matrix(TransformMatrix.from_array(np.eye(5)), x), x)

    def test_dft_kernel(self, rng):
        x = random_signal(rng, 7)
        b = TransformMatrix.from_array(DFTEngine.dft_matrix(7))
        assert np.max(np.abs(apply_matrix(b, x) - DFTEngine().dft(x))) <= 1e-12

    def test_zero_vector(self):
        m = TransformMatrix.from_array(np.ones((3, 3)))
        assert_allclose(apply_matrix(m, np.zeros(3)), np.zeros(3))

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            apply_matrix(TransformMatrix.from_array(np.eye(3)), [1, 2])

    def test_non_square(self):
        with pytest.raises(InvalidInputError):
            TransformMatrix.from_array(np.ones((2, 3)))


class TestRootSums:

    def test_n4_k0(self):
        assert abs(root_sum(4, 0).value - 2 * E_MINUS_I_PI_4) <= 1e-12
        assert root_sum(4, 0).value.real == pytest.approx(1.4142136, abs=1e-7)
        assert root_sum(4, 0).value.imag == pytest.approx(-1.4142136, abs=1e-7)

    def test_n4_shift(self):
        assert abs(root_sum(4, 7).value - root_sum(4, 0).value) <= 1e-12

    def test_odd_n_is_not_shift_invariant(self):
        assert abs(root_sum(3, 1).value - root_sum(3, 0).value - (-2)) <= 1e-12

    def test_shift_invariance_for_even_n(self):
        for n in range(2, 65, 2):
            reference = root_sum(n, 0).value
            for k in range(-2 * n, 2 * n + 1):
                assert abs(root_sum(n, k).value - reference) <= 1e-12

    @pytest.mark.parametrize('n', [3, 5, 7])
    def test_odd_counterexamples_exist(self, n):
        reference = root_sum(n, 0).value
        assert max(abs(root_sum(n, k).value - reference) for k in range(-2 * n, 2 * n + 1)) > 0.1

    def test_magnitude_bound(self):
        for n in (1, 2, 9, 31, 64):
            assert abs(root_sum(n, 3).value) <= n

    def test_records_parity(self):
        assert root_sum(6, 0).is_even
        assert not root_sum(7, 0).is_even

    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            root_sum(0, 0)


class TestSigma:

    def test_n4(self):
        assert abs(sigma(4) - E_MINUS_I_PI_4) <= 1e-12
        assert sigma(4).real == pytest.approx(0.7071068, abs=1e-7)

    def test_n2(self):
        assert abs(sigma(2) - E_MINUS_I_PI_4) <= 1e-12

    def test_unit_modulus(self):
        for n in range(2, 1025, 2):
            assert abs(abs(sigma(n)) - 1.0) <= 1e-12

    def test_odd_refused(self):
        with pytest.raises(UnsupportedParityError):
            sigma(5)


class TestReduceAngle:

    def test_quarter(self):
        d = reduce_angle(math.pi / 2)
        assert (d.quarter_turns, d.residual) == (1, 0.0)

    def test_small(self):
        d = reduce_angle(0.3)
        assert d.quarter_turns == 0
        assert d.residual == pytest.approx(0.3)

    def test_two(self):
        d = reduce_angle(2.0)
        assert d.quarter_turns == 1
        assert d.residual == pytest.approx(0.4292037, abs=1e-7)

    @given(st.floats(-1e4, 1e4))
    @hypothesis_settings(max_examples=200)
    def test_reconstruction(self, alpha):
        d = reduce_angle(alpha)
        assert -math.pi / 4 <= d.residual < math.pi / 4
        assert d.quarter_turns in (0, 1, 2, 3)
        turns = (alpha - d.residual - d.quarter_turns * math.pi / 2) / (2 * math.pi)
        assert turns == pytest.approx(round(turns), abs=1e-9)

    @given(st.floats(-1e18, 1e18))
    @hypothesis_settings(max_examples=200)
    def test_large_angles_stay_in_range(self, alpha):
        d = reduce_angle(alpha)
        assert -math.pi / 4 <= d.residual < math.pi / 4
        assert d.quarter_turns in (0, 1, 2, 3)
        total = d.quarter_turns * math.pi / 2 + d.residual
        assert abs(math.remainder(total - math.remainder(alpha, 2 * math.pi), 2 * math.pi)) <= 1e-12

    @pytest.mark.parametrize('alpha', [1e18, -1e18, 1e300, 123456789.125])
    def test_huge_angle_decomposed_apply(self, alpha):
        x = random_signal(np.random.default_rng(4), 16)
        d = reduce_angle(alpha)
        transform = FractionalTransform()
        y = transform.apply(x, alpha, mode=DECOMPOSED)
        reduced = transform.engine.dft_power(transform.apply(x, d.residual, mode=RAW), d.quarter_turns)
        assert_allclose(y, reduced, atol=1e-12)
        assert energy(y) == pytest.approx(energy(x), rel=1e-10)

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            reduce_angle(math.inf)
