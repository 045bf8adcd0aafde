import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselpd.bessel_transform import (
    FunctionClass,
    KernelParams,
    WeightedFunction,
    c_alpha,
    convolve,
    fourier_bessel,
    gauss_kernel,
    gaussian_convolution,
    gaussian_power_transform,
    gaussian_transform,
    gaussian_translate,
    kummer_kernel,
    poisson_kernel,
    rational_kernel,
    translate,
    weighted_lp_norm,
)
from besselpd.exceptions import DivergenceError, DomainError
from besselpd.special_fns import gamma, normalized_j

from conftest import rel_err
from oracles import EXAMPLE1_TRANSFORM, EXAMPLE2_TRANSFORM


def gaussian(alpha, s=1.0):
    return WeightedFunction(lambda t: np.exp(-s * t * t), alpha)


class TestWeightedFunction:
    def test_scalar_callable_wrapped(self):
        wf = WeightedFunction(lambda t: math.exp(-t), 0.5)
        assert np.allclose(wf(np.array([0.0, 1.0])), [1.0, math.exp(-1)])

    def test_order_checked(self):
        with pytest.raises(DomainError):
            WeightedFunction(np.exp, -0.5)

    def test_lp_needs_exponent(self):
        with pytest.raises(DomainError):
            WeightedFunction(np.exp, 1.0, FunctionClass.LP_ALPHA)
        assert WeightedFunction(np.exp, 1.0, "Lp_alpha", p=2).p == 2

    def test_kernel_time_positive(self):
        with pytest.raises(DomainError):
            KernelParams(0.0, 1.0)


class TestFourierBessel:
    def test_rational_pair(self):
        # transform of (t^2 + a^2)^(-beta-1) at (alpha, beta, a, x) = (0.5, 1.5, 1, 2)
        wf = WeightedFunction(lambda t: (t * t + 1.0) ** -2.5, 0.5)
        r = fourier_bessel(wf, 2.0, 1e-12)
        assert rel_err(r.value, EXAMPLE1_TRANSFORM) < 1e-10
        assert rel_err(rational_kernel(0.5, 1.5, 1.0, 2.0), EXAMPLE1_TRANSFORM) < 1e-12

    def test_gaussian_power_pair(self):
        wf = WeightedFunction(lambda t: t**0.5 * np.exp(-t * t), 0.5)
        r = fourier_bessel(wf, 1.0, 1e-12)
        assert rel_err(r.value, EXAMPLE2_TRANSFORM) < 1e-10
        assert rel_err(gaussian_power_transform(0.5, 0.5, 1.0, 1.0), EXAMPLE2_TRANSFORM) < 1e-12

    @pytest.mark.parametrize("alpha, beta, a", [(0.5, 1.5, 1.0), (1.0, 2.5, 0.7), (0.2, 0.9, 2.0)])
    def test_rational_pair_grid(self, alpha, beta, a):
        wf = WeightedFunction(lambda t: (t * t + a * a) ** (-beta - 1), alpha)
        xi = np.array([0.3, 1.0, 2.5, 6.0])
        r = fourier_bessel(wf, xi, 1e-12)
        assert np.allclose(r.value, rational_kernel(alpha, beta, a, xi), rtol=1e-7, atol=0)

    def test_kummer_kernel_is_positive_multiple(self):
        # kummer_kernel equals the transform of t^(beta - 2 alpha) e^{-t^2/a^2} up to a constant
        alpha, beta, a = 0.5, 1.0, 1.3
        x = np.linspace(0.2, 4, 7)
        ratio = kummer_kernel(alpha, beta, a, x) / gaussian_power_transform(alpha, beta - 2 * alpha, a, x)
        assert np.all(ratio > 0)
        assert np.ptp(ratio) < 1e-12 * ratio.mean()

    def test_zero_frequency_is_mass(self):
        wf = gaussian(1.0)
        assert abs(fourier_bessel(wf, 0.0).value - weighted_lp_norm(wf, 1).value) < 1e-12

    @pytest.mark.parametrize("alpha", [-0.3, 0.5, 1.0, 2.5])
    def test_gaussian_closed_form(self, alpha):
        xi = np.array([0.0, 0.5, 1.0, 3.0, 7.0])
        r = fourier_bessel(gaussian(alpha, 0.8), xi, 1e-13)
        assert np.all(np.abs(r.value - gaussian_transform(alpha, 0.8, xi)) <= r.abs_err + 1e-14)

    def test_gaussian_self_reciprocal(self):
        xi = np.linspace(0, 5, 11)
        r = fourier_bessel(gaussian(1.0, 0.5), xi, 1e-13)
        assert np.allclose(r.value, np.exp(-xi * xi / 2), atol=1e-12)

    def test_array_and_scalar(self):
        wf = gaussian(0.5)
        assert isinstance(fourier_bessel(wf, 1.0).value, float)
        assert fourier_bessel(wf, [1.0, 2.0]).value.shape == (2,)

    def test_negative_frequency(self):
        with pytest.raises(DomainError):
            fourier_bessel(gaussian(0.5), -1.0)

    def test_divergent(self):
        with pytest.raises(DivergenceError):
            fourier_bessel(WeightedFunction(lambda t: 1 / (1 + t * t), 1.0), 0.0)

    def test_sup_bounded_by_l1(self):
        wf = WeightedFunction(lambda t: np.exp(-t), 0.5)
        xi = np.linspace(0, 10, 21)
        assert np.max(np.abs(fourier_bessel(wf, xi).value)) <= weighted_lp_norm(wf, 1).value + 1e-12


class TestTranslate:
    def test_zero_shift(self):
        wf = gaussian(1.0)
        r = translate(wf, 0.0, 1.7)
        assert r.value == math.exp(-1.7**2) and r.abs_err == 0.0

    def test_product_formula(self):
        lam, x, y = 0.7, 1.3, 2.1
        wf = WeightedFunction(lambda t: np.asarray(normalized_j(1.0, lam * t).value), 1.0)
        want = normalized_j(1.0, lam * x).value * normalized_j(1.0, lam * y).value
        assert rel_err(translate(wf, x, y, 1e-12).value, want) < 1e-8

    def test_constant(self):
        wf = WeightedFunction(lambda t: np.ones_like(t), 0.5)
        assert np.allclose(translate(wf, 1.3, [0.2, 2.1]).value, 1.0, atol=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 3.0])
    def test_gaussian_closed_form(self, alpha):
        y = np.linspace(0, 3, 7)
        r = translate(gaussian(alpha), 1.1, y, 1e-13)
        assert np.allclose(r.value, gaussian_translate(alpha, 1.0, 1.1, y), rtol=1e-11, atol=1e-15)

    @given(st.floats(0, 4), st.floats(0, 4), st.floats(-0.4, 3))
    @settings(max_examples=40, deadline=None)
    def test_symmetric(self, x, y, alpha):
        wf = gaussian(alpha)
        assert abs(translate(wf, x, y, 1e-12).value - translate(wf, y, x, 1e-12).value) < 1e-11

    @given(st.floats(0, 6), st.floats(0, 6), st.floats(-0.4, 3))
    @settings(max_examples=40, deadline=None)
    def test_positivity(self, x, y, alpha):
        wf = WeightedFunction(lambda t: np.exp(-t) * (1 + np.cos(3 * t)), alpha)
        r = translate(wf, x, y, 1e-10)
        assert r.value >= -1e-10

    @pytest.mark.parametrize("x", [0.5, 2.0])
    def test_contraction(self, x):
        alpha = 1.0
        f = gaussian(alpha)
        shifted = WeightedFunction(lambda y: np.atleast_1d(translate(f, x, y, 1e-12).value), alpha)
        assert weighted_lp_norm(shifted, 1, 1e-9, rtol=1e-9).value <= weighted_lp_norm(f, 1).value + 1e-8

    @pytest.mark.parametrize("x", [0.4, 1.5])
    def test_transform_of_translation(self, x):
        alpha = 1.0
        f = gaussian(alpha)
        shifted = WeightedFunction(lambda y: np.atleast_1d(translate(f, x, y, 1e-12).value), alpha)
        xi = np.array([0.5, 1.2, 2.0])
        got = fourier_bessel(shifted, xi, 1e-10).value
        want = np.asarray(normalized_j(alpha, x * xi).value) * gaussian_transform(alpha, 1.0, xi)
        assert np.all(np.abs(got - want) <= 1e-5 * np.abs(gaussian_transform(alpha, 1.0, xi)))


class TestConvolve:
    def test_gaussian_pair(self):
        r = convolve(gaussian(1.0), gaussian(1.0, 2.0), 0.7)
        assert abs(r.value - gaussian_convolution(1.0, 1.0, 2.0, 0.7)) <= r.abs_err + 1e-12

    def test_convolution_theorem(self):
        alpha, s, q = 0.5, 1.0, 0.6
        conv = WeightedFunction(lambda x: gaussian_convolution(alpha, s, q, x), alpha)
        xi = np.array([0.3, 1.0, 2.0])
        lhs = fourier_bessel(conv, xi, 1e-12).value
        rhs = gaussian_transform(alpha, s, xi) * gaussian_transform(alpha, q, xi)
        assert np.allclose(lhs, rhs, rtol=1e-4, atol=0)

    def test_young_bound(self):
        f, g = gaussian(1.0), gaussian(1.0, 3.0)
        fg = WeightedFunction(lambda x: gaussian_convolution(1.0, 1.0, 3.0, x), 1.0)
        bound = weighted_lp_norm(f, 1).value * weighted_lp_norm(g, 1).value
        assert weighted_lp_norm(fg, 1).value <= bound + 1e-12

    def test_narrow_gaussian_approaches_translation(self):
        alpha, x = 0.5, 0.8
        f = gaussian(alpha)
        exact = translate(f, x, 0.0).value
        prev = None
        for s in (5.0, 50.0, 500.0):
            mass = weighted_lp_norm(gaussian(alpha, s), 1).value
            g = WeightedFunction(lambda t, s=s, m=mass: np.exp(-s * t * t) / m, alpha)
            gap = abs(convolve(f, g, x, 1e-9).value - exact)
            assert prev is None or gap < prev
            prev = gap
        assert prev < 1e-2

    def test_orders_must_match(self):
        with pytest.raises(DomainError):
            convolve(gaussian(1.0), gaussian(0.5), 1.0)


class TestKernels:
    @pytest.mark.parametrize("alpha, t", [(0.5, 1.0), (2.0, 0.3)])
    def test_gauss_at_zero(self, alpha, t):
        assert gauss_kernel(KernelParams(t, alpha), 0.0) == pytest.approx((2 * t) ** -(alpha + 1), rel=1e-15)

    @pytest.mark.parametrize("alpha, t", [(0.5, 1.0), (2.0, 0.3)])
    def test_poisson_at_zero(self, alpha, t):
        want = 2 ** (alpha + 1) * gamma(alpha + 1.5) / math.sqrt(math.pi) * t ** -(2 * alpha + 2)
        assert poisson_kernel(KernelParams(t, alpha), 0.0) == pytest.approx(want, rel=1e-14)

    def test_gauss_transform_proportional(self):
        p = KernelParams(1.0, 0.5)
        wf = WeightedFunction(lambda x: gauss_kernel(p, x), 0.5)
        xi = np.linspace(0.2, 3, 8)
        ratio = fourier_bessel(wf, xi, 1e-12).value / np.exp(-xi * xi)
        assert np.std(ratio) / np.mean(ratio) < 1e-6

    @pytest.mark.parametrize("alpha", [0.5, 1.5])
    def test_poisson_transform(self, alpha):
        p = KernelParams(0.8, alpha)
        wf = WeightedFunction(lambda x: poisson_kernel(p, x), alpha)
        xi = np.array([0.0, 0.5, 2.0])
        assert np.allclose(fourier_bessel(wf, xi, 1e-11).value, np.exp(-0.8 * xi), rtol=1e-7)

    def test_kernels_have_unit_mass(self):
        for kern in (gauss_kernel, poisson_kernel):
            p = KernelParams(0.5, 1.0)
            assert abs(weighted_lp_norm(WeightedFunction(lambda x: kern(p, x), 1.0), 1).value - 1) < 1e-9


class TestNorms:
    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_parseval(self, alpha):
        f = gaussian(alpha)
        hat = WeightedFunction(lambda xi: fourier_bessel(f, xi, 1e-13).value, alpha)
        ratio = weighted_lp_norm(hat, 2, 1e-10, rtol=1e-10).value / weighted_lp_norm(f, 2).value
        assert abs(ratio - 1) < 1e-6

    def test_zero_function(self):
        assert weighted_lp_norm(WeightedFunction(lambda t: 0 * t, 1.0), 2).value == 0.0

    def test_gaussian_l1(self):
        # c_a int e^{-t^2} t^(2a+1) dt = c_a Gamma(a+1) / 2
        alpha = 1.5
        want = c_alpha(alpha) * gamma(alpha + 1) / 2
        assert abs(weighted_lp_norm(gaussian(alpha), 1).value - want) < 1e-13

    @pytest.mark.parametrize("p", [0.5, math.inf])
    def test_exponent_range(self, p):
        with pytest.raises(DomainError):
            weighted_lp_norm(gaussian(1.0), p)
