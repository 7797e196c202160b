"""risssk/mathstats.py tests.

Run with:
  pytest -vvv tests/test_mathstats.py
"""

import math

import numpy as np
import pytest
from scipy import stats
import torch

from risssk import mathstats
from risssk.utils.errors import DomainError, QuadratureError


def test_rng_stream_is_reproducible() -> None:
    a = mathstats.RngStream(7, 3, (1, 2)).complex_normal(16)
    b = mathstats.RngStream(7, 3, (1, 2)).complex_normal(16)
    assert torch.equal(a, b)
    # sibling streams differ
    c = mathstats.RngStream(7, 4, (1, 2)).complex_normal(16)
    assert not torch.equal(a, c)


def test_rng_stream_spawn_matches_direct_key() -> None:
    parent = mathstats.RngStream(11, 2)
    assert torch.equal(parent.spawn(5, 6).normal(8), mathstats.RngStream(11, 2, (5, 6)).normal(8))


def test_rng_stream_rejects_negative_keys() -> None:
    with pytest.raises(DomainError, match='non-negative'):
        mathstats.RngStream(-1)
    with pytest.raises(DomainError):
        mathstats.RngStream(0, 0, (-3,))


def test_complex_normal_is_circular_unit_variance() -> None:
    z = mathstats.RngStream(1).complex_normal(200_000)
    assert z.dtype == torch.complex128
    assert torch.mean(torch.abs(z) ** 2).item() == pytest.approx(1., rel=0.02)
    assert torch.var(torch.real(z)).item() == pytest.approx(0.5, rel=0.02)
    assert abs(torch.mean(torch.real(z) * torch.imag(z)).item()) < 0.01


def test_integers_in_range() -> None:
    x = mathstats.RngStream(3).integers(4, 1000)
    assert x.min().item() >= 0 and x.max().item() <= 3


def test_empirical_distribution() -> None:
    emp = mathstats.EmpiricalDistribution(torch.arange(10, dtype=torch.float64), bin_count=5)
    assert len(emp) == 10
    assert emp.mean() == pytest.approx(4.5)
    assert emp.variance() == pytest.approx(8.25)
    assert emp.cdf(4.) == pytest.approx(0.5)
    probs, edges = emp.histogram()
    assert probs.sum() == pytest.approx(1.)
    assert len(edges) == 6
    dens, edges = emp.density()
    assert np.sum(dens * np.diff(edges)) == pytest.approx(1.)


@pytest.mark.parametrize(
    ('order', 'x', 'expected'),
    [
        (0, 0., 1.),
        (1, 0., 0.),
        (0, 1., 1.2660658777520082),
        (1, 1., 0.5651591039924851),
    ],
)
def test_bessel_i_known_values(order: int, x: float, expected: float) -> None:
    assert mathstats.bessel_i(order, x) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_bessel_i_domain() -> None:
    with pytest.raises(DomainError, match='order'):
        mathstats.bessel_i(2, 1.)
    with pytest.raises(DomainError, match='non-negative'):
        mathstats.bessel_i(0, -1.)
    with pytest.raises(DomainError, match='finite'):
        mathstats.bessel_i(0, math.nan)


def test_bessel_ie_stays_finite() -> None:
    # e^{-x} I_0(x) ~ 1 / sqrt(2 pi x)
    assert mathstats.bessel_ie(0, 1e6) == pytest.approx(1. / math.sqrt(2. * math.pi * 1e6), rel=1e-6)


def test_q_function_and_erf() -> None:
    assert mathstats.q_function(0.) == pytest.approx(0.5)
    assert mathstats.q_function(1.2815515655446004) == pytest.approx(0.1, rel=1e-12)
    np.testing.assert_allclose(mathstats.q_function(np.array([0., 40.])), [0.5, stats.norm.sf(40.)], rtol=1e-12)
    assert mathstats.gauss_error_phi(0.) == 0.
    assert mathstats.gauss_error_phi(10.) == pytest.approx(1.)


def test_chebyshev_nodes() -> None:
    nodes = mathstats.chebyshev_nodes(3)
    np.testing.assert_allclose(nodes, [math.cos(math.pi / 6), 0., -math.cos(math.pi / 6)], atol=1e-15)
    np.testing.assert_allclose(mathstats.chebyshev_nodes(1), [0.], atol=1e-15)
    with pytest.raises(DomainError):
        mathstats.chebyshev_nodes(0)


def test_adaptive_quadrature() -> None:
    assert mathstats.adaptive_quadrature(lambda x: x * x, 0., 1.) == pytest.approx(1. / 3., rel=1e-12)
    assert mathstats.adaptive_quadrature(lambda x: math.exp(-x), 0., math.inf) == pytest.approx(1., rel=1e-10)


def test_adaptive_quadrature_reports_failure() -> None:
    with pytest.raises(QuadratureError) as exc:
        mathstats.adaptive_quadrature(lambda x: 1. / x, 0., 1., limit=10)
    assert str(exc.value).startswith('E_QUAD')
    assert exc.value.abserr >= 0.


def test_ks_distance() -> None:
    n = 1000
    grid = stats.norm.ppf((np.arange(n) + 0.5) / n)
    assert mathstats.ks_distance(grid, stats.norm.cdf) == pytest.approx(0.5 / n, abs=1e-9)
    shifted = mathstats.EmpiricalDistribution(grid + 1.)
    assert mathstats.ks_distance(shifted, stats.norm.cdf) > 0.3
    with pytest.raises(DomainError, match='at least one'):
        mathstats.ks_distance([], stats.norm.cdf)


def test_q_function_matches_craig_form() -> None:
    craig = mathstats.adaptive_quadrature(lambda t: math.exp(-1. / (2. * math.sin(t) ** 2)) / math.pi, 0., math.pi / 2.,
                                          tol=1e-13)
    assert mathstats.q_function(1.) == pytest.approx(craig, abs=1e-12)
    x = np.linspace(-6., 6., 49)
    np.testing.assert_allclose(mathstats.q_function(x) + mathstats.q_function(-x), 1., atol=1e-15)
    np.testing.assert_allclose(mathstats.gauss_error_phi(-x), -mathstats.gauss_error_phi(x), atol=0.)


def test_chebyshev_nodes_against_cosines() -> None:
    K = 4
    expected = [math.cos((2 * k - 1) * math.pi / (2 * K)) for k in range(1, K + 1)]
    nodes = mathstats.chebyshev_nodes(K)
    np.testing.assert_allclose(nodes, expected, atol=1e-15)
    assert np.all(np.diff(nodes) < 0)


@pytest.mark.parametrize(
    ('f', 'b', 'expected'),
    [
        (math.sin, math.pi, 2.),
        (lambda t: math.sin(t) ** 2, math.pi / 2., math.pi / 4.),
    ],
)
def test_adaptive_quadrature_trigonometric(f, b: float, expected: float) -> None:
    assert mathstats.adaptive_quadrature(f, 0., b) == pytest.approx(expected, abs=1e-10)


def test_ks_distance_single_sample() -> None:
    assert mathstats.ks_distance([0.], stats.norm.cdf) == pytest.approx(0.5)
    # degenerate step at the sample: the left limit of the empirical CDF counts
    assert mathstats.ks_distance([0.], lambda x: (np.asarray(x) >= 0.).astype(float)) == pytest.approx(1.)
