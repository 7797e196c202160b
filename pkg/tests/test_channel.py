"""risssk/channel.py tests.

Run with:
  pytest -vvv tests/test_channel.py
"""

import math

import pytest
import torch

from risssk import channel
from risssk.mathstats import RngStream
from risssk.utils.errors import DomainError


def test_db_conversions() -> None:
    assert channel.db2lin(3.) == pytest.approx(1.9952623149688795)
    assert channel.lin2db(100.) == pytest.approx(20.)
    assert channel.lin2db(0.) == -math.inf


def test_rician_params() -> None:
    p = channel.RicianParams.from_db(3., L_x=4, L_y=2)
    assert p.kappa == pytest.approx(1.9952623149688795)
    assert p.L == 8
    assert channel.RicianParams.square(16) == (4, 4)
    assert channel.RicianParams.square(32) == (32, 1)
    with pytest.raises(DomainError, match='non-negative'):
        channel.RicianParams(-1.)
    with pytest.raises(DomainError, match='dimensions'):
        channel.RicianParams(1., L_x=0)


@pytest.mark.parametrize(
    ('csi', 'rho', 'variance'),
    [
        (channel.CsiErrorModel.fixed(0.1), 100., 0.1),
        (channel.CsiErrorModel.perfect(), 1., 0.),
        (channel.CsiErrorModel.variable(10), 100., 1e-3),
        (channel.CsiErrorModel.variable(3), math.inf, 0.),
    ],
)
def test_csi_error_variance(csi: channel.CsiErrorModel, rho: float, variance: float) -> None:
    assert csi.variance(rho) == pytest.approx(variance)
    assert csi.zeta(rho) == pytest.approx(1. / math.sqrt(1. + variance))
    assert csi.zeta(rho) ** 2 + csi.leakage(rho) ** 2 == pytest.approx(1.)


def test_csi_error_model_domain() -> None:
    assert channel.CsiErrorModel.perfect().is_perfect()
    assert str(channel.CsiErrorModel.variable(3)) == 'N=3'
    assert str(channel.CsiErrorModel.fixed(0.1)) == 'sigma_e2=0.1'
    with pytest.raises(DomainError):
        channel.CsiErrorModel.fixed(-0.1)
    with pytest.raises(DomainError):
        channel.CsiErrorModel.variable(0)
    with pytest.raises(DomainError, match='positive SNR'):
        channel.CsiErrorModel.variable(1).variance(0.)


def test_los_steering_has_unit_modulus() -> None:
    a = channel.los_steering(channel.RicianParams(1., L_x=4, L_y=4))
    assert a.shape == (16,)
    torch.testing.assert_close(torch.abs(a), torch.ones(16, dtype=torch.float64))
    assert a[0].item() == pytest.approx(1.)


@pytest.mark.parametrize('kappa_db', [-math.inf, 0., 3., 10.])
def test_rician_channel_moments(kappa_db: float) -> None:
    kappa = channel.db2lin(kappa_db)
    h = channel.sample_rician_channel(channel.RicianParams(kappa, L_x=2, L_y=2), RngStream(5), 50_000)
    assert h.shape == (50_000, 4)
    # unit average power, and the amplitude mean of the Rician law
    assert torch.mean(torch.abs(h) ** 2).item() == pytest.approx(1., rel=0.01)
    assert torch.mean(torch.abs(h)).item() == pytest.approx(channel.rician_amplitude_mean(kappa), rel=0.01)


def test_rician_amplitude_mean_limits() -> None:
    mean, var = channel.rayleigh_amplitude_moments()
    assert channel.rician_amplitude_mean(0.) == pytest.approx(mean)
    assert channel.rician_amplitude_variance(0.) == pytest.approx(var)
    assert channel.rician_amplitude_mean(1e15) == pytest.approx(1., abs=1e-9)
    with pytest.raises(DomainError):
        channel.rician_amplitude_mean(-2.)


def test_rayleigh_matrix() -> None:
    G = channel.sample_rayleigh_matrix(8, 4, RngStream(2), 10_000)
    assert G.shape == (10_000, 8, 4)
    assert torch.mean(torch.abs(G) ** 2).item() == pytest.approx(1., rel=0.02)
    with pytest.raises(DomainError):
        channel.sample_rayleigh_matrix(0, 2, RngStream(2))


def test_compose_imperfect_csi() -> None:
    rng = RngStream(4)
    H_hat, Delta_H = rng.complex_normal(8), rng.complex_normal(8)
    H, zeta = channel.compose_imperfect_csi(H_hat, Delta_H, channel.CsiErrorModel.perfect(), 10.)
    assert zeta == 1.
    torch.testing.assert_close(H, H_hat)

    H, zeta = channel.compose_imperfect_csi(H_hat, Delta_H, channel.CsiErrorModel.fixed(1.), 10.)
    assert zeta == pytest.approx(math.sqrt(0.5))
    torch.testing.assert_close(H, math.sqrt(0.5) * (H_hat + Delta_H))

    with pytest.raises(DomainError, match='shapes differ'):
        channel.compose_imperfect_csi(H_hat, rng.complex_normal(4), channel.CsiErrorModel.perfect(), 1.)


def test_sample_realization() -> None:
    params = channel.RicianParams(2., L_x=4, L_y=4)
    real = channel.sample_realization(params, 2, channel.CsiErrorModel.fixed(0.5), 10., RngStream(8), 32)
    assert (real.L, real.N_t, tuple(real.batch_shape)) == (16, 2, (32,))
    assert real.zeta == pytest.approx(1. / math.sqrt(1.5))
    torch.testing.assert_close(real.H, real.zeta * real.H_hat + real.leakage * real.Delta_H)

    perfect = channel.sample_realization(params, 2, channel.CsiErrorModel.perfect(), 10., RngStream(8), 32)
    assert torch.count_nonzero(perfect.Delta_H).item() == 0
    torch.testing.assert_close(perfect.H, perfect.H_hat)


def test_snr_key() -> None:
    assert channel.snr_key(2.5) == channel.snr_key(2.5)
    assert channel.snr_key(0.) != channel.snr_key(2.5)
    assert channel.snr_key(-10.) >= 0


def test_los_steering_phase_pattern() -> None:
    flat = channel.los_steering(channel.RicianParams(1., 0., 0., 3, 3))
    torch.testing.assert_close(flat, torch.ones(9, dtype=torch.complex128))

    a = channel.los_steering(channel.RicianParams(1., math.pi / 2., 0., 2, 2))
    expected = torch.tensor([1., -1., 1., -1.], dtype=torch.complex128)
    torch.testing.assert_close(a, expected, atol=1e-12, rtol=0.)


def test_rician_channel_los_only_limit() -> None:
    params = channel.RicianParams(1e15, L_x=4, L_y=4)
    h = channel.sample_rician_channel(params, RngStream(9), 8)
    assert torch.max(torch.abs(h - channel.los_steering(params))).item() < 1e-4


@pytest.mark.parametrize(('sigma_e2', 'zeta'), [(3., 0.5), (2., 0.5774), (1., 0.7071), (0.1, 0.9535)])
def test_zeta_for_fixed_error(sigma_e2: float, zeta: float) -> None:
    assert channel.CsiErrorModel.fixed(sigma_e2).zeta(1.) == pytest.approx(zeta, abs=1e-4)


def test_los_steering_rectangular_rows() -> None:
    # row index advances every L_x elements, as in the Kronecker product of the two axes
    a = channel.los_steering(channel.RicianParams(1., 0., math.pi / 2., 3, 2))
    expected = torch.tensor([1., 1., 1., -1., -1., -1.], dtype=torch.complex128)
    torch.testing.assert_close(a, expected, atol=1e-12, rtol=0.)
