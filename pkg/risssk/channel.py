# This file is part of risssk.
# Copyright (C) 2026 The risssk developers

# risssk is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# risssk is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/>.


from dataclasses import dataclass
from enum import Enum
import math

import numpy as np
import torch
from torch import Tensor

from risssk.mathstats import RngStream, bessel_ie
from risssk.utils.errors import DomainError


KAPPA_MAX = 1e12    # LoS-only limit
D_OVER_LAMBDA = 0.5


def db2lin(x_db: float) -> float:
    return 10. ** (x_db / 10.)


def lin2db(x: float) -> float:
    return 10. * math.log10(x) if x > 0 else -math.inf


@dataclass(frozen=True)
class RicianParams:
    kappa: float
    phi_x: float = math.pi / 6
    phi_y: float = math.pi / 6
    L_x: int = 1
    L_y: int = 1

    def __post_init__(self) -> None:
        if not self.kappa >= 0:
            raise DomainError(f"Rician factor must be non-negative, got {self.kappa}")
        if self.L_x < 1 or self.L_y < 1:
            raise DomainError(f"RIS dimensions must be positive, got {self.L_x}x{self.L_y}")

    def __str__(self) -> str:
        return f"Rician(kappa={lin2db(self.kappa):.2f} dB, {self.L_x}x{self.L_y})"

    @property
    def L(self) -> int:
        return self.L_x * self.L_y

    @classmethod
    def from_db(cls, kappa_db: float, **kwargs) -> 'RicianParams':
        return cls(db2lin(kappa_db), **kwargs)

    @staticmethod
    def square(L: int) -> tuple[int, int]:
        side = math.isqrt(L)
        return (side, side) if side * side == L else (L, 1)


class CsiMode(Enum):
    FIXED = 0
    VARIABLE = 1    # sigma_e^2 = 1 / (N rho)


@dataclass(frozen=True)
class CsiErrorModel:
    mode: CsiMode = CsiMode.FIXED
    sigma_e2: float = 0.
    pilots: int = 1

    def __post_init__(self) -> None:
        if not self.sigma_e2 >= 0 or math.isinf(self.sigma_e2):
            raise DomainError(f"estimation error variance must be finite and non-negative, got {self.sigma_e2}")
        if self.pilots < 1:
            raise DomainError(f"pilot count must be positive, got {self.pilots}")

    def __str__(self) -> str:
        if self.mode is CsiMode.VARIABLE:
            return f"N={self.pilots}"
        return f"sigma_e2={self.sigma_e2:g}"

    @classmethod
    def fixed(cls, sigma_e2: float) -> 'CsiErrorModel':
        return cls(CsiMode.FIXED, float(sigma_e2))

    @classmethod
    def variable(cls, pilots: int) -> 'CsiErrorModel':
        return cls(CsiMode.VARIABLE, 0., int(pilots))

    @classmethod
    def perfect(cls) -> 'CsiErrorModel':
        return cls.fixed(0.)

    def is_perfect(self) -> bool:
        return self.mode is CsiMode.FIXED and self.sigma_e2 == 0.

    def variance(self, rho: float) -> float:
        if self.mode is CsiMode.FIXED:
            return self.sigma_e2
        if not rho > 0:
            raise DomainError(f"variable estimation error needs a positive SNR, got rho={rho}")

        return 0. if math.isinf(rho) else 1. / (self.pilots * rho)

    def zeta(self, rho: float) -> float:
        return 1. / math.sqrt(1. + self.variance(rho))

    # sqrt(1 - zeta^2), exact zero under perfect CSI
    def leakage(self, rho: float) -> float:
        s = self.variance(rho)
        return math.sqrt(s / (1. + s))


@dataclass
class ChannelRealization:
    G: Tensor           # (..., L, N_t)
    H_hat: Tensor       # (..., L)
    Delta_H: Tensor     # (..., L)
    zeta: float
    leakage: float = 0.

    @property
    def H(self) -> Tensor:
        return self.zeta * self.H_hat + self.leakage * self.Delta_H

    @property
    def L(self) -> int:
        return self.G.shape[-2]

    @property
    def N_t(self) -> int:
        return self.G.shape[-1]

    @property
    def batch_shape(self) -> torch.Size:
        return self.G.shape[:-2]


def los_steering(params: RicianParams, device: str | torch.device = 'cpu') -> Tensor:
    l_idx = torch.arange(params.L, dtype=torch.int64, device=device)
    l_x = torch.remainder(l_idx, params.L_x).to(torch.float64)
    l_y = torch.div(l_idx, params.L_x, rounding_mode='floor').to(torch.float64)

    phase = 2. * math.pi * D_OVER_LAMBDA * (l_x * math.sin(params.phi_x) + l_y * math.sin(params.phi_y))

    return torch.polar(torch.ones_like(phase), phase)


def sample_rician_channel(params: RicianParams, rng: RngStream, *batch: int) -> Tensor:
    kappa = min(params.kappa, KAPPA_MAX)
    los = los_steering(params, rng.device)
    nlos = rng.complex_normal(*batch, params.L)

    return math.sqrt(kappa / (kappa + 1.)) * los + math.sqrt(1. / (kappa + 1.)) * nlos


def sample_rayleigh_matrix(L: int, N_t: int, rng: RngStream, *batch: int) -> Tensor:
    if L < 1 or N_t < 1:
        raise DomainError(f"channel dimensions must be positive, got L={L}, N_t={N_t}")

    return rng.complex_normal(*batch, L, N_t)


def sample_csi_error(L: int, sigma_e2: float, rng: RngStream, *batch: int) -> Tensor:
    return math.sqrt(sigma_e2) * rng.complex_normal(*batch, L)


def rician_amplitude_mean(kappa: float) -> float:
    if not kappa >= 0:
        raise DomainError(f"Rician factor must be non-negative, got {kappa}")

    k = min(float(kappa), KAPPA_MAX)
    h = k / 2.
    # e^{-k/2} is absorbed by the exponentially scaled Bessel functions
    log_mean = 0.5 * math.log(math.pi / (4. * k + 4.)) + math.log((1. + k) * bessel_ie(0, h) + k * bessel_ie(1, h))

    return math.exp(log_mean)


def rician_amplitude_variance(kappa: float) -> float:
    return 1. - rician_amplitude_mean(kappa) ** 2


def rayleigh_amplitude_moments() -> tuple[float, float]:
    return math.sqrt(math.pi) / 2., (4. - math.pi) / 4.


def compose_imperfect_csi(H_hat: Tensor, Delta_H: Tensor, csi: CsiErrorModel, rho: float) -> tuple[Tensor, float]:
    if H_hat.shape != Delta_H.shape:
        raise DomainError(f"estimate and error shapes differ: {tuple(H_hat.shape)} vs {tuple(Delta_H.shape)}")

    zeta = csi.zeta(rho)

    return zeta * H_hat + csi.leakage(rho) * Delta_H, zeta


def sample_realization(params: RicianParams, N_t: int, csi: CsiErrorModel, rho: float,
                       rng: RngStream, *batch: int) -> ChannelRealization:
    sigma_e2 = csi.variance(rho)

    G = sample_rayleigh_matrix(params.L, N_t, rng, *batch)
    H_hat = sample_rician_channel(params, rng, *batch)
    Delta_H = sample_csi_error(params.L, sigma_e2, rng, *batch)

    return ChannelRealization(G, H_hat, Delta_H, csi.zeta(rho), csi.leakage(rho))


def snr_key(snr_db: float) -> int:
    # Bit pattern of the float, a stable non-negative stream key for an SNR point
    return int(np.float64(snr_db).view(np.uint64))
