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
import math

import numpy as np
import torch
from torch import Tensor

from risssk.channel import ChannelRealization, RicianParams, sample_rayleigh_matrix, sample_rician_channel
from risssk.mathstats import RngStream
from risssk.models import Intelligent, Quantized
from risssk.policy import AlignTarget, PhasePolicy, PolicyKind
from risssk.utils.errors import DomainError


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def hamming_table(N_t: int) -> np.ndarray:
    labels = np.arange(N_t, dtype=np.uint64)
    return np.bitwise_count(np.bitwise_xor.outer(labels, labels)).astype(np.int64)


@dataclass(frozen=True)
class SskSymbol:
    index: Tensor   # zero-based active antenna, any batch shape
    N_t: int

    def __post_init__(self) -> None:
        if not is_power_of_two(self.N_t):
            raise DomainError(f"number of transmit antennas must be a power of two, got {self.N_t}")

    @property
    def n_t(self) -> Tensor:
        return self.index + 1

    @property
    def bits_per_symbol(self) -> int:
        return self.N_t.bit_length() - 1

    # Natural binary label of n_t - 1, most significant bit first
    def bits(self) -> Tensor:
        shifts = torch.arange(self.bits_per_symbol - 1, -1, -1, device=self.index.device)
        return (self.index.unsqueeze(-1) >> shifts) & 1

    @classmethod
    def from_bits(cls, bits: Tensor, N_t: int) -> 'SskSymbol':
        m = bits.shape[-1]
        weights = 2 ** torch.arange(m - 1, -1, -1, device=bits.device)
        return cls(torch.sum(bits.long() * weights, dim=-1), N_t)

    @classmethod
    def from_antenna(cls, n_t: int, N_t: int) -> 'SskSymbol':
        if not 1 <= n_t <= N_t:
            raise DomainError(f"antenna index {n_t} outside 1..{N_t}")
        return cls(torch.tensor(n_t - 1), N_t)


@dataclass(frozen=True)
class ComplexityReport:
    multiplications: int
    additions: int


def active_column(G: Tensor, index: Tensor | int) -> Tensor:
    if not torch.is_tensor(index):
        return G[..., index]

    idx = index.reshape(*index.shape, 1, 1).expand(*G.shape[:-1], 1)
    return torch.gather(G, -1, idx).squeeze(-1)


def ris_phases(policy: PhasePolicy, g_col: Tensor, h: Tensor) -> Tensor:
    if g_col.shape != h.shape:
        raise DomainError(f"channel vectors differ in shape: {tuple(g_col.shape)} vs {tuple(h.shape)}")

    return policy.phases(g_col, h)


def configure(realization: ChannelRealization, symbol: SskSymbol, policy: PhasePolicy,
              align: AlignTarget = AlignTarget.ESTIMATED) -> Tensor:
    h = realization.H_hat if align is AlignTarget.ESTIMATED else realization.H
    return ris_phases(policy, active_column(realization.G, symbol.index), h)


def synthesize_rx(realization: ChannelRealization, symbol: SskSymbol, policy: PhasePolicy, P_s: float, N_0: float,
                  rng: RngStream, align: AlignTarget = AlignTarget.ESTIMATED, phases: Tensor | None = None) -> Tensor:
    if not P_s > 0 or not N_0 >= 0:
        raise DomainError(f"signal power must be positive and noise power non-negative, got P_s={P_s}, N_0={N_0}")

    if phases is None:
        phases = configure(realization, symbol, policy, align)
    g = active_column(realization.G, symbol.index)
    reflect = torch.polar(torch.ones_like(phases), phases) * g

    signal = math.sqrt(P_s) * realization.zeta * torch.sum(realization.H_hat * reflect, dim=-1)
    error = math.sqrt(P_s) * realization.leakage * torch.sum(realization.Delta_H * reflect, dim=-1)
    noise = math.sqrt(N_0) * rng.complex_normal(*realization.batch_shape)

    return signal + error + noise


def _decide(y: Tensor, candidates: Tensor) -> SskSymbol:
    # argmin keeps the first minimum, ties go to the smaller antenna index
    metric = torch.abs(y.unsqueeze(-1) - candidates) ** 2
    return SskSymbol(torch.argmin(metric, dim=-1), candidates.shape[-1])


def detect_intelligent(y: Tensor, G: Tensor, H_hat: Tensor, zeta: float, P_s: float,
                       phases: Tensor | None = None) -> SskSymbol:
    if phases is None:
        gain = torch.sum(torch.abs(G) * torch.abs(H_hat).unsqueeze(-1), dim=-2)
        return _decide(y, math.sqrt(P_s) * zeta * gain.to(torch.complex128))

    weights = H_hat * torch.polar(torch.ones_like(phases), phases)
    return _decide(y, math.sqrt(P_s) * zeta * torch.sum(G * weights.unsqueeze(-1), dim=-2))


def detect_blind(y: Tensor, G: Tensor, H_hat: Tensor, zeta: float, P_s: float) -> SskSymbol:
    return _decide(y, math.sqrt(P_s) * zeta * torch.sum(G * H_hat.unsqueeze(-1), dim=-2))


def complexity(kind: PolicyKind, L: int, N_t: int) -> ComplexityReport:
    if L < 1 or N_t < 1:
        raise DomainError(f"L and N_t must be positive, got L={L}, N_t={N_t}")

    if kind in PolicyKind.aligned():
        return ComplexityReport((L + 4) * N_t, (L + 1) * N_t)

    return ComplexityReport((4 * L + 6) * N_t, (4 * L + 1) * N_t)


def composite_difference(L: int, kappa: float, n: int, rng: RngStream, chunk: int = 8192) -> Tensor:
    """Samples eta - eta_hat of the intelligent scheme.

    The RIS is aligned to antenna 1; the difference is taken against the
    composite antenna 2 produces through the same configuration.
    """
    L_x, L_y = RicianParams.square(L)
    params = RicianParams(kappa, L_x=L_x, L_y=L_y)
    policy = Intelligent()

    parts = []
    for start in range(0, n, chunk):
        b = min(chunk, n - start)
        G = sample_rayleigh_matrix(L, 2, rng, b)
        h = sample_rician_channel(params, rng, b)
        phases = ris_phases(policy, G[..., 0], h)
        weights = h * torch.polar(torch.ones_like(phases), phases)
        parts.append(torch.sum(weights * (G[..., 0] - G[..., 1]), dim=-1))

    return torch.cat(parts)


def aligned_gain_ratio(bits: int, L: int, kappa: float, n: int, rng: RngStream) -> float:
    """Mean quantized aligned gain over the mean continuous aligned gain."""
    L_x, L_y = RicianParams.square(L)
    params = RicianParams(kappa, L_x=L_x, L_y=L_y)

    g = sample_rayleigh_matrix(L, 1, rng, n)[..., 0]
    h = sample_rician_channel(params, rng, n)
    phases = ris_phases(Quantized(bits), g, h)

    quantized = torch.real(torch.sum(h * torch.polar(torch.ones_like(phases), phases) * g, dim=-1))
    continuous = torch.sum(torch.abs(h) * torch.abs(g), dim=-1)

    return (torch.mean(quantized) / torch.mean(continuous)).item()
