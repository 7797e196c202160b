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


import math

import torch
from torch import Tensor

from risssk.utils.errors import DomainError


def levels(bits: int) -> int:
    if bits < 1:
        raise DomainError(f"phase resolution must be at least 1 bit, got {bits}")

    return 2 ** bits


def phase_step(bits: int) -> float:
    return 2. * math.pi / levels(bits)


# Uniform grid [0 : 2^Q - 1] * 2pi / 2^Q - pi + 2pi / 2^(Q+1)
def phase_grid(bits: int, device: str | torch.device = 'cpu') -> Tensor:
    step = phase_step(bits)
    return -math.pi + step / 2. + step * torch.arange(levels(bits), dtype=torch.float64, device=device)


def wrap_phase(phase: Tensor) -> Tensor:
    return torch.remainder(phase + math.pi, 2. * math.pi) - math.pi


def quantize_phase(phase: Tensor, bits: int) -> Tensor:
    step = phase_step(bits)
    idx = torch.floor(torch.remainder(phase + math.pi, 2. * math.pi) / step).clamp_(0, levels(bits) - 1)

    return -math.pi + (idx + 0.5) * step
