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


import torch
from torch import Tensor

from risssk.policy import PhasePolicy, PolicyKind
import risssk.utils.quantization as qua
from risssk.utils.errors import DomainError


# Phase Policy Functions
# g = alpha e^{-j theta}, h = beta e^{-j psi}: phi = theta + psi cancels both phases
def align_phase(g_col: Tensor, h: Tensor) -> Tensor:
    return -(torch.angle(g_col) + torch.angle(h))


def zero_phase(g_col: Tensor, _: Tensor) -> Tensor:
    return torch.zeros(g_col.shape, dtype=torch.float64, device=g_col.device)


def quantized_phase(g_col: Tensor, h: Tensor, bits: int) -> Tensor:
    return qua.quantize_phase(align_phase(g_col, h), bits)


# Phase policies
class Intelligent(PhasePolicy):
    def __init__(self) -> None:
        super().__init__(PolicyKind.INTELLIGENT, align_phase)


class Blind(PhasePolicy):
    def __init__(self) -> None:
        super().__init__(PolicyKind.BLIND, zero_phase)


class Quantized(PhasePolicy):
    def __init__(self, bits: int) -> None:
        qua.levels(bits)
        super().__init__(PolicyKind.QUANTIZED, quantized_phase, int(bits))

    def __str__(self) -> str:
        return f"quantized:{self.bits}"

    @property
    def bits(self) -> int:
        return self.args[0]


def from_string(text: str) -> PhasePolicy:
    name, _, arg = str(text).strip().lower().partition(':')
    if name == 'intelligent':
        return Intelligent()
    if name == 'blind':
        return Blind()
    if name == 'quantized':
        if not arg.strip().lstrip('-').isdigit():
            raise DomainError(f"quantized policy needs an integer bit count, got '{arg}'")
        return Quantized(int(arg))

    raise DomainError(f"unknown phase policy '{text}' (valid: intelligent, blind, quantized:<Q>)")
