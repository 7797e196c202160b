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


from collections.abc import Callable
from enum import auto, Enum, Flag
from functools import reduce
from operator import or_

from torch import Tensor


class PolicyKind(Flag):
    INTELLIGENT = I = auto()    # 1
    BLIND = B = auto()          # 2
    QUANTIZED = Q = auto()      # 4

    @classmethod
    def all(cls) -> 'PolicyKind':
        return reduce(or_, cls)

    @staticmethod
    def aligned() -> 'PolicyKind':
        return PolicyKind.INTELLIGENT | PolicyKind.QUANTIZED


class AlignTarget(Enum):
    ESTIMATED = 0   # psi_hat, known at the RIS controller
    TRUE = 1        # genie-aided psi


class DetectorReference(Enum):
    CONFIGURED = 0  # candidates seen through the RIS configuration in force
    ALIGNED = 1     # each candidate assumes its own aligned configuration


class PhasePolicy:
    def __init__(self, kind: PolicyKind, method: Callable[..., Tensor], *args) -> None:
        assert kind.value.bit_count() == 1, 'Phase policy must have exactly 1 kind'
        self.kind = kind
        self.method = method
        self.args = args

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PhasePolicy) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Phase Policy: '{self.get_name()}'\n" \
            + f"  - Kind: {self.kind}\n" \
            + f"  - Method: {self.method.__name__}\n" \
            + f"  - Arguments: {self.args}"

    def __str__(self) -> str:
        return self.get_name().lower()

    def _key(self) -> tuple:
        return self.kind, self.method, self.args

    def get_name(self) -> str:
        name = self.__class__.__name__
        return 'Custom' if name == PhasePolicy.__name__ else name

    def is_aligned(self) -> bool:
        return self.kind in PolicyKind.aligned()

    def is_blind(self) -> bool:
        return self.kind is PolicyKind.BLIND

    # g_col: (..., L) BS-RIS column of the active antenna, h: (..., L) RIS-UE channel
    def phases(self, g_col: Tensor, h: Tensor) -> Tensor:
        return self.method(g_col, h, *self.args)
