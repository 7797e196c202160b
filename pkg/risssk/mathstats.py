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


from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
import math

import numpy as np
from numpy.polynomial import chebyshev
from scipy import integrate, special, stats
import torch
from torch import Tensor

from risssk.utils.errors import DomainError, QuadratureError


QUAD_LIMIT = 50
QUAD_TOL = 1e-10

Real = float | np.ndarray


class RngStream:
    """Reproducible random stream owned by a single worker.

    The (seed, stream_id, path) triple is hashed by numpy's SeedSequence into
    the 64-bit seed of a torch generator, so sibling streams are independent
    and any stream can be rebuilt from its key alone.
    """

    def __init__(self, seed: int, stream_id: int = 0, path: tuple[int, ...] = (), device: str | torch.device = 'cpu') -> None:
        if seed < 0 or stream_id < 0 or any(k < 0 for k in path):
            raise DomainError('seed, stream id and path keys must be non-negative integers')

        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.path = tuple(int(k) for k in path)
        self.device = torch.device(device)

        sseq = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *self.path))
        self.generator = torch.Generator(device=self.device)
        self.generator.manual_seed(int(sseq.generate_state(1, np.uint64)[0]))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id}, path={self.path})"

    def spawn(self, *keys: int) -> 'RngStream':
        return RngStream(self.seed, self.stream_id, self.path + tuple(keys), self.device)

    # Circularly-symmetric CN(0, 1): real and imaginary parts have variance 1/2 each
    def complex_normal(self, *shape: int) -> Tensor:
        return torch.randn(shape, dtype=torch.complex128, generator=self.generator, device=self.device)

    def normal(self, *shape: int) -> Tensor:
        return torch.randn(shape, dtype=torch.float64, generator=self.generator, device=self.device)

    def uniform(self, *shape: int) -> Tensor:
        return torch.rand(shape, dtype=torch.float64, generator=self.generator, device=self.device)

    def integers(self, high: int, *shape: int) -> Tensor:
        return torch.randint(high, shape, generator=self.generator, device=self.device)


@dataclass
class EmpiricalDistribution:
    samples: np.ndarray
    bin_count: int = 100
    _sorted: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if torch.is_tensor(self.samples):
            self.samples = self.samples.detach().cpu().numpy()
        self.samples = np.asarray(self.samples, dtype=np.float64).ravel()
        assert self.bin_count >= 1, 'Histogram needs at least one bin'
        self._sorted = np.sort(self.samples)

    def __len__(self) -> int:
        return self.samples.size

    def histogram(self) -> tuple[np.ndarray, np.ndarray]:
        counts, edges = np.histogram(self.samples, bins=self.bin_count)
        return counts / counts.sum(), edges

    def density(self) -> tuple[np.ndarray, np.ndarray]:
        dens, edges = np.histogram(self.samples, bins=self.bin_count, density=True)
        return dens, edges

    def mean(self) -> float:
        return float(np.mean(self.samples))

    def variance(self) -> float:
        return float(np.var(self.samples))

    def cdf(self, x: Real) -> Real:
        return np.searchsorted(self._sorted, x, side='right') / self._sorted.size


def _check_finite(x: Real, name: str = 'x') -> None:
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} must be finite")


def bessel_i(order: int, x: Real) -> Real:
    if order not in (0, 1):
        raise DomainError(f"Bessel order must be 0 or 1, got {order}")
    _check_finite(x)
    if np.any(np.asarray(x) < 0):
        raise DomainError('Bessel argument must be non-negative')

    return special.iv(order, x)


# e^{-x} I_a(x), finite for any x >= 0
def bessel_ie(order: int, x: Real) -> Real:
    if order not in (0, 1):
        raise DomainError(f"Bessel order must be 0 or 1, got {order}")

    return special.ive(order, x)


def q_function(x: Real) -> Real:
    return 0.5 * special.erfc(np.asarray(x) / math.sqrt(2.)) if np.ndim(x) else 0.5 * float(special.erfc(x / math.sqrt(2.)))


def gauss_error_phi(x: Real) -> Real:
    return special.erf(x) if np.ndim(x) else float(special.erf(x))


def chebyshev_nodes(K: int) -> np.ndarray:
    if K < 1:
        raise DomainError(f"number of Chebyshev nodes must be positive, got {K}")

    # chebpts1 lists cos((2k-1)pi/2K) ascending; generation order is descending
    return chebyshev.chebpts1(K)[::-1].copy()


def adaptive_quadrature(f: Callable[[float], float], a: float, b: float, tol: float = QUAD_TOL,
                        points: Sequence[float] | None = None, limit: int = QUAD_LIMIT,
                        abs_tol: float | None = None) -> float:
    """Gauss-Kronrod quadrature; tol bounds the relative error and, unless abs_tol is
    given, the absolute error too. Raises QuadratureError instead of returning a
    non-converged estimate.
    """
    epsabs = tol if abs_tol is None else abs_tol
    kwargs = {'points': points} if points is not None and math.isfinite(a) and math.isfinite(b) else {}
    out = integrate.quad(f, a, b, epsabs=epsabs, epsrel=tol, limit=limit, full_output=1, **kwargs)

    value, abserr = out[0], out[1]
    if len(out) > 3:
        raise QuadratureError(out[3].strip().split('\n')[0], value, abserr)

    return value


def ks_distance(emp: EmpiricalDistribution | Sequence[float], cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    samples = emp.samples if isinstance(emp, EmpiricalDistribution) else np.asarray(emp, dtype=np.float64).ravel()
    if samples.size == 0:
        raise DomainError('KS distance needs at least one sample')

    return float(stats.kstest(samples, cdf).statistic)
