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


from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np
from scipy import special, stats

from risssk.channel import CsiErrorModel, CsiMode, rician_amplitude_mean
from risssk.mathstats import adaptive_quadrature, chebyshev_nodes, Real
from risssk.policy import PhasePolicy, PolicyKind
from risssk.system import hamming_table, is_power_of_two
from risssk.utils.errors import DomainError
import risssk.utils.quantization as qua


UPEP_TOL = 1e-10
GCQ_K = 3


class AbepMethod(Enum):
    MONTE_CARLO = 'monte_carlo'
    EXACT = 'exact'
    GCQ = 'gcq'
    CLOSED_FORM = 'closed_form'
    CHERNOFF = 'chernoff'
    ASYMPTOTIC = 'asymptotic'
    BLIND_CLOSED_FORM = 'blind_closed_form'
    BLIND_ASYMPTOTIC = 'blind_asymptotic'

    @staticmethod
    def for_policy(kind: PolicyKind) -> list['AbepMethod']:
        if kind is PolicyKind.BLIND:
            return [AbepMethod.BLIND_CLOSED_FORM, AbepMethod.BLIND_ASYMPTOTIC]
        if kind is PolicyKind.QUANTIZED:
            return [AbepMethod.EXACT, AbepMethod.GCQ]

        return [AbepMethod.EXACT, AbepMethod.GCQ, AbepMethod.CLOSED_FORM, AbepMethod.CHERNOFF, AbepMethod.ASYMPTOTIC]


@dataclass(frozen=True)
class AbepEstimate:
    value: float
    method: AbepMethod
    ci_halfwidth: float | None = None
    K: int | None = None

    def __float__(self) -> float:
        return self.value

    @property
    def label(self) -> str:
        return f"gcq{self.K}" if self.method is AbepMethod.GCQ else self.method.value


@dataclass(frozen=True)
class CompositeMoments:
    mu: float
    sigma2: float

    def __post_init__(self) -> None:
        if not self.sigma2 > 0:
            raise DomainError(f"composite variance must be positive, got {self.sigma2}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


@dataclass(frozen=True)
class EffectiveSnr:
    rho: float
    sigma_e2: float
    L: int

    def __post_init__(self) -> None:
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise DomainError(f"SNR must be positive and finite, got rho={self.rho}")

    @classmethod
    def build(cls, rho: float, csi: CsiErrorModel, L: int) -> 'EffectiveSnr':
        return cls(rho, csi.variance(rho), L)

    @property
    def zeta2(self) -> float:
        return 1. / (1. + self.sigma_e2)

    # rho * zeta^2
    @property
    def gain(self) -> float:
        return self.rho * self.zeta2

    # A = 1 + rho (1 - zeta^2) sigma_e^2 L
    @property
    def noise_inflation(self) -> float:
        return 1. + self.rho * (1. - self.zeta2) * self.sigma_e2 * self.L

    @property
    def tau(self) -> float:
        return self.gain / (2. * self.noise_inflation)


def composite_moments(L: int, kappa: float) -> CompositeMoments:
    if L < 1:
        raise DomainError(f"number of RIS elements must be positive, got {L}")

    mean = rician_amplitude_mean(kappa)
    return CompositeMoments(math.sqrt(math.pi) * L * mean / 2., L * (8. - math.pi * mean ** 2) / 4.)


def quantization_factor(bits: int) -> float:
    qua.levels(bits)
    # numpy's sinc is normalised: sinc(1/2^Q) = sin(pi/2^Q) / (pi/2^Q)
    return float(np.sinc(1. / 2 ** bits))


def quantized_moments(L: int, kappa: float, bits: int) -> CompositeMoments:
    m = composite_moments(L, kappa)
    s = quantization_factor(bits)
    deficit = L * rician_amplitude_mean(kappa) ** 2 * math.pi / 4. * (1. - s ** 2)

    return CompositeMoments(m.mu * s, m.sigma2 + deficit)


def noncentral_chi2_pdf(x: Real, m: CompositeMoments) -> Real:
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise DomainError('density argument must be non-negative')

    with np.errstate(divide='ignore'):
        r = np.sqrt(x)
        a = abs(m.mu) * r / m.sigma2
        log_f = -(r - abs(m.mu)) ** 2 / (2. * m.sigma2) + np.log1p(np.exp(-2. * a)) \
            - np.log(2. * np.sqrt(2. * math.pi * m.sigma2 * x))
        f = np.exp(log_f)

    return float(f) if f.ndim == 0 else f


def noncentral_chi2_cdf(x: Real, m: CompositeMoments) -> Real:
    return stats.ncx2.cdf(x, df=1, nc=m.mu ** 2 / m.sigma2, scale=m.sigma2)


def mgf_composite(s: float, m: CompositeMoments) -> float:
    if not s < 1. / (2. * m.sigma2):
        raise DomainError(f"MGF diverges for s >= 1/(2 sigma^2), got s={s}")

    d = 1. - 2. * s * m.sigma2
    return math.exp(-0.5 * math.log(d) + s * m.mu ** 2 / d)


# ln M(-rho zeta^2 / (4 A sin^2)) on the Craig angle, combined in log space
def _log_craig_mgf(s2: np.ndarray, e: EffectiveSnr, m: CompositeMoments) -> np.ndarray:
    A, g = e.noise_inflation, e.gain
    den = 2. * A * s2 + g * m.sigma2

    return 0.5 * np.log(2. * A * s2 / den) - g * m.mu ** 2 / (2. * den)


def upep_intelligent_exact(e: EffectiveSnr, m: CompositeMoments, tol: float = UPEP_TOL) -> AbepEstimate:
    def integrand(theta: float) -> float:
        s2 = math.sin(theta) ** 2
        return 0. if s2 == 0. else math.exp(_log_craig_mgf(np.float64(s2), e, m)) / math.pi

    value = adaptive_quadrature(integrand, 0., math.pi / 2., tol, abs_tol=0.)
    return AbepEstimate(value, AbepMethod.EXACT)


def upep_intelligent_gcq(e: EffectiveSnr, m: CompositeMoments, K: int = GCQ_K) -> AbepEstimate:
    nodes = chebyshev_nodes(K)
    theta = math.pi / 4. * nodes + math.pi / 4.
    terms = np.sqrt(1. - nodes ** 2) * np.exp(_log_craig_mgf(np.sin(theta) ** 2, e, m))

    return AbepEstimate(math.pi * float(np.sum(terms)) / (4. * K), AbepMethod.GCQ, K=K)


def upep_intelligent_closed(e: EffectiveSnr, m: CompositeMoments) -> AbepEstimate:
    A, g = e.noise_inflation, e.gain
    gs2, gmu2 = g * m.sigma2, g * m.mu ** 2

    first = 0.5 * math.log(2. * A / (2. * A + gs2)) - gmu2 / (4. * A + 2. * gs2)
    second = 0.5 * math.log(3. * A / (3. * A + 2. * gs2)) - gmu2 / (3. * A + 2. * gs2)

    return AbepEstimate(math.exp(first) / 12. + math.exp(second) / 4., AbepMethod.CLOSED_FORM)


# Q(x) <= exp(-x^2 / 2) / 2
def upep_intelligent_chernoff(e: EffectiveSnr, m: CompositeMoments) -> AbepEstimate:
    A, g = e.noise_inflation, e.gain
    gs2 = g * m.sigma2

    log_bound = 0.5 * math.log(2. * A / (2. * A + gs2)) - g * m.mu ** 2 / (4. * A + 2. * gs2)
    return AbepEstimate(0.5 * math.exp(log_bound), AbepMethod.CHERNOFF)


def upep_intelligent_asymptotic(L: int, kappa: float, csi: CsiErrorModel) -> AbepEstimate:
    e2 = rician_amplitude_mean(kappa) ** 2

    if csi.mode is CsiMode.VARIABLE:
        value = 0.5 * math.exp(-math.pi * L * e2 / (16. - 2. * math.pi * e2))
    else:
        s4 = csi.sigma_e2 ** 2
        value = math.sqrt(2. * s4 / (8. * s4 + 8. - math.pi * e2)) \
            * math.exp(-math.pi * L * e2 / (16. * s4 + 16. - 2. * math.pi * e2))

    return AbepEstimate(value, AbepMethod.ASYMPTOTIC)


def upep_intelligent_bruteforce(e: EffectiveSnr, m: CompositeMoments, tol: float = 1e-12) -> float:
    """E[Q(sqrt(tau X))] over the noncentral chi-square density, in t = sqrt(x)."""
    root_tau = math.sqrt(e.tau)
    mu, sigma = abs(m.mu), m.sigma

    def integrand(t: float) -> float:
        log_pdf = np.logaddexp(stats.norm.logpdf(t, mu, sigma), stats.norm.logpdf(t, -mu, sigma))
        return math.exp(special.log_ndtr(-root_tau * t) + log_pdf)

    return adaptive_quadrature(integrand, 0., mu + 40. * sigma, tol, points=[mu], abs_tol=0.)


def upep_blind_closed(e: EffectiveSnr) -> AbepEstimate:
    gl = e.gain * e.L
    return AbepEstimate(0.5 * (1. - math.sqrt(gl / (gl + 2. * e.noise_inflation))), AbepMethod.BLIND_CLOSED_FORM)


def upep_blind_bruteforce(e: EffectiveSnr, tol: float = 1e-12) -> float:
    """E[Q(sqrt(tau X))] with X exponential of mean 2L."""
    root_tau = math.sqrt(e.tau)
    scale = 2. * e.L

    def integrand(x: float) -> float:
        return math.exp(-x / scale) / scale * special.ndtr(-root_tau * math.sqrt(x))

    return adaptive_quadrature(integrand, 0., 60. * scale, tol, abs_tol=0.)


def upep_blind_asymptotic(sigma_e2: float) -> AbepEstimate:
    if not sigma_e2 >= 0:
        raise DomainError(f"estimation error variance must be non-negative, got {sigma_e2}")

    return AbepEstimate(sigma_e2 ** 2 / 2., AbepMethod.BLIND_ASYMPTOTIC)


# Exact rho -> infinity limit of the blind closed form; sigma_e^4 / 2 is its first-order term
def blind_floor(sigma_e2: float) -> float:
    return 0.5 * (1. - 1. / math.sqrt(1. + 2. * sigma_e2 ** 2))


def abep_union_bound(upep: np.ndarray, N_t: int) -> float:
    upep = np.asarray(upep, dtype=np.float64)
    if upep.ndim != 2 or upep.shape[0] != upep.shape[1]:
        raise DomainError(f"pairwise error matrix must be square, got shape {upep.shape}")
    if upep.shape[0] != N_t or not is_power_of_two(N_t):
        raise DomainError(f"pairwise error matrix must be {N_t}x{N_t} with N_t a power of two")
    if N_t == 1:
        return 0.

    return float(np.sum(upep * hamming_table(N_t))) / (N_t * math.log2(N_t))


def pairwise_matrix(upep: float, N_t: int) -> np.ndarray:
    return np.full((N_t, N_t), upep) * (1. - np.eye(N_t))


def analytical_abep(policy: PhasePolicy, L: int, kappa: float, csi: CsiErrorModel, rho: float, N_t: int = 2,
                    gcq_k: int = GCQ_K, methods: Iterable[AbepMethod] | None = None) -> list[AbepEstimate]:
    wanted = AbepMethod.for_policy(policy.kind)
    if methods is not None:
        wanted = [meth for meth in wanted if meth in set(methods)]

    e = EffectiveSnr.build(rho, csi, L)
    if policy.kind is PolicyKind.QUANTIZED:
        m = quantized_moments(L, kappa, policy.args[0])
    else:
        m = composite_moments(L, kappa)

    estimates = []
    for meth in wanted:
        if meth is AbepMethod.EXACT:
            upep = upep_intelligent_exact(e, m)
        elif meth is AbepMethod.GCQ:
            upep = upep_intelligent_gcq(e, m, gcq_k)
        elif meth is AbepMethod.CLOSED_FORM:
            upep = upep_intelligent_closed(e, m)
        elif meth is AbepMethod.CHERNOFF:
            upep = upep_intelligent_chernoff(e, m)
        elif meth is AbepMethod.ASYMPTOTIC:
            upep = upep_intelligent_asymptotic(L, kappa, csi)
        elif meth is AbepMethod.BLIND_CLOSED_FORM:
            upep = upep_blind_closed(e)
        elif meth is AbepMethod.BLIND_ASYMPTOTIC:
            if csi.mode is not CsiMode.FIXED:
                continue
            upep = upep_blind_asymptotic(csi.sigma_e2)
        else:
            continue

        abep = abep_union_bound(pairwise_matrix(upep.value, N_t), N_t)
        estimates.append(AbepEstimate(abep, upep.method, K=upep.K))

    return estimates
