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


"""Oracle suite cross-checking the analytical expressions against quadrature and sampling."""

from collections.abc import Callable
from dataclasses import dataclass
import math
import re
from time import time

import numpy as np
import torch

import risssk.analysis as ana
from risssk.channel import CsiErrorModel, db2lin, RicianParams, rician_amplitude_mean, sample_rician_channel
from risssk.config import SystemConfig
from risssk.core import Campaign, Projection
from risssk.mathstats import adaptive_quadrature, RngStream
from risssk.models import Intelligent
from risssk.system import aligned_gain_ratio, composite_difference


SEED = 20240


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    achieved: float
    seconds: float

    @property
    def passed(self) -> bool:
        return self.achieved <= self.tolerance


def _density_integral(m: ana.CompositeMoments, weight: Callable[[float], float] = lambda x: 1.) -> float:
    # x = t^2 removes the 1/sqrt(x) singularity at the origin
    def integrand(t: float) -> float:
        return 0. if t == 0. else weight(t * t) * ana.noncentral_chi2_pdf(t * t, m) * 2. * t

    return adaptive_quadrature(integrand, 0., abs(m.mu) + 40. * m.sigma, 1e-11, points=[abs(m.mu)])


def check_pdf_normalization(quick: bool) -> float:
    m = ana.composite_moments(100, db2lin(3.))
    return abs(_density_integral(m) - 1.)


def check_mgf_duality(quick: bool) -> float:
    m = ana.composite_moments(4, 0.)
    return max(abs(_density_integral(m, lambda x: math.exp(s * x)) - ana.mgf_composite(s, m)) for s in (-0.1, -1., -10.))


def check_gcq_vs_exact(quick: bool) -> float:
    m = ana.composite_moments(200, db2lin(3.))
    worst = 0.
    for snr_db in (-32., -30., -28.):
        e = ana.EffectiveSnr.build(db2lin(snr_db), CsiErrorModel.fixed(0.1), 200)
        exact = ana.upep_intelligent_exact(e, m).value
        worst = max(worst, abs(ana.upep_intelligent_gcq(e, m, 400).value - exact) / exact)

    return worst


def _fig4_grid() -> list[tuple[ana.EffectiveSnr, ana.CompositeMoments]]:
    grid = []
    for L in (64, 256):
        m = ana.composite_moments(L, db2lin(3.))
        for snr_db in np.arange(-40., 0.1, 2.):
            grid.append((ana.EffectiveSnr.build(db2lin(snr_db), CsiErrorModel.fixed(0.1), L), m))

    return grid


def check_closed_vs_exact(quick: bool) -> float:
    worst = 0.
    for e, m in _fig4_grid():
        exact = ana.upep_intelligent_exact(e, m).value
        if 1e-6 <= exact <= 1e-1:
            worst = max(worst, abs(ana.upep_intelligent_closed(e, m).value - exact) / exact)

    return worst


def check_chernoff_bound(quick: bool) -> float:
    return max(max(ana.upep_intelligent_exact(e, m).value - ana.upep_intelligent_chernoff(e, m).value, 0.)
               for e, m in _fig4_grid())


def check_exact_vs_double_integral(quick: bool) -> float:
    worst = 0.
    for L in (16, 64):
        m = ana.composite_moments(L, db2lin(3.))
        for snr_db in (-25., -15.):
            e = ana.EffectiveSnr.build(db2lin(snr_db), CsiErrorModel.fixed(0.1), L)
            oracle = ana.upep_intelligent_bruteforce(e, m)
            worst = max(worst, abs(ana.upep_intelligent_exact(e, m).value - oracle) / oracle)

    return worst


def check_blind_vs_quadrature(quick: bool) -> float:
    worst = 0.
    for L in (16, 100):
        for sigma_e2 in (0., 0.1):
            for snr_db in (0., 10., 20.):
                e = ana.EffectiveSnr.build(db2lin(snr_db), CsiErrorModel.fixed(sigma_e2), L)
                worst = max(worst, abs(ana.upep_blind_closed(e).value - ana.upep_blind_bruteforce(e)))

    return worst


# Reported in standard errors of the sample mean
def check_rician_mean(quick: bool) -> float:
    n = 10 ** 5 if quick else 10 ** 6
    kappa = db2lin(3.)
    amp = torch.abs(sample_rician_channel(RicianParams(kappa), RngStream(SEED, 1), n)).numpy()

    return abs(amp.mean() - rician_amplitude_mean(kappa)) / (amp.std() / math.sqrt(n))


def check_composite_moments(quick: bool) -> float:
    n = 5 * 10 ** 4 if quick else 2 * 10 ** 5
    kappa = db2lin(3.)
    diff = composite_difference(100, kappa, n, RngStream(SEED, 2))
    x = (torch.real(diff) + torch.imag(diff)).numpy()
    m = ana.composite_moments(100, kappa)

    return max(abs(x.mean() - m.mu) / m.mu, abs(x.var() - m.sigma2) / m.sigma2)


def check_quantization_factor(quick: bool) -> float:
    n = 2000 if quick else 8000
    kappa = db2lin(3.)
    worst = 0.
    for bits in (1, 2, 3):
        measured = aligned_gain_ratio(bits, 64, kappa, n, RngStream(SEED, 3, (bits,)))
        expected = ana.quantization_factor(bits)
        worst = max(worst, abs(measured - expected) / expected)

    return worst


def check_clt_fit(quick: bool) -> float:
    cfg = SystemConfig(rician=RicianParams(db2lin(3.), L_x=10, L_y=10), policy=Intelligent(), seed=SEED,
                       monte_carlo=False)
    _, ks = Campaign(cfg).fit_composite_distribution(2 * 10 ** 4 if quick else 10 ** 5, Projection.IN_QUADRATURE)

    return ks


CHECKS: list[tuple[str, Callable[[bool], float], float]] = [
    ('pdf normalization', check_pdf_normalization, 1e-8),
    ('mgf duality', check_mgf_duality, 1e-8),
    ('gcq(400) vs exact', check_gcq_vs_exact, 1e-4),
    ('closed form vs exact', check_closed_vs_exact, 0.4),
    ('chernoff dominates exact', check_chernoff_bound, 0.),
    ('exact vs double integral', check_exact_vs_double_integral, 1e-6),
    ('blind closed vs quadrature', check_blind_vs_quadrature, 1e-9),
    ('rician mean (std errors)', check_rician_mean, 4.),
    ('composite moments', check_composite_moments, 0.02),
    ('q-bit gain factor', check_quantization_factor, 0.02),
    ('clt fit ks', check_clt_fit, 0.05),
]


def run_checks(quick: bool = False) -> list[CheckResult]:
    results = []
    for name, check, tol in CHECKS:
        t0 = time()
        achieved = float(check(quick))
        results.append(CheckResult(name, tol, achieved, time() - t0))

    return results


def report(results: list[CheckResult]) -> str:
    s = "|           Check            | Tolerance |  Achieved  | Time (sec) | Result |\n"
    border = re.sub(r'[^+\n]', '-', s.replace('|', '+'))
    s = border + s + border

    for r in results:
        s += f"| {r.name:<26s} | {r.tolerance:9.2e} | {r.achieved:10.3e} | {r.seconds:10.2f} | " \
             f"{'PASS' if r.passed else 'FAIL':^6s} |\n"

    return s + border


def selfcheck(quick: bool = False, verbose: bool = True) -> bool:
    results = run_checks(quick)
    if verbose:
        print(report(results))

    return all(r.passed for r in results)
