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


from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
import math
import os
from threading import Lock, Thread
from time import time
from warnings import warn

import numpy as np
from scipy import stats
import torch

from risssk.analysis import analytical_abep, AbepEstimate, AbepMethod, composite_moments, noncentral_chi2_cdf
from risssk.channel import db2lin, sample_realization, snr_key
from risssk.config import SystemConfig
from risssk.mathstats import EmpiricalDistribution, ks_distance, RngStream
from risssk.policy import DetectorReference
from risssk.system import composite_difference, configure, detect_blind, detect_intelligent, hamming_table, \
    SskSymbol, synthesize_rx
from risssk.utils.errors import DomainError
import risssk.utils.io as rio
from risssk.utils.progress import SweepProgress, refresh_progress_job


VERSION = '1.0.0'

MIN_ERRORS = 100        # escalate the trial budget below this many bit errors
WILSON_BELOW = 30       # normal-approximation CI needs at least this many errors
ESCALATION = 10
CLT_STREAM = 2 ** 32    # keeps composite sampling apart from the per-SNR streams


@dataclass(frozen=True)
class BerPoint:
    snr_db: float
    errors: int
    bits: int
    symbol_errors: int = 0
    trials: int = 0

    def __post_init__(self) -> None:
        assert 0 <= self.errors <= self.bits, 'Bit error count outside [0, bits]'

    @property
    def ber(self) -> float:
        return self.errors / self.bits

    @property
    def ser(self) -> float:
        return self.symbol_errors / self.trials if self.trials else math.nan

    @property
    def ci95(self) -> float:
        if self.errors < WILSON_BELOW:
            ci = stats.binomtest(self.errors, self.bits).proportion_ci(0.95, method='wilson')
            return (ci.high - ci.low) / 2.

        p = self.ber
        return float(stats.norm.ppf(0.975)) * math.sqrt(p * (1. - p) / self.bits)

    def estimate(self) -> AbepEstimate:
        return AbepEstimate(self.ber, AbepMethod.MONTE_CARLO, self.ci95)


class Projection(Enum):
    REAL = 0            # Re(eta - eta_hat)
    IN_QUADRATURE = 1   # Re + Im, mean mu and variance sigma^2
    SQUARED = 2         # (Re + Im)^2, noncentral chi-square with one degree of freedom


@dataclass
class SweepRow:
    curve: str
    snr_db: float | None
    method: str
    abep: float
    ci95: float | None = None

    @property
    def column(self) -> str:
        return f"{self.curve}/{self.method}" if self.curve else self.method


@dataclass
class SweepResult:
    name: str
    configs: list[SystemConfig] = field(default_factory=list)
    rows: list[SweepRow] = field(default_factory=list)
    points: dict[str, list[BerPoint]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)
    version: str = VERSION

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, curve: str, snr_db: float | None, method: str, abep: float, ci95: float | None = None) -> None:
        self.rows.append(SweepRow(curve, snr_db, method, abep, ci95))

    def add_point(self, curve: str, point: BerPoint) -> None:
        self.points.setdefault(curve, []).append(point)
        self.add(curve, point.snr_db, AbepMethod.MONTE_CARLO.value, point.ber, point.ci95)

    def extend(self, other: 'SweepResult') -> None:
        self.configs.extend(other.configs)
        self.rows.extend(other.rows)
        for curve, pts in other.points.items():
            self.points.setdefault(curve, []).extend(pts)

    def select(self, method: str, curve: str | None = None) -> list[SweepRow]:
        return [r for r in self.rows if r.method == method and (curve is None or r.curve == curve)]

    def csv_rows(self) -> list[tuple[float | None, str, float, float | None]]:
        return [(r.snr_db, r.column, r.abep, r.ci95) for r in self.rows]

    def save(self, dirpath: str | None = None) -> tuple[str, str]:
        dirpath = dirpath or rio.RES_DIR
        csv_path = os.path.join(dirpath, self.name + '.csv')
        meta_path = os.path.join(dirpath, self.name + '.meta.yaml')

        rio.write_csv(csv_path, self.csv_rows())
        rio.write_yaml(meta_path, {
            'version': self.version,
            'name': self.name,
            'columns': {'snr_db': 'SNR in dB', 'method': '[curve/]method', 'abep': 'average bit error probability',
                        'ci95': 'Monte Carlo 95% confidence half-width (empty for analytical rows)'},
            'curves': [cfg.to_dict() for cfg in self.configs],
        } | ({'meta': self.meta} if self.meta else {}))

        return csv_path, meta_path

    @staticmethod
    def load(csv_path: str) -> 'SweepResult':
        meta_path = csv_path.removesuffix('.csv') + '.meta.yaml'
        sidecar = rio.read_yaml(meta_path)

        result = SweepResult(sidecar['name'], [SystemConfig.from_dict(d) for d in sidecar.get('curves', [])],
                             meta=sidecar.get('meta', {}), version=sidecar['version'])
        for snr_db, column, abep, ci95 in rio.read_csv(csv_path):
            curve, _, method = column.rpartition('/')
            result.add(curve, snr_db, method, abep, ci95)

        if result.version != VERSION:
            warn('The loaded sweep was created with a different version of risssk.', DeprecationWarning)

        return result


class Campaign:
    def __init__(self, cfg: SystemConfig, name: str = 'risssk-campaign', workers: int | None = None,
                 verbose: bool = False) -> None:
        self.cfg = cfg
        self.name = name
        self.workers = workers or os.cpu_count() or 1
        self.verbose = verbose
        self.device = torch.device(cfg.device)
        self.hamming = torch.as_tensor(hamming_table(cfg.N_t), device=self.device)

        self.duration = 0.
        self.progress = None
        self.progress_lock = Lock()
        self.progress_thread = None

        assert self.workers >= 1, 'At least one worker is needed'

    def __repr__(self) -> str:
        return f"Campaign '{self.name}'\n" \
            + f"  - Config: {self.cfg}\n" \
            + f"  - SNR grid (dB): {self.cfg.snr_db}\n" \
            + f"  - Workers: {self.workers}"

    def run_point(self, snr_db: float) -> BerPoint:
        cfg = self.cfg
        if cfg.trials < 1:
            raise DomainError(f"trials must be positive, got {cfg.trials}")

        rho = math.inf if snr_db == math.inf else db2lin(snr_db)
        stream = RngStream(cfg.seed, snr_key(snr_db), device=self.device)

        budget = cfg.trials
        done = shard_idx = 0
        errors = bits = symbol_errors = 0

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            while True:
                plan = self._shard_plan(budget - done)
                jobs = [(stream.spawn(shard_idx + i), n) for i, n in enumerate(plan)]
                for e, b, s in executor.map(lambda job: self._run_shard(rho, *job), jobs):
                    errors += e
                    bits += b
                    symbol_errors += s

                done = budget
                shard_idx += len(plan)

                if errors >= MIN_ERRORS or budget >= cfg.max_trials:
                    break
                budget = min(budget * ESCALATION, cfg.max_trials)

        return BerPoint(snr_db, errors, bits, symbol_errors, done)

    def run_sweep(self) -> SweepResult:
        cfg = self.cfg
        result = SweepResult(self.name, [cfg])
        curve = cfg.label

        self._pre_run()
        for snr_db in cfg.snr_db:
            if self.progress:
                with self.progress_lock:
                    self.progress.begin_point(curve, snr_db)

            if cfg.monte_carlo:
                result.add_point(curve, self.run_point(snr_db))

            if math.isfinite(snr_db):
                for est in analytical_abep(cfg.policy, cfg.L, cfg.rician.kappa, cfg.csi, db2lin(snr_db),
                                           cfg.N_t, cfg.gcq_k, cfg.methods):
                    result.add(curve, snr_db, est.label, est.value)

            if self.progress:
                with self.progress_lock:
                    self.progress.step()
        self._post_run()

        return result

    def fit_composite_distribution(self, n_samples: int,
                                   projection: Projection = Projection.IN_QUADRATURE) -> tuple[EmpiricalDistribution, float]:
        cfg = self.cfg
        if not cfg.policy.is_aligned():
            raise DomainError('the composite fit applies to phase-aligned policies only')

        rng = RngStream(cfg.seed, CLT_STREAM, device=self.device)
        diff = composite_difference(cfg.L, cfg.rician.kappa, n_samples, rng)
        m = composite_moments(cfg.L, cfg.rician.kappa)

        if projection is Projection.REAL:
            emp = EmpiricalDistribution(torch.real(diff))
            cdf = stats.norm(m.mu, m.sigma).cdf
        elif projection is Projection.IN_QUADRATURE:
            emp = EmpiricalDistribution(torch.real(diff) + torch.imag(diff))
            cdf = stats.norm(m.mu, m.sigma).cdf
        else:
            emp = EmpiricalDistribution((torch.real(diff) + torch.imag(diff)) ** 2)

            def cdf(x: np.ndarray) -> np.ndarray:
                return noncentral_chi2_cdf(x, m)

        return emp, ks_distance(emp, cdf)

    def _shard_plan(self, trials: int) -> list[int]:
        size = self.cfg.shard_size
        return [min(size, trials - start) for start in range(0, trials, size)]

    def _run_shard(self, rho: float, rng: RngStream, trials: int) -> tuple[int, int, int]:
        cfg = self.cfg
        P_s = 1.
        N_0 = 0. if math.isinf(rho) else P_s / rho

        errors = symbol_errors = 0
        with torch.no_grad():
            for start in range(0, trials, cfg.batch_size):
                b = min(cfg.batch_size, trials - start)

                real = sample_realization(cfg.rician, cfg.N_t, cfg.csi, rho, rng, b)
                sent = SskSymbol(rng.integers(cfg.N_t, b), cfg.N_t)
                phases = configure(real, sent, cfg.policy, cfg.align_to)
                y = synthesize_rx(real, sent, cfg.policy, P_s, N_0, rng, phases=phases)

                if cfg.policy.is_blind():
                    detected = detect_blind(y, real.G, real.H_hat, real.zeta, P_s)
                elif cfg.detector is DetectorReference.CONFIGURED:
                    detected = detect_intelligent(y, real.G, real.H_hat, real.zeta, P_s, phases)
                else:
                    detected = detect_intelligent(y, real.G, real.H_hat, real.zeta, P_s)

                errors += int(self.hamming[sent.index, detected.index].sum())
                symbol_errors += int((sent.index != detected.index).sum())

        if self.progress:
            with self.progress_lock:
                self.progress.add(trials, errors)

        return errors, trials * (cfg.N_t.bit_length() - 1), symbol_errors

    def _pre_run(self) -> None:
        self.duration = 0.
        self.start = time()
        if not self.verbose:
            self.progress = None
            return

        self.progress = SweepProgress(len(self.cfg.snr_db), self.name)
        self.progress.timer()
        self.progress_thread = Thread(target=refresh_progress_job, args=(self.progress, .5,), daemon=True)
        self.progress_thread.start()

    def _post_run(self) -> None:
        if self.progress:
            self.progress.timer()
            self.progress_thread.join()
            self.progress_thread = None

        self.duration = time() - self.start


def run_curves(name: str, configs: list[SystemConfig], workers: int | None = None, verbose: bool = False) -> SweepResult:
    result = SweepResult(name)
    for cfg in configs:
        cmpn = Campaign(cfg, name=f"{name}:{cfg.label}" if cfg.label else name, workers=workers, verbose=verbose)
        result.extend(cmpn.run_sweep())

    return result
