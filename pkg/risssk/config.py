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


from dataclasses import dataclass, field, replace
import math
import os
from warnings import warn

import yaml

from risssk.analysis import AbepMethod, GCQ_K
from risssk.channel import CsiErrorModel, CsiMode, db2lin, RicianParams
from risssk.models import Blind, from_string
from risssk.policy import AlignTarget, DetectorReference, PhasePolicy
from risssk.system import is_power_of_two
from risssk.utils.errors import ConfigError, DomainError


MIN_VALID_TRIALS = 10 ** 4  # below this the normal-approximation CI is unreliable
MAX_TRIALS = 10 ** 7

KEYS = {'label', 'N_t', 'L', 'L_x', 'L_y', 'kappa', 'kappa_db', 'phi_x', 'phi_y', 'sigma_e2', 'pilots',
        'snr_db', 'trials', 'max_trials', 'seed', 'policy', 'gcq_k', 'align_to', 'detector',
        'shard_size', 'batch_size', 'methods', 'monte_carlo', 'device'}


@dataclass
class SystemConfig:
    N_t: int = 2
    rician: RicianParams = field(default_factory=lambda: RicianParams(0.))
    csi: CsiErrorModel = field(default_factory=CsiErrorModel.perfect)
    policy: PhasePolicy = field(default_factory=Blind)
    snr_db: list[float] = field(default_factory=lambda: [0.])
    trials: int = 10 ** 6
    max_trials: int = MAX_TRIALS
    seed: int = 0
    gcq_k: int = GCQ_K
    align_to: AlignTarget = AlignTarget.ESTIMATED
    detector: DetectorReference = DetectorReference.CONFIGURED
    shard_size: int = 100_000
    batch_size: int = 4096
    methods: list[AbepMethod] | None = None
    monte_carlo: bool = True
    label: str = ''
    device: str = 'cpu'

    def __post_init__(self) -> None:
        self.snr_db = [float(s) for s in self.snr_db]
        self.validate()

    def __str__(self) -> str:
        return f"{self.label or 'config'}: {self.policy}, N_t={self.N_t}, L={self.L}, {self.rician}, " \
            f"{self.csi}, trials={self.trials}, seed={self.seed}"

    @property
    def L(self) -> int:
        return self.rician.L

    def validate(self) -> None:
        if not is_power_of_two(self.N_t) or self.N_t < 2:
            raise DomainError(f"N_t must be a power of two of at least 2, got {self.N_t}")
        if self.trials < 1:
            raise DomainError(f"trials must be positive, got {self.trials}")
        if self.trials < MIN_VALID_TRIALS and self.monte_carlo:
            warn(f"{self.trials} trials per point is below {MIN_VALID_TRIALS}; confidence intervals are indicative only.")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")
        if self.gcq_k < 1:
            raise DomainError(f"GCQ order must be positive, got {self.gcq_k}")
        if self.shard_size < 1 or self.batch_size < 1:
            raise DomainError('shard and batch sizes must be positive')
        if not self.snr_db:
            raise DomainError('SNR grid must not be empty')
        if any(math.isnan(s) or s == -math.inf for s in self.snr_db):
            raise DomainError('SNR values must be finite (+inf is the noiseless sentinel)')

    def replace(self, **changes) -> 'SystemConfig':
        return replace(self, **changes)

    def to_dict(self) -> dict:
        d = {
            'label': self.label,
            'N_t': self.N_t,
            'L': self.L,
            'L_x': self.rician.L_x,
            'L_y': self.rician.L_y,
            'kappa': self.rician.kappa,
            'phi_x': self.rician.phi_x,
            'phi_y': self.rician.phi_y,
        }
        if self.csi.mode is CsiMode.VARIABLE:
            d['pilots'] = self.csi.pilots
        else:
            d['sigma_e2'] = self.csi.sigma_e2
        d |= {
            'snr_db': list(self.snr_db),
            'trials': self.trials,
            'max_trials': self.max_trials,
            'seed': self.seed,
            'policy': str(self.policy),
            'gcq_k': self.gcq_k,
            'align_to': self.align_to.name.lower(),
            'detector': self.detector.name.lower(),
            'shard_size': self.shard_size,
            'batch_size': self.batch_size,
            'methods': None if self.methods is None else [m.value for m in self.methods],
            'monte_carlo': self.monte_carlo,
            'device': self.device,
        }

        return d

    @classmethod
    def from_dict(cls, d: dict, lines: dict[str, int] | None = None) -> 'SystemConfig':
        lines = lines or {}

        def fail(key: str, msg: str) -> ConfigError:
            return ConfigError(f"'{key}': {msg}", lines.get(key))

        unknown = sorted(set(d) - KEYS)
        if unknown:
            raise fail(unknown[0], f"unknown key (valid keys: {', '.join(sorted(KEYS))})")
        for a, b in (('kappa', 'kappa_db'), ('sigma_e2', 'pilots')):
            if a in d and b in d:
                raise fail(b, f"conflicts with '{a}'")

        def number(key: str, kind: type = float, default=None):
            if key not in d or d[key] is None:
                return default
            value = d[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise fail(key, f"expected a number, got {value!r}")
            if kind is int and value != int(value):
                raise fail(key, f"expected an integer, got {value!r}")
            return kind(value)

        N_t = number('N_t', int, 2)
        if not is_power_of_two(N_t) or N_t < 2:
            raise fail('N_t', f"must be a power of two of at least 2, got {N_t}")

        L, L_x, L_y = number('L', int), number('L_x', int), number('L_y', int)
        if L_x is None and L_y is None:
            if L is None:
                raise fail('L', 'missing (give L or L_x and L_y)')
            L_x, L_y = RicianParams.square(L)
        elif L_x is None or L_y is None:
            raise fail('L_x' if L_x is None else 'L_y', 'L_x and L_y must be given together')
        elif L is not None and L_x * L_y != L:
            raise fail('L', f"L_x*L_y = {L_x * L_y} differs from L = {L}")

        kappa = number('kappa')
        if kappa is None:
            kappa = db2lin(number('kappa_db', float, -math.inf))

        try:
            rician = RicianParams(kappa, number('phi_x', float, math.pi / 6), number('phi_y', float, math.pi / 6), L_x, L_y)
        except DomainError as e:
            raise fail('kappa' if 'kappa' in d else 'kappa_db' if 'kappa_db' in d else 'L', e.args[0]) from None

        try:
            if 'pilots' in d:
                csi = CsiErrorModel.variable(number('pilots', int))
            else:
                csi = CsiErrorModel.fixed(number('sigma_e2', float, 0.))
        except DomainError as e:
            raise fail('pilots' if 'pilots' in d else 'sigma_e2', e.args[0]) from None

        try:
            policy = from_string(d.get('policy', 'blind'))
        except DomainError as e:
            raise fail('policy', e.args[0]) from None

        snr = d.get('snr_db', [0.])
        snr = snr if isinstance(snr, list) else [snr]
        if not snr or any(isinstance(s, bool) or not isinstance(s, (int, float)) for s in snr):
            raise fail('snr_db', f"expected a non-empty list of numbers, got {d.get('snr_db')!r}")

        def choice(key: str, enum: type, default):
            if key not in d:
                return default
            try:
                return enum[str(d[key]).upper()]
            except KeyError:
                raise fail(key, f"expected one of {', '.join(m.name.lower() for m in enum)}") from None

        methods = d.get('methods')
        if methods is not None:
            try:
                methods = [AbepMethod(m) for m in methods]
            except (TypeError, ValueError):
                raise fail('methods', f"expected a list among {', '.join(m.value for m in AbepMethod)}") from None

        trials = number('trials', int, 10 ** 6)
        kwargs = dict(N_t=N_t, rician=rician, csi=csi, policy=policy, snr_db=snr,
                      trials=trials,
                      max_trials=number('max_trials', int, max(trials, MAX_TRIALS)),
                      seed=number('seed', int, 0),
                      gcq_k=number('gcq_k', int, GCQ_K),
                      align_to=choice('align_to', AlignTarget, AlignTarget.ESTIMATED),
                      detector=choice('detector', DetectorReference, DetectorReference.CONFIGURED),
                      shard_size=number('shard_size', int, 100_000),
                      batch_size=number('batch_size', int, 4096),
                      methods=methods,
                      monte_carlo=bool(d.get('monte_carlo', True)),
                      label=str(d.get('label') or ''),
                      device=str(d.get('device', 'cpu')))

        try:
            return cls(**kwargs)
        except DomainError as e:
            raise ConfigError(e.args[0]) from None


def parse_config(source: str | os.PathLike) -> SystemConfig:
    """Builds a SystemConfig from a YAML file path or inline YAML text."""
    text = str(source)
    if os.path.isfile(text):
        with open(text, 'r') as f:
            text = f.read()

    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ConfigError(f"malformed YAML: {getattr(e, 'problem', e)}", mark.line + 1 if mark else None) from None

    if not isinstance(root, yaml.MappingNode) or not isinstance(data, dict):
        raise ConfigError('configuration must be a mapping of keys to values', 1)

    lines = {k.value: k.start_mark.line + 1 for k, _ in root.value}

    return SystemConfig.from_dict(data, lines)


def dump_config(cfg: SystemConfig) -> str:
    return yaml.safe_dump(cfg.to_dict(), sort_keys=False)
