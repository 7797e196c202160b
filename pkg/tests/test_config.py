"""risssk/config.py tests.

Run with:
  pytest -vvv tests/test_config.py
"""

import math

import pytest

from risssk.analysis import AbepMethod
from risssk.channel import CsiErrorModel, CsiMode, RicianParams
from risssk.config import dump_config, parse_config, SystemConfig
from risssk.models import Blind, Quantized
from risssk.policy import AlignTarget, DetectorReference
from risssk.utils.errors import ConfigError, DomainError


MINIMAL = """\
N_t: 2
L: 16
kappa_db: 0
snr_db: [0]
trials: 10000
policy: blind
sigma_e2: 0
"""


def test_minimal_config() -> None:
    cfg = parse_config(MINIMAL)
    assert (cfg.N_t, cfg.L, cfg.rician.L_x, cfg.rician.L_y) == (2, 16, 4, 4)
    assert cfg.rician.kappa == pytest.approx(1.)
    assert cfg.policy == Blind()
    assert cfg.csi.is_perfect()
    assert cfg.snr_db == [0.]
    assert cfg.align_to is AlignTarget.ESTIMATED and cfg.detector is DetectorReference.CONFIGURED


def test_kappa_db_is_converted() -> None:
    assert parse_config(MINIMAL.replace('kappa_db: 0', 'kappa_db: 3')).rician.kappa == pytest.approx(1.9953, abs=1e-4)


def test_config_from_file(tmp_path) -> None:
    path = tmp_path / 'cfg.yaml'
    path.write_text(MINIMAL + 'label: file\n')
    assert parse_config(path).label == 'file'


@pytest.mark.parametrize(
    ('change', 'line', 'match'),
    [
        (('N_t: 2', 'N_t: 3'), 1, 'power of two'),
        (('trials: 10000', 'trails: 10000'), 5, 'unknown key'),
        (('L: 16', 'L: 16\nL_x: 4\nL_y: 3'), 2, 'differs from L'),
        (('sigma_e2: 0', 'sigma_e2: -1'), 7, 'non-negative'),
        (('policy: blind', 'policy: quantized:0'), 6, 'at least 1 bit'),
        (('snr_db: [0]', 'snr_db: []'), 4, 'non-empty'),
        (('sigma_e2: 0', 'pilots: 2\nsigma_e2: 0'), 7, 'conflicts'),
    ],
)
def test_config_errors_carry_line(change: tuple[str, str], line: int, match: str) -> None:
    with pytest.raises(ConfigError, match=match) as exc:
        parse_config(MINIMAL.replace(*change))
    assert exc.value.line == line
    assert str(exc.value).startswith(f"E_CONFIG: line {line}:")


def test_malformed_yaml() -> None:
    with pytest.raises(ConfigError, match='malformed') as exc:
        parse_config('N_t: 2\nL: [16\n')
    assert exc.value.line is not None
    with pytest.raises(ConfigError, match='mapping'):
        parse_config('- 1\n- 2\n')


def test_config_error_is_domain_error() -> None:
    with pytest.raises(DomainError):
        parse_config(MINIMAL.replace('N_t: 2', 'N_t: 6'))


def test_full_config() -> None:
    cfg = parse_config("""\
label: q2
N_t: 4
L_x: 8
L_y: 2
kappa: 2.5
pilots: 10
policy: quantized:2
snr_db: [-10, -5.5, .inf]
trials: 20000
max_trials: 40000
seed: 3
gcq_k: 7
align_to: true
detector: aligned
methods: [gcq, exact]
monte_carlo: false
""")
    assert cfg.rician == RicianParams(2.5, L_x=8, L_y=2)
    assert cfg.csi.mode is CsiMode.VARIABLE and cfg.csi.pilots == 10
    assert cfg.policy == Quantized(2)
    assert cfg.snr_db == [-10., -5.5, math.inf]
    assert (cfg.trials, cfg.max_trials, cfg.seed, cfg.gcq_k) == (20000, 40000, 3, 7)
    assert cfg.align_to is AlignTarget.TRUE and cfg.detector is DetectorReference.ALIGNED
    assert cfg.methods == [AbepMethod.GCQ, AbepMethod.EXACT]
    assert not cfg.monte_carlo


def test_dump_and_parse_round_trip() -> None:
    cfg = SystemConfig(N_t=8, rician=RicianParams(3., L_x=4, L_y=4), csi=CsiErrorModel.fixed(0.1), policy=Quantized(3),
                       snr_db=[-5., 0., 5.], trials=50_000, seed=9, methods=[AbepMethod.GCQ], label='rt')
    assert parse_config(dump_config(cfg)) == cfg


def test_system_config_validation() -> None:
    with pytest.raises(DomainError, match='power of two'):
        SystemConfig(N_t=1)
    with pytest.raises(DomainError, match='SNR'):
        SystemConfig(snr_db=[math.nan])
    with pytest.raises(DomainError, match='seed'):
        SystemConfig(seed=-1)
    with pytest.warns(UserWarning, match='below'):
        SystemConfig(trials=100)
    assert SystemConfig(trials=1000, monte_carlo=False).trials == 1000
    assert SystemConfig().replace(seed=4).seed == 4
