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
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from risssk.analysis import abep_union_bound, AbepMethod, composite_moments, EffectiveSnr, pairwise_matrix, \
    upep_intelligent_exact, upep_intelligent_gcq
from risssk.channel import CsiErrorModel, db2lin, RicianParams
from risssk.config import SystemConfig
from risssk.core import Campaign, Projection, run_curves, SweepResult
from risssk.models import Blind, Intelligent, Quantized
from risssk.utils.errors import PresetError


PRESET_SEED = 1
PRESET_TRIALS = 10 ** 6
CLT_SAMPLES = 10 ** 5
GCQ_ORDERS = [*range(1, 11), 15, 20, 30, 40, 50]

KAPPA_3DB = db2lin(3.)


class PresetKind(Enum):
    SWEEP = 0
    CLT_FIT = 1
    GCQ_ORDER = 2


@dataclass
class ExperimentPreset:
    name: str
    title: str
    curves: list[SystemConfig]
    kind: PresetKind = PresetKind.SWEEP
    extra: dict = field(default_factory=dict)

    def __str__(self) -> str:
        return f"{self.name}: {self.title} ({len(self.curves)} curve{'s' if len(self.curves) > 1 else ''})"

    def override(self, **changes) -> 'ExperimentPreset':
        changes = {k: v for k, v in changes.items() if v is not None}
        if 'trials' in changes and 'max_trials' not in changes:
            changes['max_trials'] = max(changes['trials'], self.curves[0].max_trials)

        return ExperimentPreset(self.name, self.title, [cfg.replace(**changes) for cfg in self.curves],
                                self.kind, dict(self.extra))

    def run(self, workers: int | None = None, verbose: bool = False) -> SweepResult:
        if self.kind is PresetKind.CLT_FIT:
            return self._run_clt_fit()
        if self.kind is PresetKind.GCQ_ORDER:
            return self._run_gcq_order()

        return run_curves(self.name, self.curves, workers, verbose)

    def _run_clt_fit(self) -> SweepResult:
        result = SweepResult(self.name, list(self.curves), meta={'samples': self.extra['samples']})
        for cfg in self.curves:
            cmpn = Campaign(cfg, name=self.name)
            for proj in Projection:
                _, ks = cmpn.fit_composite_distribution(self.extra['samples'], proj)
                result.add(cfg.label, None, f"ks_{proj.name.lower()}", ks)

        return result

    def _run_gcq_order(self) -> SweepResult:
        orders = self.extra['orders']
        result = SweepResult(self.name, list(self.curves), meta={'orders': orders})
        for cfg in self.curves:
            m = composite_moments(cfg.L, cfg.rician.kappa)
            for snr_db in cfg.snr_db:
                e = EffectiveSnr.build(db2lin(snr_db), cfg.csi, cfg.L)
                for K in orders:
                    upep = upep_intelligent_gcq(e, m, K).value
                    result.add(cfg.label, snr_db, f"gcq{K}", abep_union_bound(pairwise_matrix(upep, cfg.N_t), cfg.N_t))
                upep = upep_intelligent_exact(e, m).value
                result.add(cfg.label, snr_db, AbepMethod.EXACT.value, abep_union_bound(pairwise_matrix(upep, cfg.N_t), cfg.N_t))

        return result


def _grid(start: float, stop: float, step: float) -> list[float]:
    return [float(x) for x in np.round(np.arange(start, stop + step / 2., step), 6)]


def _curve(label: str, L: int, kappa: float, csi: CsiErrorModel, policy, snr_db: list[float], **kwargs) -> SystemConfig:
    L_x, L_y = RicianParams.square(L)
    return SystemConfig(N_t=2, rician=RicianParams(kappa, L_x=L_x, L_y=L_y), csi=csi, policy=policy, snr_db=snr_db,
                        trials=PRESET_TRIALS, seed=PRESET_SEED, label=label, **kwargs)


def _fig2() -> ExperimentPreset:
    curves = [_curve(f"L={L}", L, KAPPA_3DB, CsiErrorModel.perfect(), Intelligent(), [0.], monte_carlo=False)
              for L in (10, 100)]
    return ExperimentPreset('fig2', 'fit of the composite channel difference to its Gaussian model', curves,
                            PresetKind.CLT_FIT, {'samples': CLT_SAMPLES})


def _fig3() -> ExperimentPreset:
    curves = [_curve(f"L={L}", L, 0., CsiErrorModel.perfect(), Intelligent(), _grid(-30., 10., 2.5),
                     methods=[AbepMethod.EXACT, AbepMethod.GCQ]) for L in (16, 32, 64)]
    return ExperimentPreset('fig3', 'intelligent scheme, perfect CSI, Rayleigh RIS-UE channel', curves)


def _fig4() -> ExperimentPreset:
    methods = [AbepMethod.EXACT, AbepMethod.CLOSED_FORM, AbepMethod.CHERNOFF]
    curves = [_curve(f"L={L}", L, KAPPA_3DB, CsiErrorModel.fixed(0.1), Intelligent(), _grid(-40., 0., 2.),
                     methods=methods, monte_carlo=False) for L in (64, 256)]
    return ExperimentPreset('fig4', 'exact, closed-form and Chernoff UPEP of the intelligent scheme', curves)


def _fig5() -> ExperimentPreset:
    methods = [AbepMethod.EXACT, AbepMethod.CHERNOFF, AbepMethod.ASYMPTOTIC]
    curves = [_curve(f"L={L}", L, KAPPA_3DB, CsiErrorModel.fixed(0.1), Intelligent(), _grid(-40., 40., 5.),
                     methods=methods) for L in (64, 256)]
    return ExperimentPreset('fig5', 'error floor of the intelligent scheme under fixed estimation error', curves)


def _fig6() -> ExperimentPreset:
    curves = [_curve('L=200', 200, KAPPA_3DB, CsiErrorModel.fixed(0.1), Intelligent(), [-32., -30., -28.],
                     monte_carlo=False)]
    return ExperimentPreset('fig6', 'GCQ order sweep against the exact integral', curves,
                            PresetKind.GCQ_ORDER, {'orders': GCQ_ORDERS})


def _fig7() -> ExperimentPreset:
    curves = [_curve('L=200', 200, KAPPA_3DB, CsiErrorModel.fixed(0.1), Intelligent(), _grid(-40., -16., 2.),
                     methods=[AbepMethod.EXACT, AbepMethod.GCQ], monte_carlo=False)]
    return ExperimentPreset('fig7', 'GCQ(3) accuracy across SNR', curves)


def _fig8() -> ExperimentPreset:
    curves = [_curve(f"kappa_db={k:g}", 144, db2lin(k), CsiErrorModel.fixed(0.1), Intelligent(), _grid(-35., -15., 2.5),
                     methods=[AbepMethod.GCQ]) for k in (0., 5., 10., 15.)]
    return ExperimentPreset('fig8', 'Rician factor impact on the intelligent scheme', curves)


def _fig9() -> ExperimentPreset:
    grid = _grid(-40., 0., 4.)
    curves = [_curve(f"sigma_e2={s:g}", 256, KAPPA_3DB, CsiErrorModel.fixed(s), Intelligent(), grid,
                     methods=[AbepMethod.GCQ]) for s in (3., 2., 1., 0.1)]
    curves.append(_curve('perfect', 256, KAPPA_3DB, CsiErrorModel.perfect(), Intelligent(), grid,
                         methods=[AbepMethod.GCQ]))
    return ExperimentPreset('fig9', 'intelligent scheme with fixed estimation error variance', curves)


def _fig10() -> ExperimentPreset:
    grid = _grid(-40., 0., 4.)
    curves = [_curve(f"N={n}", 256, KAPPA_3DB, CsiErrorModel.variable(n), Intelligent(), grid,
                     methods=[AbepMethod.GCQ]) for n in (1, 2, 10, 30, 90)]
    curves.append(_curve('perfect', 256, KAPPA_3DB, CsiErrorModel.perfect(), Intelligent(), grid,
                         methods=[AbepMethod.GCQ]))
    return ExperimentPreset('fig10', 'intelligent scheme with SNR-dependent estimation error', curves)


def _fig11() -> ExperimentPreset:
    curves = [_curve(f"sigma_e2={s:g}", 144, KAPPA_3DB, CsiErrorModel.fixed(s), Blind(), _grid(0., 60., 5.))
              for s in (0.1, 0.01)]
    return ExperimentPreset('fig11', 'error floor of the blind scheme', curves)


def _fig12() -> ExperimentPreset:
    curves = [_curve(f"kappa_db={k:g}", 100, db2lin(k), CsiErrorModel.perfect(), Blind(), [0., 10., 20.],
                     methods=[AbepMethod.BLIND_CLOSED_FORM]) for k in _grid(0., 20., 2.)]
    return ExperimentPreset('fig12', 'Rician factor impact on the blind scheme', curves)


def _fig13() -> ExperimentPreset:
    grid = _grid(0., 40., 5.)
    kappa = db2lin(5.)
    curves = [_curve(f"sigma_e2={s:g}", 100, kappa, CsiErrorModel.fixed(s), Blind(), grid)
              for s in (0., 0.005, 0.01)]
    curves += [_curve(f"N={n}", 100, kappa, CsiErrorModel.variable(n), Blind(), grid) for n in (1, 3, 10)]
    return ExperimentPreset('fig13', 'blind scheme with fixed and SNR-dependent estimation error', curves)


def _quantization(name: str, csi: CsiErrorModel, title: str) -> ExperimentPreset:
    grid = _grid(-40., 20., 5.)
    policies = [('blind', Blind()), ('Q=1', Quantized(1)), ('Q=2', Quantized(2)), ('Q=3', Quantized(3)),
                ('continuous', Intelligent())]
    curves = [_curve(label, 196, KAPPA_3DB, csi, policy, grid,
                     methods=[AbepMethod.BLIND_CLOSED_FORM, AbepMethod.GCQ]) for label, policy in policies]
    return ExperimentPreset(name, title, curves)


def _fig14() -> ExperimentPreset:
    return _quantization('fig14', CsiErrorModel.fixed(0.1), 'discrete phase shifts, fixed estimation error')


def _fig15() -> ExperimentPreset:
    return _quantization('fig15', CsiErrorModel.variable(30), 'discrete phase shifts, SNR-dependent estimation error')


PRESETS: dict[str, Callable[[], ExperimentPreset]] = {
    'fig2': _fig2, 'fig3': _fig3, 'fig4': _fig4, 'fig5': _fig5, 'fig6': _fig6, 'fig7': _fig7, 'fig8': _fig8,
    'fig9': _fig9, 'fig10': _fig10, 'fig11': _fig11, 'fig12': _fig12, 'fig13': _fig13, 'fig14': _fig14,
    'fig15': _fig15,
}


def get_preset(name: str) -> ExperimentPreset:
    if name not in PRESETS:
        raise PresetError(name, list(PRESETS))

    return PRESETS[name]()


def run_preset(name: str, out_dir: str | None = None, workers: int | None = None, verbose: bool = False,
               **overrides) -> tuple[SweepResult, tuple[str, str]]:
    preset = get_preset(name).override(**overrides)
    result = preset.run(workers, verbose)
    result.meta |= {'preset': name, 'title': preset.title}

    return result, result.save(out_dir)
