from risssk.analysis import AbepMethod
from risssk.core import Campaign, Projection, SweepResult
from risssk.models import Quantized

import demo as cs


# Monte Carlo sweep with the analytical curves of the configured policy
cmpn = Campaign(cs.base_cfg, name=cs.get_name('example'), workers=cs.WORKERS, verbose=True)
print(cmpn)

res = cmpn.run_sweep()
print(f"{cmpn.duration : .2f} secs")

for row in res.select(AbepMethod.MONTE_CARLO.value, cs.base_cfg.label):
    print(f"{row.snr_db:6.1f} dB  BER {row.abep:.3e} +/- {row.ci95:.1e}")

csv_path, _ = res.save(cs.OUT_DIR)
print(SweepResult.load(csv_path).name)

# Same system with a 2-bit phase-shifter RIS
cmpn_q = Campaign(cs.base_cfg.replace(policy=Quantized(2), label='Q=2'), name=cs.get_name('q2'), workers=cs.WORKERS)
cmpn_q.run_sweep().save(cs.OUT_DIR)

# Gaussian fit of the composite channel difference
if cs.base_cfg.policy.is_aligned():
    for proj in Projection:
        _, ks = cmpn.fit_composite_distribution(10 ** 5, proj)
        print(f"KS distance ({proj.name.lower()}): {ks:.4f}")
