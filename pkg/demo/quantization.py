from risssk.core import run_curves
from risssk.models import Quantized

import demo as cs


B = range(1, 7)     # Phase-shifter resolution in bits

cfgs = [cs.base_cfg.replace(policy=Quantized(b), label=f"Q={b}") for b in B]
cfgs.append(cs.base_cfg.replace(label='continuous'))

res = run_curves(cs.get_name('quantization'), cfgs, workers=cs.WORKERS, verbose=True)
for path in res.save(cs.OUT_DIR):
    print(path)
