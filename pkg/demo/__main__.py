from risssk.channel import CsiErrorModel
from risssk.core import Campaign

import demo as cs


CMPN_SEL = 2

if CMPN_SEL == 1:
    # Fixed estimation error variance
    for sigma_e2 in (0., 0.01, 0.1, 1.):
        cmpn = Campaign(cs.base_cfg.replace(csi=CsiErrorModel.fixed(sigma_e2), label=f"sigma_e2={sigma_e2:g}"),
                        name=cs.get_name(f"fixed_{sigma_e2:g}"), workers=cs.WORKERS, verbose=True)
        cmpn.run_sweep().save(cs.OUT_DIR)
        print(f"{cmpn.duration : .2f} secs")

elif CMPN_SEL == 2:
    # Estimation error shrinking with the pilot count
    for pilots in (1, 3, 10, 30):
        cmpn = Campaign(cs.base_cfg.replace(csi=CsiErrorModel.variable(pilots), label=f"N={pilots}"),
                        name=cs.get_name(f"pilots_{pilots}"), workers=cs.WORKERS, verbose=True)
        cmpn.run_sweep().save(cs.OUT_DIR)
        print(f"{cmpn.duration : .2f} secs")
