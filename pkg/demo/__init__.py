__all__ = ["example", "quantization", "Campaign", "base_cfg"]

import os

import risssk as rs
from risssk.core import Campaign


# Configuration parameters (modify depending on application)
CASE_STUDY = 'intelligent'  # 'intelligent' # 'blind'
WORKERS = None              # None uses every available core
OUT_DIR = 'out/demo'

_exception = ValueError(f"Case study '{CASE_STUDY}' not added.")

# To work on a new case study:
#   - Add a YAML file under demo/config and a case below

if CASE_STUDY in ('intelligent', 'blind'):
    fyamlname = f"{CASE_STUDY}.yaml"
else:
    raise _exception

# No changes needed after this line
# --------------------------

os.makedirs(OUT_DIR, exist_ok=True)

base_cfg = rs.parse_config(os.path.join(os.path.dirname(__file__), 'config', fyamlname))


def get_name(suffix: str = '') -> str:
    return f"{CASE_STUDY}{'_' + suffix if suffix else ''}"
