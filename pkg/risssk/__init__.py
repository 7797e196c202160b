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


__all__ = ["analysis", "channel", "config", "core", "mathstats", "models", "rm", "policy", "presets", "selfcheck",
           "system", "utils",
           "Campaign", "SweepResult", "SystemConfig", "parse_config", "run_preset"]

from risssk.core import Campaign, SweepResult
from risssk.config import SystemConfig, parse_config
from risssk.presets import run_preset
from risssk import analysis, channel, config, core, mathstats, policy, presets, selfcheck, system
from risssk import models as rm
from risssk import models
from risssk import utils
