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


import csv
import math
import os

import yaml


OUT_DIR = 'out'
RES_DIR = os.path.join(OUT_DIR, 'res')

CSV_HEADER = ['snr_db', 'method', 'abep', 'ci95']


# Shortest round-trip text, so identical values always produce identical bytes
def format_float(x: float | None) -> str:
    if x is None:
        return ''
    if math.isinf(x):
        return 'inf' if x > 0 else '-inf'

    return repr(float(x))


def parse_float(text: str) -> float | None:
    return float(text) if text != '' else None


def write_csv(filepath: str, rows: list[tuple[float | None, str, float, float | None]]) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(filepath)), exist_ok=True)

    with open(filepath, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        for snr_db, method, abep, ci95 in rows:
            writer.writerow([format_float(snr_db), method, format_float(abep), format_float(ci95)])


def read_csv(filepath: str) -> list[tuple[float | None, str, float, float | None]]:
    with open(filepath, 'r', newline='') as f:
        reader = csv.reader(f)
        header = next(reader)
        assert header == CSV_HEADER, f"Unexpected CSV header {header}"

        return [(parse_float(s), m, float(a), parse_float(c)) for s, m, a, c in reader]


def write_yaml(filepath: str, data: dict) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(filepath)), exist_ok=True)

    with open(filepath, 'w') as f:
        yaml.safe_dump(data, f, sort_keys=False)


def read_yaml(filepath: str) -> dict:
    with open(filepath, 'r') as f:
        return yaml.safe_load(f)
