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


import re
from time import sleep, time


class SweepProgress:
    def __init__(self, points_num: int, name: str = '') -> None:
        self.name = name
        self.curve = ''
        self.snr_db = 0.
        self.point = 0
        self.iter = 0
        self.iter_num = points_num
        self.fragment = 1. / max(points_num, 1)
        self.status = 0.
        self.trials = 0
        self.errors = 0
        self.start_time = 0.
        self.end_time = 0.

        self._flush_lines_num = 0

    def __str__(self) -> str:
        s = "|   Curve    | SNR (dB) | Point # |   Trials   |  Errors  | Total time | Progress |\n"
        border = re.sub(r'[^+\n]', '-', s.replace('|', '+'))
        s = border + s

        p = self.point + 1 if self.point + 1 <= self.iter_num else self.iter_num

        s += f"| {self.curve[:10]:<10s} | {self.snr_db:8.2f} | {p:3d}/{self.iter_num:<3d} | {self.trials:10d} | {self.errors:8d} | "
        if self.start_time:
            s += f"{((self.end_time or time()) - self.start_time):6.0f} sec | "
        s += f"{self.status * 100.:6.2f} % |\n"
        s += border

        self._flush_lines_num = s.count('\n') + 2

        return s

    def show(self) -> None:
        print('\033[1A\x1b[2K' * self._flush_lines_num)  # Line up, line clear
        print(self)

    def begin_point(self, curve: str, snr_db: float) -> None:
        self.curve = curve
        self.snr_db = snr_db
        self.trials = 0
        self.errors = 0

    def add(self, trials: int, errors: int) -> None:
        self.trials += trials
        self.errors += errors

    def step(self) -> None:
        self.status += self.fragment
        self.iter += 1
        self.point += 1

    def timer(self) -> None:
        if self.start_time and not self.end_time:
            self.end_time = time()
        else:
            self.start_time = time()
            self.end_time = 0.


def refresh_progress_job(progress: SweepProgress, secs: float) -> None:
    while progress.iter < progress.iter_num:
        progress.show()
        sleep(secs)
    progress.show()
