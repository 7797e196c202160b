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


class DomainError(ValueError):
    code = 'E_DOMAIN'

    def __str__(self) -> str:
        return f"{self.code}: {super().__str__()}"


class ConfigError(DomainError):
    code = 'E_CONFIG'

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class PresetError(DomainError):
    code = 'E_PRESET'

    def __init__(self, name: str, valid: list[str]) -> None:
        self.name = name
        self.valid = valid
        super().__init__(f"unknown preset '{name}' (valid: {', '.join(valid)})")


class QuadratureError(ArithmeticError):
    code = 'E_QUAD'

    def __init__(self, message: str, value: float, abserr: float) -> None:
        self.value = value
        self.abserr = abserr
        super().__init__(f"{self.code}: {message} (estimate {value:.6g}, achieved error {abserr:.3g})")
