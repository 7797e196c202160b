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


"""Command-line front end.

    python -m risssk run --config demo/config/blind.yaml
    python -m risssk preset fig12 --trials 1e5
    python -m risssk selfcheck --quick

Flags default to the RISSSK_<FLAG> environment variables when set.
"""

import argparse
import os
import sys

from risssk.config import parse_config
from risssk.core import run_curves
from risssk.presets import PRESETS, run_preset
from risssk.selfcheck import selfcheck
from risssk.utils.errors import ConfigError, DomainError, QuadratureError
import risssk.utils.io as rio


EXIT_OK = 0
EXIT_SELFCHECK = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

ENV_PREFIX = 'RISSSK_'


def _count(text: str) -> int:
    # Accepts 1e6 as well as 1000000
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: '{text}'") from None
    if not value.is_integer() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got '{text}'")

    return int(value)


def _env(flag: str, convert=str):
    text = os.getenv(ENV_PREFIX + flag.upper())
    if text is None:
        return None
    try:
        return convert(text)
    except (ValueError, argparse.ArgumentTypeError) as e:
        raise ConfigError(f"{ENV_PREFIX + flag.upper()}: {e}") from None


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=_env('seed', int), help='master seed')
    common.add_argument('--workers', type=_count, default=_env('workers', _count),
                        help='worker threads per SNR point (default: available cores)')
    common.add_argument('--out-dir', default=_env('out_dir') or rio.RES_DIR, help='output directory')
    common.add_argument('--trials', type=_count, default=_env('trials', _count), help='initial Monte Carlo trials')
    common.add_argument('--max-trials', type=_count, default=_env('max_trials', _count),
                        help='trial cap of the auto-escalation')
    common.add_argument('--gcq-k', type=_count, default=_env('gcq_k', _count), help='Gauss-Chebyshev order')
    common.add_argument('--quiet', action='store_true', help='disable the live progress table')

    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='risssk', description='RIS-aided SSK error-probability lab')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', parents=[common], help='run a sweep from a YAML configuration')
    run.add_argument('--config', required=True, help='YAML file path or inline YAML text')
    run.add_argument('--name', default=None, help='output name (default: config label or file stem)')

    preset = sub.add_parser('preset', parents=[common], help='run a named figure preset')
    preset.add_argument('name', help=f"one of: {', '.join(PRESETS)}")

    check = sub.add_parser('selfcheck', help='run the oracle suite')
    check.add_argument('--quick', action='store_true', help='smaller sample sizes')

    return parser


def _overrides(args: argparse.Namespace) -> dict:
    return {'seed': args.seed, 'trials': args.trials, 'max_trials': args.max_trials, 'gcq_k': args.gcq_k}


def _run_config(args: argparse.Namespace) -> None:
    cfg = parse_config(args.config)
    changes = {k: v for k, v in _overrides(args).items() if v is not None}
    if 'trials' in changes and 'max_trials' not in changes:
        changes['max_trials'] = max(changes['trials'], cfg.max_trials)
    if changes:
        cfg = cfg.replace(**changes)

    name = args.name or cfg.label
    if not name:
        stem = os.path.splitext(os.path.basename(args.config))[0]
        name = stem if os.path.isfile(args.config) else 'risssk-run'

    result = run_curves(name, [cfg], args.workers, not args.quiet)
    for path in result.save(args.out_dir):
        print(path)


def _run_preset(args: argparse.Namespace) -> None:
    _, paths = run_preset(args.name, args.out_dir, args.workers, not args.quiet, **_overrides(args))
    for path in paths:
        print(path)


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)

        if args.command == 'selfcheck':
            return EXIT_OK if selfcheck(args.quick) else EXIT_SELFCHECK
        if args.command == 'run':
            _run_config(args)
        else:
            _run_preset(args)
    except DomainError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as e:
        print(str(e), file=sys.stderr)
        return EXIT_NUMERIC

    return EXIT_OK
