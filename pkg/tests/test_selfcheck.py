"""risssk/selfcheck.py tests.

Run with:
  pytest -vvv tests/test_selfcheck.py
"""

import pytest

import risssk.analysis
from risssk import selfcheck


ANALYTICAL = [
    selfcheck.check_pdf_normalization,
    selfcheck.check_mgf_duality,
    selfcheck.check_gcq_vs_exact,
    selfcheck.check_closed_vs_exact,
    selfcheck.check_chernoff_bound,
    selfcheck.check_exact_vs_double_integral,
    selfcheck.check_blind_vs_quadrature,
]


@pytest.mark.parametrize('check', ANALYTICAL, ids=lambda f: f.__name__)
def test_analytical_checks_pass(check) -> None:
    tol = next(t for _, c, t in selfcheck.CHECKS if c is check)
    assert check(True) <= tol


def test_quantization_check_passes() -> None:
    assert selfcheck.check_quantization_factor(True) <= 0.02


def test_corrupted_quantization_factor_fails(monkeypatch) -> None:
    monkeypatch.setattr(risssk.analysis, 'quantization_factor', lambda bits: 1.)
    assert selfcheck.check_quantization_factor(True) > 0.02


def test_report_table() -> None:
    results = [selfcheck.CheckResult('ok check', 1e-3, 1e-4, 0.5), selfcheck.CheckResult('bad check', 1e-3, 1., 0.1)]
    table = selfcheck.report(results)
    assert 'ok check' in table and 'PASS' in table and 'FAIL' in table
    assert table.startswith('+') and table.rstrip().endswith('+')
    assert [r.passed for r in results] == [True, False]


def test_quick_selfcheck_passes(capsys) -> None:
    assert selfcheck.selfcheck(quick=True)
    out = capsys.readouterr().out
    assert out.count('PASS') == len(selfcheck.CHECKS)


def test_selfcheck_reports_failure(monkeypatch) -> None:
    monkeypatch.setattr(risssk.analysis, 'quantization_factor', lambda bits: 1.)
    results = selfcheck.run_checks(quick=True)
    failed = [r.name for r in results if not r.passed]
    assert failed == ['q-bit gain factor']
    assert all(r.seconds >= 0. for r in results)
