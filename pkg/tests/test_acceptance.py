"""End-to-end verification gate.

Each test runs one numbered checker from :mod:`cascade_thermo.acceptance`
and reports its one-line verdict.  The checkers bundle the quantitative
claims this package is built around — closed-form flux laws, heat-integral
bookkeeping, correlation-measure anchors, positivity along trajectories —
at fixed tolerances, so a regression anywhere in the numerics surfaces
here even when the unit tests still pass.

Criterion 8 is expected to fail: its first clause asserts that the singlet
state is frozen by a zero-temperature cascade, but under this generator
the singlet demonstrably decays (see test_qubits.test_singlet_cascade_solution
for the closed-form leak).  The checker is kept honest rather than
weakened; the second clause of the criterion (the coherence decay law)
does hold and is reported in the details.
"""

import pytest

from cascade_thermo.acceptance import CRITERIA


def _check(number):
    result = CRITERIA[number]()
    print(result.line)
    assert result.passed, result.line


def test_criterion_01_closed_flux_laws():
    _check(1)


def test_criterion_02_qubit_closed_flux_laws():
    _check(2)


def test_criterion_03_fixed_points():
    _check(3)


def test_criterion_04_heat_conservation():
    _check(4)


def test_criterion_05_flux_stationary_points():
    _check(5)


def test_criterion_06_thermalization_times():
    _check(6)


def test_criterion_07_correlation_measures():
    _check(7)


def test_criterion_08_dark_state():
    _check(8)


def test_criterion_09_discord_flux_ratio():
    _check(9)


def test_criterion_10_physicality():
    _check(10)
