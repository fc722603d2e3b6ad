import pytest

import moduli
import suites
from invariants import BlockLabel


def test_kernel_dimensions_check_passes():
    check = suites.check_kernel_dimensions(8)
    assert check.passed, check.details


def test_kernel_dimensions_check_catches_wrong_window(monkeypatch):
    original = moduli.kernel_dim

    def off_by_one(label, domain):
        value = original(label, domain)
        return value + 1 if label == BlockLabel(6, 4) and domain == "punctured" else value

    monkeypatch.setattr(moduli, "kernel_dim", off_by_one)
    check = suites.check_kernel_dimensions(8)
    assert not check.passed
    assert "(6,4)" in check.details


@pytest.mark.parametrize(
    "label, expected",
    [(BlockLabel(0, 8), (18, 9)), (BlockLabel(-8, 4), (5, 0)), (BlockLabel(10, 4), (0, 0)), (BlockLabel(1, 6), (0, 0))],
    ids=str,
)
def test_kernel_window(label, expected):
    assert suites._kernel_window(label) == expected


@pytest.mark.slow
def test_integration_check_covers_reference_blocks():
    check = suites.check_integration_constraint(4)
    assert check.passed, check.details
    assert "dirac residual" in check.details


@pytest.mark.slow
def test_closed_form_residual_check():
    check = suites.check_closed_form_residual(8)
    assert check.passed, check.error
    assert check.error <= 1e-12
