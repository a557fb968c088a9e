"""Acceptance gate: every shipped criterion must pass at its pinned tolerance.

The suite is executed once; each criterion then gets its own test so the
report shows one pass/fail line per criterion, with the measured value and
tolerance printed alongside.
"""

import pytest

from greenkit.validation import CRITERIA, run_acceptance

IDS = [
    "c01-initial-condition",
    "c02-support-law",
    "c03-semigroup-composition",
    "c04-closed-form-equivalence",
    "c05-second-order-initial-conditions",
    "c06-em-causality",
    "c07-frequency-domain-equivalence",
    "c08-pole-half-plane-audit",
    "c09-partial-fraction-identity",
    "c10-distribution-lab",
    "c11-convention-flag",
]


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_acceptance()}


def test_suite_covers_every_criterion(results):
    assert sorted(results) == list(range(1, len(CRITERIA) + 1))


@pytest.mark.parametrize("number", range(1, 12), ids=IDS)
def test_criterion(results, number):
    r = results[number]
    print(r.line())
    assert r.passed, r.line()


def test_negative_control_eta_sign_flip():
    flipped = run_acceptance(only="8", eta_sign_flip=True)
    assert len(flipped) == 1
    print(flipped[0].line())
    assert not flipped[0].passed


def test_only_filter_by_tag():
    kernel_only = run_acceptance(only="kernel")
    assert {r.number for r in kernel_only} == {1, 2, 3, 4, 11}


def test_only_filter_rejects_unknown():
    with pytest.raises(ValueError):
        run_acceptance(only="nonexistent-tag")
