"""Acceptance criteria, full size. One PASS/FAIL line per criterion is printed in the summary."""
import pytest

from mincusp import acceptance as A


def _report(results, log):
    for r in results:
        print(r.line())
        log.append(r.line())
    failed = [r.line() for r in results if not r.ok]
    assert not failed, "\n".join(failed)


@pytest.mark.slow
def test_criterion_1_census_counts(criterion_log):
    _report(A.census_counts(quick=False, seed=0), criterion_log)


def test_criterion_2_isometry_groups(criterion_log):
    _report(A.isometry_groups(quick=False), criterion_log)


def test_criterion_3_dehn_filling(criterion_log):
    _report(A.dehn_filling(quick=False), criterion_log)


def test_criterion_4_volumes(criterion_log):
    _report(A.volumes(quick=False), criterion_log)


def test_criterion_5_arithmetic(criterion_log):
    _report(A.arithmetic(quick=False), criterion_log)


def test_criterion_6_structure(criterion_log):
    _report(A.structure(quick=False), criterion_log)
