"""
ギャップ下界と臨界点認証のテスト
"""

import dataclasses

import numpy as np
import pytest

from src.errors import CertificationError, FamilyError
from src.geometry.so3 import geodesicAngle, isRotation, logAxisAngle
from src.potential.trace import TraceShape
from src.synergy.bounds import boundFourAxes, boundHexagon, closedFormBound, minFCheck, xiTerms
from src.synergy.critical import certify, criticalPointAt, latticeDirections, solveCriticalPoints
from src.synergy.family import SynergisticFamily, refinedGap, rhoV


def test_xi_terms_small_gain():
    xi1, xi21, xi22 = xiTerms(1e-4, 0.75)
    assert xi1 == pytest.approx(1e-4, rel=1e-6)
    assert xi21 == pytest.approx(1e-4, rel=1e-6)
    assert xi22 == pytest.approx(0.75e-4, rel=1e-6)


def test_item2_closed_form(item2Family):
    assert boundFourAxes(0.465, 0.75, 0.8) == pytest.approx(0.0712, abs=5e-4)
    assert closedFormBound(item2Family) == pytest.approx(0.0712, abs=5e-4)


def test_item3_closed_form(item3Family):
    assert boundHexagon(0.465, 0.75, 0.8) == pytest.approx(0.0712, abs=5e-4)
    assert closedFormBound(item3Family) == pytest.approx(boundHexagon(0.465, 0.75, 0.8))


def test_closed_form_increases_with_gain():
    values = [boundFourAxes(k, 0.75, 0.8) for k in np.arange(0.1, 0.51, 0.05)]
    assert np.all(np.diff(values) > 0.0)


@pytest.mark.parametrize("xi", [0.5, 0.6, 0.75, 0.9, 1.0])
def test_min_f(xi):
    assert minFCheck(xi) == pytest.approx(xi - 0.25, abs=1e-6)


def test_min_f_range():
    with pytest.raises(FamilyError):
        minFCheck(0.4)


def test_lattice_directions():
    lattice = latticeDirections()
    assert lattice.shape == (26, 3)
    assert np.allclose(np.linalg.norm(lattice, axis=1), 1.0)


# ============================================================
# 臨界点
# ============================================================

def test_critical_point_oracle(item2Family, item3Family):
    for fam in (item2Family, item3Family):
        for q in fam.modes():
            for record in solveCriticalPoints(fam, q, branchGrid=90):
                assert isRotation(record.Y)
                assert record.rhoNorm < 1e-8
                assert 0.0 < record.thetaAtY < 0.5 * np.pi
                assert geodesicAngle(record.Y) <= np.pi


def test_critical_point_of_first_mode(item2Family):
    record = criticalPointAt(item2Family, 0, [0.0, 0.0, 1.0])
    assert np.linalg.norm(rhoV(item2Family, record.Y, 0)) < 1e-8
    assert record.refinedGap == pytest.approx(refinedGap(item2Family, record.Y, 0), abs=1e-12)
    assert record.refinedGap > item2Family.deltaHyst[0]
    aa = logAxisAngle(record.Y)
    assert aa.angle == pytest.approx(np.pi, abs=1e-6)
    caption = np.array([0.37, 0.0, 0.93]) / np.linalg.norm([0.37, 0.0, 0.93])
    assert abs(aa.axis @ caption) > 0.999


def test_critical_point_requires_eigenvector(item2Family):
    with pytest.raises(FamilyError):
        criticalPointAt(item2Family, 0, [0.6, 0.8, 0.0])


# ============================================================
# 認証
# ============================================================

def test_certify_item2_tight(item2Family):
    report = certify(item2Family)
    assert report.passed
    assert report.minRefinedGap == pytest.approx(report.closedFormBound, rel=0.01)
    assert report.maxRhoNorm < 1e-8
    assert report.maxThetaAtY < 0.5 * np.pi


def test_certify_item3_above_closed_form(item3Family):
    report = certify(item3Family)
    assert report.passed
    assert report.minRefinedGap >= report.closedFormBound - 1e-9


def test_certify_item1_tight():
    fam = SynergisticFamily.build(TraceShape.fromMatrix(0.4 * np.eye(3)), 0.3)
    report = certify(fam)
    assert report.passed
    assert report.minRefinedGap == pytest.approx(report.closedFormBound, rel=0.01)


@pytest.mark.parametrize("diagonal", [[0.2, 0.2, 0.6], [0.1, 0.3, 0.6]])
def test_certify_numeric_classes(diagonal):
    fam = SynergisticFamily.build(TraceShape.fromMatrix(np.diag(diagonal)), 0.3, branchGrid=180)
    report = certify(fam, branchGrid=180)
    assert report.passed
    assert report.closedFormBound is None
    assert report.minRefinedGap > 0.0
    assert fam.deltaBar[0] == pytest.approx(0.99 * report.minRefinedGap)


def test_certify_strict_failure(item2Family):
    inflated = dataclasses.replace(item2Family, deltaBar=(1.0,) * 4, deltaHyst=(0.5,) * 4)
    report = certify(inflated, branchGrid=90)
    assert not report.passed
    with pytest.raises(CertificationError) as excinfo:
        certify(inflated, branchGrid=90, strict=True)
    assert excinfo.value.report is not None
    assert excinfo.value.exitCode == 2


def test_report_to_dict(item2Family):
    data = certify(item2Family, branchGrid=90).toDict()
    assert data["passed"] is True
    assert data["class"] == "TWO_LARGE_EQUAL_POS_MIN"
    assert len(data["minRefinedGapPerQ"]) == 4
