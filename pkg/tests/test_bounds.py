import math
import numpy as np
import pytest
from spectra.geometry.domains import builtin_domain, annulus
from spectra.bounds.estimates import cr_constant, cr_lower_bound, richardson_extrapolate, ordering_breaks
from spectra.bounds.reports import bracket_report
from spectra.utils.logging import UsageError, DomainError
from spectra.utils.defaults import NEUMANN

J11 = 3.831705970207512
TWO_PI2 = 2.0*math.pi**2
HS = [0.4,0.2,0.1,0.05]


def test_cr_constant():
    assert math.isclose(cr_constant(),0.125+1.0/J11**2,rel_tol=1e-12)


def test_cr_lower_bound():
    assert math.isclose(cr_lower_bound(20.0,0.1),20.0/(1.0+cr_constant()*0.01*20.0),rel_tol=1e-14)
    assert cr_lower_bound(20.0,0.05) > cr_lower_bound(20.0,0.1)
    assert cr_lower_bound(20.0,0.1) < 20.0
    bounds = cr_lower_bound(np.array([10.0,20.0]),0.1)
    assert bounds.shape == (2,)
    with pytest.raises(UsageError):
        cr_lower_bound(-1.0,0.1)
    with pytest.raises(UsageError):
        cr_lower_bound(1.0,0.0)


def test_richardson_on_quadratic_convergence():
    limit, rate, asymptotic = richardson_extrapolate([5.0+h*h for h in HS],HS)
    assert abs(limit-5.0) < 1e-10
    assert abs(rate-2.0) < 1e-8
    assert asymptotic


def test_richardson_without_a_rate():
    limit, rate, asymptotic = richardson_extrapolate([3.0,3.0,3.0],HS[:3])
    assert limit == 3.0
    assert math.isnan(rate)
    assert not asymptotic
    with pytest.raises(UsageError):
        richardson_extrapolate([1.0,2.0],HS[:2])
    with pytest.raises(UsageError):
        richardson_extrapolate([1.0,2.0,3.0],HS)


def test_dirichlet_bracket_on_square():
    report = bracket_report(builtin_domain("unit-square"),1,levels=3)
    assert report.certified
    assert report.Contains(TWO_PI2)
    assert report.Width() > 0.0
    assert report.rows["level"].tolist() == [1,2,3]
    assert np.all(np.diff(report.rows["cr_lower"]) > 0.0)
    rows = report.rows
    assert np.all(rows["p1"] >= rows["p2"])
    assert np.all(rows["cr"] <= rows["p2"])
    assert np.all(rows["cr_lower"] <= TWO_PI2)
    assert np.all(rows["p1"] >= TWO_PI2)
    assert report.lower <= report.value <= rows["p1"].iloc[-1]
    assert len(report.Footer()) == 3
    assert [col for _, col, _, _ in report.Footer()] == ["cr","p1","p2"]


def test_neumann_bracket_is_not_certified():
    report = bracket_report(builtin_domain("unit-square"),2,levels=3,bc=NEUMANN)
    assert not report.certified
    assert math.isnan(report.lower)
    assert report.rows["cr_lower"].isna().all()
    assert not report.Contains(math.pi**2)


def test_bracket_rejections():
    with pytest.raises(UsageError):
        bracket_report(builtin_domain("unit-square"),0,levels=3)
    with pytest.raises(UsageError):
        bracket_report(builtin_domain("unit-square"),1,levels=2)
    with pytest.raises(DomainError):
        bracket_report(annulus(0.0),1,levels=3)


def test_crossing_limits_are_reported():
    finest = {"cr": 0.2790, "p2": 0.2800, "p1": 0.2810}
    assert ordering_breaks(finest,{"cr": 0.2795, "p2": 0.2797, "p1": 0.2799}) == []
    crossed = ordering_breaks(finest,{"cr": 0.2865, "p2": 0.2795, "p1": 0.2771})
    assert crossed == [("cr","p2"),("p2","p1")]


@pytest.mark.slow
def test_dirichlet_bracket_on_square_over_five_levels():
    report = bracket_report(builtin_domain("unit-square"),1,levels=5)
    rows   = report.rows
    assert np.all(rows["cr_lower"] <= TWO_PI2)
    assert np.all(rows["p1"] >= TWO_PI2)
    assert np.all(rows["cr"] <= rows["p2"])
    assert np.all(rows["p2"] <= rows["p1"])
    assert report.Contains(TWO_PI2)
    assert report.Width() <= 0.5
