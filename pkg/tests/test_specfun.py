import math
import numpy as np
import pytest
from spectra.specfun.bessel import BesselEval, bessel_j, bessel_jp, bessel_j_zero, bessel_jp_zero, mcmahon
from spectra.utils.logging import NumericalQualityError

J01 = 2.404825557695773
J11 = 3.831705970207512
J02 = 5.520078110286311
JP11 = 1.841183781340659


def test_first_zeros():
    assert abs(bessel_j_zero(0.0,1) - J01) < 1e-12
    assert abs(bessel_j_zero(1.0,1) - J11) < 1e-12
    assert abs(bessel_j_zero(0.0,2) - J02) < 1e-12


def test_derivative_zeros():
    assert abs(bessel_jp_zero(1.0,1) - JP11) < 1e-12
    # J_0' = -J_1, so its zeros are those of J_1
    assert abs(bessel_jp_zero(0.0,1) - J11) < 1e-12


def test_half_integer_order_zeros():
    # J_{1/2}(x) is proportional to sin(x)/sqrt(x)
    for k in range(1,6):
        assert abs(bessel_j_zero(0.5,k) - k*math.pi) < 1e-11


def test_zeros_vanish_and_increase():
    for nu in (0.0,2.0/3.0,7.5):
        zeros = [bessel_j_zero(nu,k) for k in range(1,8)]
        assert np.all(np.diff(zeros) > 0.0)
        assert np.max(np.abs(bessel_j(nu,np.array(zeros)))) < 1e-12


def test_mcmahon_is_close_for_large_index():
    assert abs(mcmahon(0.0,30) - bessel_j_zero(0.0,30)) < 1e-6


def test_values_and_derivative():
    assert BesselEval(0.0,0.0).value == 1.0
    assert math.isclose(bessel_jp(0.0,2.0),-bessel_j(1.0,2.0),rel_tol=1e-14)
    assert bessel_j(np.arange(3)[:,None],np.linspace(0,1,4)[None,:]).shape == (3,4)


def test_accuracy_domain_is_enforced():
    with pytest.raises(NumericalQualityError):
        bessel_j(-1.0,1.0)
    with pytest.raises(NumericalQualityError):
        bessel_j(250.0,1.0)
    with pytest.raises(NumericalQualityError):
        bessel_j(1.0,2.0e4)
    with pytest.raises(NumericalQualityError):
        bessel_j_zero(0.0,0)
    with pytest.raises(NumericalQualityError):
        bessel_j_zero(0.0,101)


def test_three_term_recurrence():
    x = np.linspace(0.5,40.0,60)
    for nu in (1.0,2.5,10.0,60.0):
        lhs = bessel_j(nu-1.0,x) + bessel_j(nu+1.0,x)
        rhs = 2.0*nu/x*bessel_j(nu,x)
        assert np.max(np.abs(lhs-rhs)) < 1e-12


def test_derivative_matches_central_difference():
    x, h = np.linspace(0.5,30.0,40), 1e-5
    for nu in (0.0,2.0/3.0,4.0,15.5):
        difference = (bessel_j(nu,x+h) - bessel_j(nu,x-h))/(2.0*h)
        assert np.max(np.abs(bessel_jp(nu,x) - difference)) < 1e-8
