import math
import numpy as np
import pytest
from spectra.reference.analytic import disk_spectra, rectangle_spectra, concentric_annulus_steklov
from spectra.reference.analytic import annulus_angular_roots, annulus_radial_root, union_spectrum
from spectra.reference.analytic import weyl_eigenvalue, faber_krahn_constant, concentric_to_disk_continuity
from spectra.utils.logging import UsageError

J01 = 2.404825557695773
J11 = 3.831705970207512
JP11 = 1.841183781340659
PI2 = math.pi**2


def test_disk_dirichlet_and_neumann():
    dirichlet = disk_spectra("dirichlet",1.0,3)
    assert np.allclose(dirichlet.eigenvalues,[J01**2,J11**2,J11**2],rtol=1e-12)
    assert dirichlet.multiplicities.tolist() == [1,2]
    neumann = disk_spectra("neumann",2.0,3)
    assert np.allclose(neumann.eigenvalues,[0.0,(JP11/2.0)**2,(JP11/2.0)**2],rtol=1e-12)


def test_disk_steklov():
    steklov = disk_spectra("steklov",2.0,5)
    assert np.allclose(steklov.eigenvalues,[0.0,0.5,0.5,1.0,1.0])
    assert steklov.MultiplicityOf(2) == 2


def test_rectangle_dirichlet():
    square = rectangle_spectra("dirichlet",1.0,1.0,count=6)
    assert np.allclose(square.eigenvalues,PI2*np.array([2,5,5,8,10,10]))
    assert square.multiplicities.tolist() == [1,2,1,2]
    strip = rectangle_spectra("dirichlet",2.0,1.0,count=2)
    assert np.allclose(strip.eigenvalues,PI2*np.array([1.25,2.0]))


def test_rectangle_neumann_and_mixed():
    neumann = rectangle_spectra("neumann",1.0,1.0,count=4)
    assert np.allclose(neumann.eigenvalues,PI2*np.array([0,1,1,2]))
    mixed = rectangle_spectra("mixed",1.0,1.0,mask=["top"],count=3)
    assert np.allclose(mixed.eigenvalues,PI2*np.array([1.25,3.25,4.25]))
    with pytest.raises(UsageError):
        rectangle_spectra("mixed",1.0,1.0,mask=["north"])
    with pytest.raises(UsageError):
        rectangle_spectra("dirichlet",-1.0,1.0)


def test_concentric_annulus_roots_solve_the_quadratic():
    ratio = 0.1
    for n in (1,2,5):
        t = ratio**(2*n)
        for s in annulus_angular_roots(n,ratio):
            residual = ratio*(1-t)*s*s - n*(1+ratio)*(1+t)*s + n*n*(1-t)
            assert abs(residual) < 1e-10*max(1.0,s*s)
    assert math.isclose(annulus_radial_root(0.1),11.0/math.log(10.0),rel_tol=1e-14)


def test_concentric_annulus_spectrum():
    spectrum = concentric_annulus_steklov(0.1,1.0,6)
    values   = spectrum.eigenvalues
    assert values[0] == 0.0
    assert np.all(np.diff(values) >= 0.0)
    low, _ = annulus_angular_roots(1,0.1)
    assert np.allclose(values[1:3],low)
    scaled = concentric_annulus_steklov(0.2,2.0,6).eigenvalues
    assert np.allclose(scaled,values/2.0)
    with pytest.raises(UsageError):
        concentric_annulus_steklov(1.0,0.5,3)


def test_union_spectrum_adds_multiplicities():
    union = union_spectrum(disk_spectra("steklov",1.0,5),disk_spectra("steklov",0.5,3))
    assert union.distinct.tolist()[:3] == [0.0,1.0,2.0]
    assert union.multiplicities.tolist()[:3] == [2,2,4]


def test_weyl_and_faber_krahn():
    assert math.isclose(faber_krahn_constant(),math.pi*J01**2,rel_tol=1e-12)
    # area l/(4 pi) - perimeter sqrt(l)/(4 pi) = k
    l = weyl_eigenvalue(1.0,4.0,10)
    assert math.isclose(l/(4*math.pi) - 4.0*math.sqrt(l)/(4*math.pi),10.0,rel_tol=1e-12)
    assert weyl_eigenvalue(1.0,4.0,10,"neumann") < l


def test_concentric_spectrum_approaches_disk():
    gaps = concentric_to_disk_continuity(count=5,ratios=(1e-2,1e-4))
    assert gaps[1] < gaps[0]
