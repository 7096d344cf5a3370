import math
import numpy as np
import pytest
from spectra.geometry.domains import builtin_domain, point_in_domain
from spectra.mps.bases import CornerBasis, CentredBasis, corner_bases, Collocation
from spectra.mps.solvers import subspace_sines, sigma_min_sweep, refine_minimum, l2_norm
from spectra.mps.solvers import enclosure_from_epsilon, fhm_enclosure, locate_eigenvalues
from spectra.specfun.bessel import bessel_j
from spectra.utils.logging import UsageError, DomainError, NumericalQualityError

TWO_PI2 = 2.0*math.pi**2
J01 = 2.404825557695773


class ScaledBasis():
    """Corner basis with rescaled columns."""
    def __init__(self,basis,factors):
        self.basis   = basis
        self.factors = np.asarray(factors)

    def __len__(self):
        return len(self.basis)

    def Evaluate(self,lam,points):
        return self.basis.Evaluate(lam,points)*self.factors[None,:]


def test_corner_functions_vanish_on_adjacent_edges():
    domain = builtin_domain("gww-a")
    for basis in corner_bases(domain,"all",size=6):
        before, after = basis.edges
        v = domain.vertices
        s = np.linspace(0.05,1.0,9)[:,None]
        leaving  = v[basis.corner] + s*(v[(basis.corner+1)%len(v)]-v[basis.corner])
        arriving = v[basis.corner] + s*(v[before]-v[basis.corner])
        assert np.max(np.abs(basis.Evaluate(20.0,leaving))) < 1e-12
        assert np.max(np.abs(basis.Evaluate(20.0,arriving))) < 1e-12


def test_corner_selection():
    gww = builtin_domain("gww-a")
    assert len(corner_bases(gww,"all")) == 8
    singular = corner_bases(gww,"singular")
    assert len(singular) > 0 and all(b.singular for b in singular)
    single = corner_bases(gww,"single")[0]
    assert math.isclose(single.angle,1.5*math.pi,rel_tol=1e-12)
    square = corner_bases(builtin_domain("unit-square"),"singular",size=4)
    assert len(square) == 1 and square[0].alpha == pytest.approx(2.0)
    with pytest.raises(UsageError):
        corner_bases(gww,"some")
    with pytest.raises(DomainError):
        CornerBasis(builtin_domain("unit-disk"),0)


def test_collocation_points():
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single",size=10)
    colloc = Collocation(domain,bases,seed=3)
    assert colloc.interior.shape[0] == colloc.nb
    assert np.all(point_in_domain(domain,colloc.interior))
    # the lone corner at the origin already vanishes on y = 0 and x = 0
    assert np.all(np.maximum(colloc.boundary[:,0],colloc.boundary[:,1]) == 1.0)
    again = Collocation(domain,bases,seed=3)
    assert np.array_equal(colloc.interior,again.interior)


def test_square_minimum():
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single",size=10)
    lam_h, coeffs = refine_minimum(domain,bases,(19.0,21.0))
    assert abs(lam_h-TWO_PI2) < 1e-6
    assert abs(l2_norm(domain,bases,lam_h,coeffs)-1.0) < 1e-8
    enclosure = fhm_enclosure(domain,lam_h,coeffs,bases)
    assert enclosure.Contains(TWO_PI2)
    assert enclosure.epsilon < 1e-3
    assert enclosure.caveat


def test_bracket_without_minimum():
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single",size=10)
    with pytest.raises(UsageError):
        refine_minimum(domain,bases,(21.0,24.0))
    with pytest.raises(UsageError):
        refine_minimum(domain,bases,(24.0,21.0))


def test_sweep_rejections():
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single",size=5)
    with pytest.raises(UsageError):
        sigma_min_sweep(domain,bases,[20.0,19.0])
    with pytest.raises(UsageError):
        sigma_min_sweep(domain,bases,[0.0,1.0])
    with pytest.raises(DomainError):
        sigma_min_sweep(builtin_domain("unit-disk"),bases,[1.0])


def test_column_scaling_does_not_change_the_sines():
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single",size=5)
    colloc = Collocation(domain,bases)
    scaled = [ScaledBasis(bases[0],[1e3,1.0,1e-3,10.0,0.1])]
    s      = subspace_sines(bases,colloc,19.0)
    t      = subspace_sines(scaled,colloc,19.0)
    assert np.allclose(s,t,rtol=1e-8,atol=1e-12)
    assert np.all(np.diff(s) >= 0.0)


def test_locate_eigenvalues_on_square():
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single",size=10)
    sweep, found = locate_eigenvalues(domain,bases,18.0,22.0,0.25)
    assert len(sweep) == 17
    assert len(found) == 1
    lam_h, coeffs, enclosure = found[0]
    assert abs(lam_h-TWO_PI2) < 1e-6
    assert enclosure.lower <= TWO_PI2 <= enclosure.upper


def test_enclosure_radius():
    enclosure = enclosure_from_epsilon(10.0,0.1)
    assert math.isclose(enclosure.radius,10.0*(0.1*math.sqrt(2.0)+0.01)/0.99,rel_tol=1e-14)
    assert enclosure.Row()["caveat"] == 1
    exact = enclosure_from_epsilon(10.0,0.0)
    assert exact.lower == exact.upper == 10.0
    with pytest.raises(NumericalQualityError):
        enclosure_from_epsilon(10.0,1.0)


def test_disk_eigenfunction_encloses_exactly():
    # u = J_0(j_{0,1} r)/(sqrt(pi) |J_1(j_{0,1})|) has unit L2 norm on the unit disk
    coeff     = 1.0/(math.sqrt(math.pi)*abs(bessel_j(1.0,J01)))
    enclosure = fhm_enclosure(builtin_domain("unit-disk"),J01**2,[coeff],[CentredBasis((0.0,0.0),0)])
    assert enclosure.Contains(J01**2)
    assert enclosure.radius < 1e-12


def test_centred_basis_columns():
    basis = CentredBasis((0.0,0.0),2)
    assert len(basis) == 5
    values = basis.Evaluate(4.0,np.array([[0.0,0.0],[0.5,0.0]]))
    assert values.shape == (2,5)
    assert values[0,0] == 1.0
    assert np.allclose(values[0,1:],0.0)


GWW_FIRST = 20.30355


@pytest.mark.slow
def test_square_enclosures_hold_the_first_ten_eigenvalues():
    # 2, 5, 5, 8, 10, 10, 13, 13, 17, 17 times pi^2; a double eigenvalue is one minimum
    domain = builtin_domain("unit-square")
    bases  = corner_bases(domain,"single")
    colloc = Collocation(domain,bases)
    for m in (2,5,8,10,13,17):
        exact = m*math.pi**2
        lam_h, coeffs = refine_minimum(domain,bases,(exact-2.0,exact+2.0),colloc=colloc)
        assert fhm_enclosure(domain,lam_h,coeffs,bases).Contains(exact)


@pytest.mark.slow
def test_reentrant_corners_enclose_the_first_drum_eigenvalue():
    domain = builtin_domain("gww-a")
    singular = corner_bases(domain,"singular")
    lam_h, coeffs = refine_minimum(domain,singular,(20.0,20.6))
    sharp = fhm_enclosure(domain,lam_h,coeffs,singular)
    assert sharp.Contains(GWW_FIRST)
    assert sharp.upper - sharp.lower < 1e-3
    single = corner_bases(domain,"single")
    lam_h, coeffs = refine_minimum(domain,single,(19.3,21.3))
    loose = fhm_enclosure(domain,lam_h,coeffs,single)
    assert loose.upper - loose.lower > 1.0
