import math
import numpy as np
import pytest
from spectra.geometry.domains import builtin_domain, annulus
from spectra.geometry.meshes import triangulate, refine, mesh_hierarchy
from spectra.fem.spaces import FemSpace
from spectra.fem.assembly import assemble_stiffness, assemble_mass, assemble_boundary_mass, edge_mass
from spectra.fem.solvers import EigenProblemSpec, solve_fem, solve_fem_levels, solve_on_mesh, track_eigenspaces
from spectra.bounds.estimates import cr_lower_bound, richardson_extrapolate
from spectra.utils.logging import UsageError, DomainError
from spectra.utils.defaults import DIRICHLET, NEUMANN, STEKLOV, MIXED

PI2 = math.pi**2
SQUARE_DIRICHLET = PI2*np.array([2.0,5.0,5.0,8.0,10.0,10.0])
SQUARE_NEUMANN = PI2*np.array([0.0,1.0,1.0,2.0])
DN_SQUARE_FIRST = 1.25*PI2


def square_mesh(level):
    mesh = triangulate(builtin_domain("unit-square"))
    for _ in range(level):
        mesh = refine(mesh)
    return mesh


@pytest.mark.parametrize("kind",["P1","P2","CR"])
def test_partition_of_unity(kind):
    space = FemSpace(kind,square_mesh(2))
    ones  = np.ones(space.ndofs)
    K     = assemble_stiffness(space)
    M     = assemble_mass(space)
    assert np.allclose(K @ ones,0.0,atol=1e-12)
    assert math.isclose(ones @ (M @ ones),1.0,rel_tol=1e-13)


@pytest.mark.parametrize("kind,variant",[("P1",None),("P2",None),("CR","cr-midpoint")])
def test_boundary_mass_integrates_perimeter(kind,variant):
    space = FemSpace(kind,square_mesh(2))
    ones  = np.ones(space.ndofs)
    B     = assemble_boundary_mass(space,variant=variant)
    assert math.isclose(ones @ (B @ ones),4.0,rel_tol=1e-13)


def test_cr_trace_needs_midpoint_variant():
    with pytest.raises(UsageError):
        assemble_boundary_mass(FemSpace("CR",square_mesh(1)))


def test_p2_stiffness_is_exact_on_quadratics():
    space = FemSpace("P2",square_mesh(1))
    x     = space.DofCoordinates()
    u     = x[:,0]**2
    K     = assemble_stiffness(space)
    # integral of |grad x^2|^2 over the unit square
    assert math.isclose(u @ (K @ u),4.0/3.0,rel_tol=1e-12)


def test_dirichlet_p2_square():
    spectrum = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(DIRICHLET,6,kind="P2",level=4))
    assert np.max(np.abs(spectrum.eigenvalues-SQUARE_DIRICHLET)/SQUARE_DIRICHLET) < 1e-3
    assert spectrum.method == "fem-p2"
    assert not spectrum.zero_mode
    assert spectrum.residuals.max() < 1e-9


def test_conforming_values_decrease_under_refinement():
    spec    = EigenProblemSpec(DIRICHLET,1,kind="P1")
    spectra = solve_fem_levels(builtin_domain("unit-square"),spec,4)
    values  = np.array([s.eigenvalues for s in spectra])
    assert np.all(values[-1] >= SQUARE_DIRICHLET[0] - 1e-10)
    assert np.all(np.diff(values,axis=0) <= 1e-10)
    assert abs(values[-1][0]/SQUARE_DIRICHLET[0] - 1.0) < 3e-2


def test_cr_lower_bound_on_square():
    spectrum = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(DIRICHLET,1,kind="CR",level=4))
    assert abs(spectrum.eigenvalues[0]/SQUARE_DIRICHLET[0] - 1.0) < 5e-2
    assert cr_lower_bound(spectrum.eigenvalues[0],spectrum.param) <= SQUARE_DIRICHLET[0]


def test_neumann_zero_mode():
    spectrum = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(NEUMANN,4,kind="P2",level=3))
    assert spectrum.zero_mode
    assert abs(spectrum.eigenvalues[0]) < 1e-8
    assert np.allclose(spectrum.eigenvalues[1:],SQUARE_NEUMANN[1:],rtol=1e-3)


def test_mixed_markers():
    spectrum = solve_fem(builtin_domain("dn-square"),EigenProblemSpec(MIXED,1,kind="P2",level=3))
    assert abs(spectrum.eigenvalues[0]/DN_SQUARE_FIRST - 1.0) < 1e-3
    pure = solve_fem(builtin_domain("dn-square"),EigenProblemSpec(DIRICHLET,1,kind="P2",level=3))
    assert abs(pure.eigenvalues[0]/SQUARE_DIRICHLET[0] - 1.0) < 1e-3


def extrapolated_p2(name,bc,count,levels):
    domain  = builtin_domain(name)
    meshes  = mesh_hierarchy(domain,levels)[1:]
    spectra = solve_fem_levels(domain,EigenProblemSpec(bc,count,kind="P2"),levels,meshes=meshes)
    hs      = [s.param for s in spectra]
    return np.array([richardson_extrapolate([s.eigenvalues[i] for s in spectra],hs)[0] for i in range(count)])


@pytest.mark.slow
def test_dn_pair_is_isospectral():
    square   = extrapolated_p2("dn-square",MIXED,6,5)
    triangle = extrapolated_p2("dn-triangle",MIXED,6,5)
    assert np.max(np.abs(square-triangle)/square) <= 1e-3
    assert abs(square[0]/DN_SQUARE_FIRST - 1.0) <= 1e-4


def test_steklov_square():
    p2 = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(STEKLOV,4,kind="P2",level=3))
    assert p2.zero_mode
    assert np.all(p2.eigenvalues[1:] > 0.0)
    cr = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(STEKLOV,4,kind="CR",level=3,variant="cr-midpoint"))
    assert cr.variant == "cr-midpoint"
    assert np.allclose(cr.eigenvalues[1:],p2.eigenvalues[1:],rtol=5e-2)
    with pytest.raises(UsageError):
        solve_fem(builtin_domain("unit-square"),EigenProblemSpec(STEKLOV,4,kind="CR",level=2))


def test_weighted_mass_stays_within_weight_bounds():
    # 4/9 <= 4/(1+r^2)^2 <= 4 on the unit square
    unit    = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(DIRICHLET,1,kind="P2",level=2))
    genus2  = solve_fem(builtin_domain("unit-square"),EigenProblemSpec(DIRICHLET,1,kind="P2",level=2,weight="genus2"))
    assert unit.eigenvalues[0]/4.0 <= genus2.eigenvalues[0] <= 2.25*unit.eigenvalues[0]


def test_rejections():
    with pytest.raises(DomainError):
        solve_fem(annulus(0.0),EigenProblemSpec(DIRICHLET,1))
    with pytest.raises(UsageError):
        solve_on_mesh(builtin_domain("unit-square"),square_mesh(0),EigenProblemSpec(DIRICHLET,1))
    with pytest.raises(UsageError):
        EigenProblemSpec("robin",1)
    with pytest.raises(UsageError):
        EigenProblemSpec(DIRICHLET,0)


def test_first_eigenspace_converges():
    gaps = track_eigenspaces(builtin_domain("unit-square"),EigenProblemSpec(DIRICHLET,1,kind="P1"),3)
    assert len(gaps) == 2
    assert all(0.0 <= g <= 1.0 for g in gaps)
    assert gaps[1] < gaps[0]


def test_edge_mass_matrices():
    assert np.allclose(30.0*edge_mass("P2"),[[4.0,2.0,-1.0],[2.0,16.0,2.0],[-1.0,2.0,4.0]],atol=1e-13)
    assert np.allclose(6.0*edge_mass("P1"),[[2.0,1.0],[1.0,2.0]],atol=1e-14)


def test_dirichlet_spectrum_scales_with_inverse_square():
    spec   = EigenProblemSpec(DIRICHLET,4,kind="P2",level=2)
    plain  = solve_fem(builtin_domain("gww-a"),spec)
    scaled = solve_fem(builtin_domain("gww-a").Scaled(2.0),spec)
    assert np.allclose(scaled.eigenvalues,plain.eigenvalues/4.0,rtol=1e-9)


def test_steklov_spectrum_scales_with_inverse_size():
    spec   = EigenProblemSpec(STEKLOV,4,kind="P2",level=2)
    plain  = solve_fem(builtin_domain("unit-square"),spec)
    scaled = solve_fem(builtin_domain("unit-square").Scaled(3.0),spec)
    assert np.allclose(scaled.eigenvalues[1:],plain.eigenvalues[1:]/3.0,rtol=1e-9)
    assert abs(scaled.eigenvalues[0]) < 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("name",["gww-a","gww-b"])
def test_steklov_element_ordering_on_the_drums(name):
    domain = builtin_domain(name)
    mesh   = mesh_hierarchy(domain,5)[-1]
    values = dict()
    for kind, variant in (("P1",None),("P2",None),("CR","cr-midpoint")):
        values[kind] = solve_on_mesh(domain,mesh,EigenProblemSpec(STEKLOV,5,kind=kind,level=mesh.level,variant=variant)).eigenvalues[1:]
    assert np.all(values["CR"] <= values["P2"])
    assert np.all(values["P2"] <= values["P1"])
