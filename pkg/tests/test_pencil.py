import numpy as np
import scipy.sparse as sp
import pytest
from spectra.pencil.solvers import Pencil, Spectrum, solve_symdef, solve_general, subspace_iteration
from spectra.pencil.solvers import subspace_gap, cluster_eigenvalues
from spectra.utils.logging import NumericalQualityError, UsageError


def test_symdef_diagonal_pencil():
    A = np.diag([1.0,2.0,3.0])
    B = np.diag([2.0,1.0,1.0])
    spectrum = solve_symdef(Pencil(A,B,definiteness="positive-definite"))
    assert np.allclose(spectrum.eigenvalues,[0.5,2.0,3.0],atol=1e-14)
    V = spectrum.vectors
    assert np.allclose(V.T @ B @ V,np.eye(3),atol=1e-13)
    assert spectrum.residuals.max() < 1e-14


def test_symdef_random_pencil_residuals():
    rng = np.random.default_rng(7)
    X   = rng.standard_normal((30,30))
    A   = X + X.T
    Y   = rng.standard_normal((30,30))
    B   = Y @ Y.T + 30.0*np.eye(30)
    spectrum = solve_symdef(Pencil(A,B))
    assert np.all(np.diff(spectrum.eigenvalues) >= 0.0)
    assert spectrum.residuals.max() < 1e-12


def test_symdef_rejections():
    with pytest.raises(NumericalQualityError):
        solve_symdef(Pencil(np.eye(2),np.diag([1.0,-1.0])))
    with pytest.raises(UsageError):
        solve_symdef(Pencil(np.array([[1.0,2.0],[0.0,1.0]]),np.eye(2)))
    with pytest.raises(UsageError):
        Pencil(np.eye(2),np.eye(3))


def test_general_pencil_real_and_complex():
    real = solve_general(Pencil(np.array([[3.0,1.0],[0.0,2.0]]),np.eye(2)))
    assert np.allclose(real.eigenvalues,[2.0,3.0])
    assert not np.iscomplexobj(real.eigenvalues)
    rotation = solve_general(Pencil(np.array([[0.0,1.0],[-1.0,0.0]]),np.eye(2)))
    assert np.iscomplexobj(rotation.eigenvalues)
    assert np.allclose(np.abs(rotation.eigenvalues),1.0)


def test_general_pencil_condition_gate():
    with pytest.raises(NumericalQualityError):
        solve_general(Pencil(np.eye(2),np.diag([1.0,1e-14])))


def test_clustering():
    values = np.array([1.0,1.0+1e-9,2.0,3.0,3.0])
    assert cluster_eigenvalues(values,1e-6) == [[0,1],[2],[3,4]]
    spectrum = Spectrum(values)
    assert spectrum.multiplicities.tolist() == [2,2,1,2,2]


def test_zero_mode_flag():
    spectrum = Spectrum(np.array([1e-12,1.0,4.0]))
    assert spectrum.FlagZeroMode()
    assert np.allclose(spectrum.Nonzero(),[1.0,4.0])
    assert not Spectrum(np.array([0.5,1.0])).FlagZeroMode()


def test_subspace_iteration_dominant_values():
    B = sp.diags(np.arange(1.0,21.0)).tocsc()
    G = sp.identity(20,format="csc")
    theta, vectors = subspace_iteration(B,G,3)
    assert np.allclose(theta,[20.0,19.0,18.0],rtol=1e-9)
    assert np.allclose(vectors.T @ vectors,np.eye(3),atol=1e-8)


def test_subspace_gap():
    U = np.eye(4)[:,:2]
    V = U @ np.array([[2.0,1.0],[1.0,3.0]])
    assert subspace_gap(U,V) < 1e-14
    assert abs(subspace_gap(U,np.eye(4)[:,2:]) - 1.0) < 1e-14
    tilt = np.array([1.0,0.0,0.0,0.0]) + 0.1*np.array([0.0,0.0,1.0,0.0])
    assert abs(subspace_gap(np.eye(4)[:,:1],tilt) - 0.1/np.sqrt(1.01)) < 1e-14


def test_subspace_gap_with_gram():
    gram = np.diag([4.0,1.0,1.0])
    U    = np.array([[1.0],[0.0],[0.0]])
    V    = np.array([[1.0],[0.0],[2.0]])
    # in the gram inner product the angle between (1,0,0) and (1,0,2) is 45 degrees
    assert abs(subspace_gap(U,V,gram=gram) - np.sqrt(0.5)) < 1e-13
    with pytest.raises(UsageError):
        subspace_gap(np.ones((3,2)),V)


def random_pencil(n,seed):
    rng = np.random.default_rng(seed)
    X   = rng.standard_normal((n,n))
    Y   = rng.standard_normal((n,n))
    return X + X.T, Y @ Y.T + n*np.eye(n), rng


def test_congruence_leaves_eigenvalues_unchanged():
    A, B, rng = random_pencil(12,11)
    P = rng.standard_normal((12,12)) + 12.0*np.eye(12)
    plain     = solve_symdef(Pencil(A,B)).eigenvalues
    congruent = solve_symdef(Pencil(P.T @ A @ P,P.T @ B @ P)).eigenvalues
    assert np.allclose(plain,congruent,rtol=1e-9,atol=1e-10)


def test_determinant_bisection_recovers_eigenvalues():
    A, B, _ = random_pencil(20,3)
    values  = solve_symdef(Pencil(A,B)).eigenvalues
    sign    = lambda mu: np.linalg.slogdet(A - mu*B)[0]
    gaps    = np.diff(values)
    for i, value in enumerate(values):
        below = gaps[i-1] if i > 0 else gaps[0]
        above = gaps[i] if i < gaps.size else gaps[-1]
        lo, hi = value - 0.5*below, value + 0.5*above
        assert sign(lo) != sign(hi)
        for _ in range(80):
            mid = 0.5*(lo + hi)
            if sign(mid) == sign(lo):
                lo = mid
            else:
                hi = mid
        assert abs(0.5*(lo + hi) - value) <= 1e-10*max(1.0,abs(value))


def test_subspace_gap_is_symmetric_and_basis_free():
    rng = np.random.default_rng(5)
    U   = rng.standard_normal((10,3))
    V   = rng.standard_normal((10,3))
    R   = rng.standard_normal((3,3)) + 3.0*np.eye(3)
    gap = subspace_gap(U,V)
    assert abs(gap - subspace_gap(V,U)) < 1e-12
    assert abs(gap - subspace_gap(U @ R,V)) < 1e-12
    assert abs(gap - subspace_gap(U,V @ R)) < 1e-12
