import time
import numpy as np
import scipy.linalg as sla
from multiprocessing.pool import ThreadPool
from scipy.optimize import minimize_scalar
from tqdm import tqdm
from spectra.geometry.meshes import triangulate, refine
from spectra.geometry.quadrature import triangle_quadrature
from spectra.mps.bases import Collocation, basis_matrix, basis_size
from spectra.utils.logging import RaiseError, RaiseWarning, PrintInfo, UsageError, DomainError, NumericalQualityError
from spectra.utils.defaults import defaults
from spectra.utils import printing


class Enclosure():
    """
    Interval [lower, upper] around lambda_h holding a true Dirichlet eigenvalue, from the
    boundary sup of the L2-normalized candidate eigenfunction.

    Attributes:
    - center:  float -> lambda_h
    - lower:   float
    - upper:   float
    - epsilon: float -> max |u_h| over the boundary samples
    - method:  str   -> "fhm"
    - caveat:  bool  -> sup from sampling and norm from quadrature, not rigorous
    """
    def __init__(self,center,epsilon,radius,method="fhm",caveat=True):
        self.center  = float(center)
        self.epsilon = float(epsilon)
        self.radius  = float(radius)
        self.lower   = self.center - self.radius
        self.upper   = self.center + self.radius
        self.method  = method
        self.caveat  = bool(caveat)

    def __repr__(self):
        return f"Enclosure([{self.lower:.12g}, {self.upper:.12g}], epsilon={self.epsilon:.3e}, method={self.method})"

    def Contains(self,value):
        return self.lower <= value <= self.upper

    def Row(self):
        return {"lambda_h": self.center, "lower": self.lower, "upper": self.upper,
                "epsilon": self.epsilon, "caveat": int(self.caveat)}


def _pivoted_factor(A,rtol):
    Q, R, piv = sla.qr(A,mode="economic",pivoting=True)
    r         = np.abs(np.diag(R))
    cutoff    = int((r > r[0]*rtol).sum()) if r.size and r[0] > 0.0 else 0
    if cutoff == 0:
        RaiseError(message="Basis matrix vanishes at every collocation point",error=NumericalQualityError)
    return Q, R, piv, cutoff

def subspace_sines(bases,colloc,lam,rtol=None,vectors=False):
    """
    Singular values (ascending) of the boundary rows of an orthonormal basis for the span of
    the basis functions on boundary and interior points. Columns below rtol in the pivoted QR
    are dropped.
    """
    rtol = defaults.mps_rtol if rtol is None else rtol
    A    = basis_matrix(bases,lam,colloc.points)
    Q, R, piv, cutoff = _pivoted_factor(A,rtol)
    nb   = colloc.nb
    if vectors:
        _, s, Vh = sla.svd(Q[:nb,:cutoff])
    else:
        s = sla.svd(Q[:nb,:cutoff],compute_uv=False)
    interior = np.sqrt(max(0.0,1.0-s[0]**2))
    if interior < np.sqrt(rtol):
        RaiseError(message=f"Interior block lost rank at lambda={lam:.10g} (smallest interior singular value {interior:.3e}); basis is ill-posed",
                   error=NumericalQualityError)
    if vectors:
        return s[::-1], (R[:cutoff,:cutoff], piv[:cutoff], Vh[::-1])
    return s[::-1]

def sigma_min_sweep(domain,bases,lambda_grid,threads=1,colloc=None,rtol=None):
    """
    Smallest subspace sine s(lambda) over a grid; minima locate eigenvalues.

    Parameters:
    - domain:      Domain         -> polygon
    - bases:       list           -> CornerBasis set
    - lambda_grid: iterable(float) -> positive, ascending
    - threads:     int            -> work-pool size
    """
    if domain.kind != "polygon":
        RaiseError(message=f"Domain {domain.name}: particular solutions need a polygon",error=DomainError)
    grid = np.asarray(list(lambda_grid),dtype=float)
    if grid.size == 0 or np.any(grid <= 0.0) or np.any(np.diff(grid) <= 0.0):
        RaiseError(message="Lambda grid must be positive and strictly ascending",error=UsageError)
    colloc = Collocation(domain,bases) if colloc is None else colloc
    job    = lambda lam: float(subspace_sines(bases,colloc,lam,rtol)[0])
    start  = time.time()
    if threads > 1:
        with ThreadPool(threads) as pool:
            smin = list(tqdm(pool.imap(job,grid),total=grid.size,desc="lambda sweep",disable=printing.quiet,leave=False))
    else:
        smin = [job(lam) for lam in tqdm(grid,desc="lambda sweep",disable=printing.quiet,leave=False)]
    PrintInfo(message=f" s(lambda) on {grid.size} points with {basis_size(bases)} functions in {time.time()-start:.3f} s")
    return list(zip(grid.tolist(),smin))

def l2_norm(domain,bases,lam,coeffs,level=None):
    """L2 norm of sum_j c_j phi_j over the polygon with the seven-point rule on a refined mesh."""
    level = defaults.mps_quadrature_level if level is None else max(3,int(level))
    mesh  = triangulate(domain)
    for _ in range(level):
        mesh = refine(mesh)
    bary, weights = triangle_quadrature()
    corners = mesh.vertices[mesh.triangles]
    points  = np.einsum("qk,tkd->tqd",bary,corners).reshape(-1,2)
    w       = np.outer(mesh.Areas(),weights).ravel()
    u       = basis_matrix(bases,lam,points) @ coeffs
    return float(np.sqrt(np.dot(w,u*u)))

def refine_minimum(domain,bases,bracket,colloc=None,points=41,xtol=1.0e-10,rtol=None):
    """
    Golden-section descent on s(lambda) inside a bracket.

    A uniform scan locates the smallest grid value, which must not sit on either end of the
    bracket. Returns lambda_h and the coefficients of the minimizing right singular vector,
    scaled to unit L2 norm on the domain.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not 0.0 < lo < hi:
        RaiseError(message=f"Bracket [{lo}, {hi}] must be positive and ordered",error=UsageError)
    colloc = Collocation(domain,bases) if colloc is None else colloc
    grid   = np.linspace(lo,hi,int(points))
    smin   = np.array([s for _, s in sigma_min_sweep(domain,bases,grid,colloc=colloc,rtol=rtol)])
    i      = int(np.argmin(smin))
    if i == 0 or i == grid.size-1:
        RaiseError(message=f"No interior minimum of s(lambda) in [{lo}, {hi}]: smallest value at lambda={grid[i]:.10g}",error=UsageError)
    fun    = lambda lam: float(subspace_sines(bases,colloc,lam,rtol)[0])
    result = minimize_scalar(fun,bracket=(grid[i-1],grid[i],grid[i+1]),method="golden",options={"xtol": xtol})
    lam_h  = float(result.x)
    s, (R, piv, Vh) = subspace_sines(bases,colloc,lam_h,rtol,vectors=True)
    coeffs = np.zeros(basis_size(bases))
    coeffs[piv] = sla.solve_triangular(R,Vh[0])
    norm   = l2_norm(domain,bases,lam_h,coeffs)
    if norm == 0.0:
        RaiseError(message=f"Candidate at lambda={lam_h:.10g} has zero L2 norm",error=NumericalQualityError)
    PrintInfo(message=f" s(lambda) minimum {s[0]:.3e} at lambda={lam_h:.12g} after {result.nfev} evaluations")
    return lam_h, coeffs/norm

def boundary_samples(domain,samples=None):
    """Dense boundary sampling: samples points per polygon edge (ends included) or per circle."""
    samples = defaults.mps_edge_samples if samples is None else int(samples)
    if domain.kind == "polygon":
        v = domain.vertices
        s = np.linspace(0.0,1.0,samples)
        return np.vstack([a[None,:] + s[:,None]*(b-a)[None,:] for a, b in zip(v,np.roll(v,-1,axis=0))])
    t = np.linspace(0.0,2.0*np.pi,samples,endpoint=False)
    return np.vstack([np.column_stack((cx+r*np.cos(t),cy+r*np.sin(t))) for cx, cy, r, _ in domain.circles])

def enclosure_from_epsilon(lam_h,epsilon):
    if epsilon >= 1.0:
        RaiseError(message=f"Boundary sup {epsilon:.3e} >= 1 at lambda={lam_h:.10g}: candidate not eigenfunction-like",error=NumericalQualityError)
    radius = lam_h*(np.sqrt(2.0)*epsilon + epsilon**2)/(1.0-epsilon**2)
    return Enclosure(lam_h,epsilon,radius)

def fhm_enclosure(domain,lam_h,coeffs,bases,samples=None):
    """
    Parameters:
    - domain:  Domain     -> polygon or circles
    - lam_h:   float      -> candidate eigenvalue
    - coeffs:  np.ndarray -> coefficients with unit L2 norm on the domain
    - bases:   list       -> basis set the coefficients refer to
    - samples: int        -> boundary samples per edge (at least 1000 by default)
    """
    points  = boundary_samples(domain,samples)
    u       = basis_matrix(bases,lam_h,points) @ np.asarray(coeffs,dtype=float)
    epsilon = float(np.max(np.abs(u)))
    enclosure = enclosure_from_epsilon(lam_h,epsilon)
    if enclosure.radius > 0.1*lam_h:
        RaiseWarning(message=f" Wide enclosure around {lam_h:.8g}: radius {enclosure.radius:.3e}")
    return enclosure

def locate_eigenvalues(domain,bases,lo,hi,step,threads=1,colloc=None):
    """
    Every interior local minimum of s(lambda) on a uniform grid over [lo, hi], refined and
    enclosed. Returns the sweep and a list of (lambda_h, coefficients, Enclosure).
    """
    if step <= 0.0:
        RaiseError(message=f"Grid step must be positive, got {step}",error=UsageError)
    colloc = Collocation(domain,bases) if colloc is None else colloc
    grid   = np.arange(lo,hi+0.5*step,step)
    sweep  = sigma_min_sweep(domain,bases,grid,threads=threads,colloc=colloc)
    smin   = np.array([s for _, s in sweep])
    found  = list()
    for i in range(1,grid.size-1):
        if smin[i] < smin[i-1] and smin[i] <= smin[i+1]:
            lam_h, coeffs = refine_minimum(domain,bases,(grid[i-1],grid[i+1]),colloc=colloc,points=5)
            found.append((lam_h,coeffs,fhm_enclosure(domain,lam_h,coeffs,bases)))
    if not found:
        RaiseWarning(message=f" No minimum of s(lambda) found in [{lo}, {hi}]")
    return sweep, found
