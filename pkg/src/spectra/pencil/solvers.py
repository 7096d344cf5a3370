import re
import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.sparse.linalg import splu
from spectra.utils.logging import RaiseError, PrintInfo, NumericalQualityError, UsageError
from spectra.utils.defaults import defaults


class Pencil():
    """
    Matrix pair (A, B) of the generalized problem A v = lambda B v.

    Attributes:
    - A, B:         np.ndarray or scipy.sparse matrix -> square, same dimension
    - symmetric_a:  bool -> max |A - A^T| <= tol * ||A||
    - symmetric_b:  bool -> same test on B
    - definiteness: str  -> "positive-definite", "positive-semidefinite" or "none" (declared by the caller)
    """
    def __init__(self,A,B,definiteness="none"):
        if A.shape != B.shape or A.shape[0] != A.shape[1]:
            RaiseError(message=f"Pencil matrices must be square and of equal size, got {A.shape} and {B.shape}",error=UsageError)
        self.A            = A
        self.B            = B
        self.definiteness = definiteness
        self.symmetric_a  = is_symmetric(A)
        self.symmetric_b  = is_symmetric(B)

    @property
    def size(self):
        return self.A.shape[0]

    def Dense(self):
        A = self.A.toarray() if sp.issparse(self.A) else np.asarray(self.A)
        B = self.B.toarray() if sp.issparse(self.B) else np.asarray(self.B)
        return A, B


class Spectrum():
    """
    Ordered eigenvalues with multiplicity clustering and provenance.

    Attributes:
    - eigenvalues:    np.ndarray     -> ascending reals, or complex values sorted by modulus
    - multiplicities: np.ndarray(int)-> size of the cluster every eigenvalue belongs to
    - clusters:       list(list)     -> eigenvalue indices grouped by cluster
    - vectors:        np.ndarray     -> optional eigenvector columns, same order as eigenvalues
    - method, param, domain          -> provenance (method tag, h or N, domain name)
    - cluster_radius: float          -> relative clustering radius
    - zero_mode:      bool           -> a zero eigenvalue (constants) is present and flagged
    - residuals:      np.ndarray     -> relative residual of every returned pair, if computed
    - variant:        str            -> discretization variant (e.g. "cr-midpoint"), or None
    - condition:      float          -> condition estimate of the right-hand matrix (general pencils)
    - space, level, quad             -> finite element space, mesh level or boundary quadrature behind the pencil
    """
    def __init__(self,eigenvalues,vectors=None,method=None,param=None,domain=None,cluster_radius=None,
                 residuals=None,variant=None):
        self.eigenvalues    = np.asarray(eigenvalues)
        self.vectors        = vectors
        self.method         = method
        self.param          = param
        self.domain         = domain
        self.cluster_radius = defaults.cluster_radius if cluster_radius is None else cluster_radius
        self.residuals      = residuals
        self.variant        = variant
        self.zero_mode      = False
        self.condition      = None
        self.space          = None
        self.level          = None
        self.quad           = None
        if vectors is not None and vectors.shape[1] != self.eigenvalues.size:
            RaiseError(message=f"{vectors.shape[1]} eigenvectors for {self.eigenvalues.size} eigenvalues",error=UsageError)
        self.clusters       = cluster_eigenvalues(self.eigenvalues,self.cluster_radius)
        self.multiplicities = np.zeros(self.eigenvalues.size,dtype=int)
        for cluster in self.clusters:
            self.multiplicities[cluster] = len(cluster)

    def __len__(self):
        return int(self.eigenvalues.size)

    def __repr__(self):
        return f"Spectrum(method={self.method!r}, param={self.param!r}, domain={self.domain!r}, n={len(self)})"

    def FlagZeroMode(self,tol=1.0e-8):
        """Marks the spectrum when its first eigenvalue is zero up to tol."""
        if len(self) > 0 and abs(self.eigenvalues[0]) <= tol:
            self.zero_mode = True
        return self.zero_mode

    def Nonzero(self,tol=1.0e-8):
        """Eigenvalues with the flagged zero mode removed."""
        values = self.eigenvalues
        if self.zero_mode:
            return values[np.abs(values) > tol]
        return values


def is_symmetric(M,tol=None):
    tol = defaults.symmetry_tol if tol is None else tol
    if sp.issparse(M):
        diff = abs(M - M.T).max() if M.nnz > 0 else 0.0
        norm = abs(M).max() if M.nnz > 0 else 0.0
    else:
        M    = np.asarray(M)
        diff = np.max(np.abs(M - M.T)) if M.size > 0 else 0.0
        norm = np.max(np.abs(M)) if M.size > 0 else 0.0
    return bool(diff <= tol*max(norm,np.finfo(float).tiny))

def cluster_eigenvalues(values,radius):
    """
    Groups sorted eigenvalues: a value joins the running cluster while its distance to the
    first member stays within radius * max(1, |first|).
    """
    clusters = list()
    if values.size == 0:
        return clusters
    keys  = values
    start = 0
    current = [0]
    for i in range(1,values.size):
        if abs(keys[i]-keys[start]) <= radius*max(1.0,abs(keys[start])):
            current.append(i)
        else:
            clusters.append(current)
            start   = i
            current = [i]
    clusters.append(current)
    return clusters

def _check_definite(B):
    try:
        sla.cholesky(B,lower=True)
    except sla.LinAlgError as err:
        found = re.search(r"(\d+)",str(err))
        pivot = found.group(1) if found else "?"
        RaiseError(message=f"Right-hand matrix is not positive-definite: factorization breaks down at pivot {pivot}",
                   error=NumericalQualityError)

def residuals_symdef(A,B,values,vectors):
    normA = np.linalg.norm(A,2) if A.shape[0] <= 500 else np.linalg.norm(A,"fro")
    normB = np.linalg.norm(B,2) if B.shape[0] <= 500 else np.linalg.norm(B,"fro")
    R     = A @ vectors - (B @ vectors)*values[None,:]
    return np.linalg.norm(R,axis=0)/(normA + np.abs(values)*normB)

def solve_symdef(pencil,vectors=True,tol=1.0e-9):
    """
    All eigenpairs of a symmetric-definite pencil, ascending. LAPACK reduces the problem through
    the Cholesky factor of B, tridiagonalizes and runs implicit-shift QR; eigenvectors come back
    B-orthonormal.

    Parameters:
    - pencil:  Pencil -> A symmetric, B symmetric positive-definite
    - vectors: bool   -> keep eigenvectors in the Spectrum
    - tol:     float  -> residual acceptance, ||A v - l B v|| <= tol (||A|| + |l| ||B||)
    """
    if not (pencil.symmetric_a and pencil.symmetric_b):
        RaiseError(message="solve_symdef needs symmetric A and B",error=UsageError)
    A, B = pencil.Dense()
    _check_definite(B)
    w, V = sla.eigh(A,B)
    res  = residuals_symdef(A,B,w,V)
    if res.size > 0 and res.max() > tol:
        RaiseError(message=f"Symmetric-definite solve residual {res.max():.3e} above {tol:.1e}",error=NumericalQualityError)
    return Spectrum(w,vectors=V if vectors else None,residuals=res)

def condition_estimate(B):
    return float(np.linalg.cond(B))

def solve_general(pencil,vectors=False,gate=None,real_tol=None):
    """
    Eigenvalues of a general pencil through the QZ algorithm. Values whose imaginary part is
    below real_tol times their modulus are reported as reals; if all are real the spectrum is
    ascending, otherwise it is sorted by modulus.
    """
    gate     = defaults.condition_gate if gate is None else gate
    real_tol = defaults.real_tol if real_tol is None else real_tol
    A, B = pencil.Dense()
    cond = condition_estimate(B)
    if not np.isfinite(cond) or cond > gate:
        RaiseError(message=f"Right-hand matrix ill-conditioned: condition estimate {cond:.3e} above {gate:.1e}",
                   error=NumericalQualityError)
    try:
        if vectors:
            w, V = sla.eig(A,B)
        else:
            w, V = sla.eig(A,B,right=False), None
    except sla.LinAlgError as err:
        RaiseError(message=f"QZ iteration did not converge: {err}",error=NumericalQualityError)
    realish       = np.abs(w.imag) <= real_tol*np.maximum(np.abs(w),np.finfo(float).tiny)
    w             = np.where(realish,w.real,w)
    if np.all(realish):
        order = np.argsort(w.real,kind="stable")
        w     = w.real[order]
    else:
        order = np.argsort(np.abs(w),kind="stable")
        w     = w[order]
    if V is not None:
        V = V[:,order]
        if np.all(realish):
            V = V.real
    spectrum = Spectrum(w,vectors=V)
    spectrum.condition = cond
    return spectrum

def subspace_iteration(B,G,count,tol=None,maxiter=None,seed=None):
    """
    Dominant eigenpairs of B v = theta G v for sparse symmetric G (positive-definite) and B
    (positive-semidefinite), by block inverse iteration with a sparse LU of G and Rayleigh-Ritz.
    Block size is twice the requested count.

    Returns:
    - theta:   np.ndarray(count,)   -> largest values, descending
    - vectors: np.ndarray(n,count)  -> G-orthonormal Ritz vectors
    """
    tol     = defaults.subspace_tol if tol is None else tol
    maxiter = defaults.subspace_maxiter if maxiter is None else maxiter
    seed    = defaults.default_seed if seed is None else seed
    n       = G.shape[0]
    block   = min(n,max(2*count,count+4))
    lu      = splu(sp.csc_matrix(G))
    rng     = np.random.default_rng(seed)
    X       = rng.standard_normal((n,block))
    previous = None
    for it in range(maxiter):
        Y, _ = np.linalg.qr(lu.solve(B @ X))
        Br   = Y.T @ (B @ Y)
        Gr   = Y.T @ (G @ Y)
        theta, Z = sla.eigh(0.5*(Br+Br.T),0.5*(Gr+Gr.T))
        theta, Z = theta[::-1], Z[:,::-1]
        X    = Y @ Z
        if previous is not None:
            change = np.abs(theta[:count]-previous)/np.maximum(np.abs(theta[:count]),np.finfo(float).tiny)
            if change.max() <= tol:
                PrintInfo(message=f" Subspace iteration converged in {it+1} sweeps (block {block})")
                return theta[:count], X[:,:count]
        previous = theta[:count].copy()
    RaiseError(message=f"Subspace iteration did not reach {tol:.1e} in {maxiter} sweeps",error=NumericalQualityError)

def _orthonormal_basis(U,gram):
    if gram is None:
        W, s, _ = np.linalg.svd(U,full_matrices=False)
        if s.size == 0 or s.min() <= 1.0e-12*s.max():
            RaiseError(message="Rank-deficient column block passed to subspace_gap",error=UsageError)
        return W
    C    = U.T @ (gram @ U)
    s, Z = np.linalg.eigh(0.5*(C+C.T))
    if s.min() <= 1.0e-24*s.max():
        RaiseError(message="Rank-deficient column block passed to subspace_gap",error=UsageError)
    return U @ (Z/np.sqrt(s)[None,:])

def _directed_gap(QU,QV,gram):
    if gram is None:
        R = QU - QV @ (QV.T @ QU)
        return float(np.linalg.norm(R,2))
    R = QU - QV @ (QV.T @ (gram @ QU))
    C = R.T @ (gram @ R)
    return float(np.sqrt(max(0.0,np.linalg.eigvalsh(0.5*(C+C.T)).max())))

def subspace_gap(U,V,gram=None):
    """
    Symmetric gap max(delta(U,V), delta(V,U)) between the column spans of U and V, where
    delta(U,V) is the largest distance from a unit vector of span(U) to span(V).

    Parameters:
    - U, V: np.ndarray(n,k) -> linearly independent columns, same ambient dimension
    - gram: matrix          -> symmetric positive-definite inner product (identity when None)
    """
    U = np.asarray(U,dtype=float)
    V = np.asarray(V,dtype=float)
    if U.ndim == 1:
        U = U[:,None]
    if V.ndim == 1:
        V = V[:,None]
    if U.shape[0] != V.shape[0]:
        RaiseError(message=f"Ambient dimensions differ: {U.shape[0]} and {V.shape[0]}",error=UsageError)
    QU  = _orthonormal_basis(U,gram)
    QV  = _orthonormal_basis(V,gram)
    gap = max(_directed_gap(QU,QV,gram),_directed_gap(QV,QU,gram))
    return float(min(1.0,max(0.0,gap)))
