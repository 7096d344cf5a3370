import time
import numpy as np
from tqdm import tqdm
from spectra.geometry.meshes import triangulate, refine, mesh_hierarchy, prolongation_p1
from spectra.fem.spaces import FemSpace, KINDS
from spectra.fem.assembly import assemble_stiffness, assemble_mass, assemble_boundary_mass
from spectra.pencil.solvers import Pencil, Spectrum, solve_symdef, subspace_iteration, subspace_gap
from spectra.utils.logging import RaiseError, RaiseWarning, PrintInfo, UsageError, DomainError, NumericalQualityError
from spectra.utils.defaults import DIRICHLET, STEKLOV, MIXED, defaults
from spectra.utils import printing


METHOD_TAGS = {"P1": "fem-p1", "P2": "fem-p2", "CR": "fem-cr"}


class EigenProblemSpec():
    """
    What to solve on a mesh.

    Attributes:
    - bc:      str -> "dirichlet", "neumann", "mixed" (edge markers) or "steklov"
    - weight:  str -> "unit" or "genus2" mass coefficient
    - count:   int -> number of eigenvalues requested
    - kind:    str -> "P1", "P2" or "CR"
    - level:   int -> refinement level of the mesh
    - variant: str -> "cr-midpoint" for CR with a Steklov boundary, otherwise None
    """
    def __init__(self,bc,count,kind="P1",level=1,weight=None,variant=None):
        self.bc      = bc
        self.weight  = weight
        self.count   = int(count)
        self.kind    = kind
        self.level   = int(level)
        self.variant = variant
        self.Validate()

    def __repr__(self):
        return f"EigenProblemSpec(bc={self.bc!r}, kind={self.kind!r}, count={self.count}, level={self.level})"

    def Validate(self):
        if self.count < 1:
            RaiseError(message=f"At least one eigenvalue must be requested, got {self.count}",error=UsageError)
        if self.bc not in defaults.available_bcs:
            RaiseError(message=f"Unknown boundary condition {self.bc}",error=UsageError)
        if self.kind not in KINDS:
            RaiseError(message=f"Unknown finite element {self.kind}",error=UsageError)
        if self.level < 0:
            RaiseError(message=f"Refinement level must be nonnegative, got {self.level}",error=UsageError)
        if self.variant not in (None,"cr-midpoint"):
            RaiseError(message=f"Unknown discretization variant {self.variant}",error=UsageError)

    def WithLevel(self,level):
        return EigenProblemSpec(self.bc,self.count,kind=self.kind,level=level,weight=self.weight,variant=self.variant)


def edge_roles(mesh,bc):
    """Boundary condition carried by every boundary edge: pure bc values override the markers."""
    nb = mesh.boundary_edges.shape[0]
    if bc == MIXED:
        return np.asarray(mesh.boundary_markers).astype(str)
    return np.full(nb,bc)

def sparse_residuals(A,B,values,V):
    """Relative residuals ||A v - l B v|| / (||A v|| + |l| ||B v||) of sparse pencils."""
    AV = A @ V
    BV = B @ V
    R  = AV - BV*values[None,:]
    return np.linalg.norm(R,axis=0)/(np.linalg.norm(AV,axis=0) + np.abs(values)*np.linalg.norm(BV,axis=0))

def solve_on_mesh(domain,mesh,spec):
    """
    Eigenvalues of the problem described by spec on a given mesh.

    Dirichlet edges are eliminated. Without a Steklov edge the pencil (K, M) is solved; with one,
    B v = mu (K + B) v is solved, the mu = 0 interior cluster is dropped and sigma = 1/mu - 1.
    Pencils above the dense limit go through subspace iteration.
    """
    roles     = edge_roles(mesh,spec.bc)
    dirichlet = roles == DIRICHLET
    steklov   = roles == STEKLOV
    weight    = spec.weight if spec.weight is not None else domain.weight
    space     = FemSpace(spec.kind,mesh,dirichlet)
    free      = space.free
    nfree     = int(free.sum())
    if nfree == 0:
        RaiseError(message=f"Level {mesh.level} mesh leaves no free dofs; refine further",error=UsageError)
    if spec.count > nfree:
        RaiseError(message=f"{spec.count} eigenvalues requested, only {nfree} free dofs on level {mesh.level}",error=UsageError)
    K         = assemble_stiffness(space)
    method    = METHOD_TAGS[spec.kind]
    variant   = None
    if steklov.any():
        if spec.kind == "CR":
            if spec.variant != "cr-midpoint":
                RaiseError(message="CR Steklov needs the cr-midpoint variant",error=UsageError)
            variant = "cr-midpoint"
        B      = assemble_boundary_mass(space,edges=steklov,variant=variant)
        Bff    = B[free][:,free]
        G      = K[free][:,free] + Bff
        nbnd   = int(np.count_nonzero(np.asarray(abs(Bff).sum(axis=1))))
        if spec.count > nbnd:
            RaiseError(message=f"{spec.count} Steklov eigenvalues requested, only {nbnd} boundary dofs",error=UsageError)
        if nfree <= defaults.dense_limit:
            dense = solve_symdef(Pencil(Bff,G,definiteness="positive-definite"))
            mu, V = dense.eigenvalues[::-1][:spec.count], dense.vectors[:,::-1][:,:spec.count]
            res   = dense.residuals[::-1][:spec.count]
        else:
            mu, V = subspace_iteration(Bff,G,spec.count)
            res   = sparse_residuals(Bff,G,mu,V)
        if np.any(mu <= 0.0):
            RaiseError(message=f"Steklov solve returned a non-positive mu {mu.min():.3e} among the first {spec.count}",error=NumericalQualityError)
        values = 1.0/mu - 1.0
    else:
        M   = assemble_mass(space,weight)
        Kff = K[free][:,free]
        Mff = M[free][:,free]
        shift = 0.0 if dirichlet.any() else 1.0
        if nfree <= defaults.dense_limit:
            dense  = solve_symdef(Pencil(Kff,Mff,definiteness="positive-definite"))
            values = dense.eigenvalues[:spec.count]
            V      = dense.vectors[:,:spec.count]
            res    = dense.residuals[:spec.count]
        else:
            theta, V = subspace_iteration(Mff,Kff+shift*Mff,spec.count)
            values   = 1.0/theta - shift
            res      = sparse_residuals(Kff,Mff,values,V)
    order   = np.argsort(values,kind="stable")
    values  = values[order]
    vectors = np.zeros((space.ndofs,values.size))
    vectors[free] = V[:,order]
    spectrum = Spectrum(values,vectors=vectors,method=method,param=mesh.h,domain=domain.name,variant=variant,
                        residuals=np.asarray(res)[order])
    spectrum.space = space
    spectrum.level = mesh.level
    if not dirichlet.any():
        spectrum.FlagZeroMode()
    return spectrum

def solve_fem(domain,spec,mesh=None):
    """
    Parameters:
    - domain: Domain           -> polygon
    - spec:   EigenProblemSpec -> problem, element, count and level
    - mesh:   Mesh             -> optional mesh, otherwise the level-th red refinement of the ear-clipped mesh
    """
    if domain.kind != "polygon":
        RaiseError(message=f"Domain {domain.name}: finite elements need a polygon",error=DomainError)
    if mesh is None:
        mesh = triangulate(domain)
        for _ in range(spec.level):
            mesh = refine(mesh)
    return solve_on_mesh(domain,mesh,spec)

def solve_fem_levels(domain,spec,levels,meshes=None):
    """Spectra on refinement levels 1..levels of one nested hierarchy."""
    if domain.kind != "polygon":
        RaiseError(message=f"Domain {domain.name}: finite elements need a polygon",error=DomainError)
    if meshes is None:
        meshes = mesh_hierarchy(domain,levels)
    spectra = list()
    for mesh in tqdm(meshes,desc=f"{METHOD_TAGS[spec.kind]} {domain.name}",disable=printing.quiet,leave=False):
        start    = time.time()
        spectrum = solve_on_mesh(domain,mesh,spec.WithLevel(mesh.level))
        spectra.append(spectrum)
        PrintInfo(message=f" {spectrum.method} level {mesh.level} h={mesh.h:.4g} solved in {time.time()-start:.3f} s")
    return spectra

def track_eigenspaces(domain,spec,levels):
    """
    Subspace gap between the first eigenvalue cluster on consecutive levels, measured in the
    fine-level mass inner product after P1 prolongation of the coarse eigenvectors.
    A non-decreasing gap is reported as a warning, never raised.
    """
    if spec.kind != "P1":
        RaiseError(message="Eigenspace tracking uses nested P1 spaces only",error=UsageError)
    meshes  = mesh_hierarchy(domain,levels)
    spectra = solve_fem_levels(domain,spec,levels,meshes=meshes)
    gaps    = list()
    for coarse, fine, sc, sf in zip(meshes[:-1],meshes[1:],spectra[:-1],spectra[1:]):
        cluster = sc.clusters[0]
        U       = prolongation_p1(coarse) @ sc.vectors[:,cluster]
        V       = sf.vectors[:,sf.clusters[0]]
        gram    = assemble_mass(FemSpace("P1",fine),"unit")
        gap     = subspace_gap(U,V,gram=gram)
        gaps.append(gap)
        PrintInfo(message=f" Level {coarse.level}->{fine.level}: first-cluster subspace gap {gap:.3e}")
    for i in range(1,len(gaps)):
        if gaps[i] >= gaps[i-1]:
            RaiseWarning(message=f" Subspace gap did not decrease at level {meshes[i+1].level}: {gaps[i-1]:.3e} -> {gaps[i]:.3e}")
    return gaps
