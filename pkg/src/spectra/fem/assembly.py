import numpy as np
import scipy.sparse as sp
from spectra.geometry.quadrature import triangle_quadrature, edge_midpoint_quadrature, line_quadrature
from spectra.utils.logging import RaiseError, UsageError


def edge_mass(kind):
    """Reference 1D mass matrix of a unit-length edge; P2 local order is start, midpoint, end."""
    s, w = line_quadrature(3)
    if kind == "P1":
        phi = np.stack((1.0-s,s),axis=1)
    else:
        phi = np.stack(((1.0-s)*(1.0-2.0*s),4.0*s*(1.0-s),s*(2.0*s-1.0)),axis=1)
    return np.einsum("q,qi,qj->ij",w,phi,phi)

P1_EDGE_MASS = edge_mass("P1")
P2_EDGE_MASS = edge_mass("P2")


def unit_weight(points):
    return np.ones(points.shape[:-1])

def genus2_weight(points):
    r2 = np.sum(points**2,axis=-1)
    return 4.0/(1.0+r2)**2

WEIGHTS = {"unit": unit_weight, "genus2": genus2_weight}


def barycentric_gradients(mesh):
    """
    Areas and gradients of the barycentric coordinates of every triangle.

    Returns:
    - area:  np.ndarray(nt,)     -> positive triangle areas
    - grads: np.ndarray(nt,3,2)  -> grad lambda_k, k opposite the edge p_{k+1} p_{k+2}
    """
    p     = mesh.vertices[mesh.triangles]
    area  = mesh.Areas()
    grads = np.empty((mesh.nt,3,2))
    for k in range(3):
        e = p[:,(k+2)%3] - p[:,(k+1)%3]
        grads[:,k,0] = -e[:,1]/(2.0*area)
        grads[:,k,1] =  e[:,0]/(2.0*area)
    return area, grads

def basis_values(kind,bary):
    """Basis values at barycentric points, shape (npts, nloc)."""
    if kind == "P1":
        return bary.copy()
    if kind == "CR":
        return 1.0 - 2.0*bary
    vertex = bary*(2.0*bary-1.0)
    edge   = np.stack([4.0*bary[:,(k+1)%3]*bary[:,(k+2)%3] for k in range(3)],axis=1)
    return np.hstack((vertex,edge))

def basis_gradients(kind,bary,grads):
    """Physical basis gradients at one barycentric point, shape (nt, nloc, 2)."""
    if kind == "P1":
        return grads
    if kind == "CR":
        return -2.0*grads
    vertex = (4.0*bary[None,:,None]-1.0)*grads
    edge   = np.stack([4.0*(bary[(k+2)%3]*grads[:,(k+1)%3] + bary[(k+1)%3]*grads[:,(k+2)%3]) for k in range(3)],axis=1)
    return np.concatenate((vertex,edge),axis=1)

def _scatter(space,local):
    dofs = space.cell_dofs
    n    = dofs.shape[1]
    rows = np.repeat(dofs,n,axis=1).reshape(-1)
    cols = np.tile(dofs,(1,n)).reshape(-1)
    return sp.csc_matrix((local.reshape(-1),(rows,cols)),shape=(space.ndofs,space.ndofs))

def assemble_stiffness(space):
    """
    Global stiffness matrix: constant gradients for P1 and CR, edge-midpoint rule (exact for the
    quadratic gradient products) for P2.
    """
    area, grads = barycentric_gradients(space.mesh)
    if space.kind in ("P1","CR"):
        g     = basis_gradients(space.kind,None,grads)
        local = area[:,None,None]*np.einsum("tid,tjd->tij",g,g)
    else:
        bary, weights = edge_midpoint_quadrature()
        local = np.zeros((space.mesh.nt,6,6))
        for b, w in zip(bary,weights):
            g      = basis_gradients("P2",b,grads)
            local += w*area[:,None,None]*np.einsum("tid,tjd->tij",g,g)
    return _scatter(space,local)

def assemble_mass(space,weight="unit"):
    """
    Global mass matrix with coefficient w(x): "unit" (w = 1) or "genus2" (w = 4/(1+|x|^2)^2).
    Seven-point degree-5 rule; exact for the unit weight in every space.
    """
    if weight not in WEIGHTS:
        RaiseError(message=f"Unknown mass weight {weight}; available {list(WEIGHTS)}",error=UsageError)
    mesh  = space.mesh
    bary, weights = triangle_quadrature()
    phi   = basis_values(space.kind,bary)
    area  = mesh.Areas()
    p     = mesh.vertices[mesh.triangles]
    xq    = np.einsum("qk,tkd->tqd",bary,p)
    wq    = WEIGHTS[weight](xq)*weights[None,:]
    local = area[:,None,None]*np.einsum("tq,qi,qj->tij",wq,phi,phi)
    return _scatter(space,local)

def assemble_boundary_mass(space,edges=None,variant=None):
    """
    Boundary mass matrix on the selected boundary edges, in the global dof numbering.

    Parameters:
    - space:   FemSpace        -> P1 or P2; CR only with variant "cr-midpoint"
    - edges:   np.ndarray bool -> boundary edges included (all when None)
    - variant: str             -> "cr-midpoint" lumps the CR trace mass on edge-midpoint dofs
    """
    mesh = space.mesh
    if mesh.boundary_edges.shape[0] == 0:
        RaiseError(message="Mesh has no boundary edges",error=UsageError)
    if edges is None:
        edges = np.ones(mesh.boundary_edges.shape[0],dtype=bool)
    bnd    = mesh.boundary_edges[edges]
    length = np.linalg.norm(mesh.vertices[bnd[:,1]]-mesh.vertices[bnd[:,0]],axis=1)
    dofs   = space.edge_dofs[edges]
    if space.kind == "P1":
        local = length[:,None,None]*P1_EDGE_MASS[None,:,:]
    elif space.kind == "P2":
        local = length[:,None,None]*P2_EDGE_MASS[None,:,:]
    elif variant == "cr-midpoint":
        local = length[:,None,None]
    else:
        RaiseError(message="Crouzeix-Raviart traces are discontinuous at boundary vertices; "
                   "use the cr-midpoint variant for Steklov problems",error=UsageError)
    n    = dofs.shape[1]
    rows = np.repeat(dofs,n,axis=1).reshape(-1)
    cols = np.tile(dofs,(1,n)).reshape(-1)
    return sp.csc_matrix((local.reshape(-1),(rows,cols)),shape=(space.ndofs,space.ndofs))
