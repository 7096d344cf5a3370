import numpy as np
import scipy.sparse as sp
from spectra.utils.logging import RaiseError, PrintInfo, DomainError
from spectra.geometry.domains import _orient


class Mesh():
    """
    Conforming triangulation of a polygonal domain.

    Attributes:
    - vertices:         np.ndarray(nv,2)  -> coordinates
    - triangles:        np.ndarray(nt,3)  -> positively oriented vertex triples
    - boundary_edges:   np.ndarray(nb,2)  -> boundary vertex pairs, counterclockwise
    - boundary_markers: np.ndarray(nb,)   -> marker of every boundary edge
    - edges:            np.ndarray(ne,2)  -> all edges, sorted vertex pairs
    - tri_edges:        np.ndarray(nt,3)  -> edge index opposite local vertex k
    - boundary_edge_ids:np.ndarray(nb,)   -> index of every boundary edge in edges
    - h:                float             -> maximal edge length
    - level:            int               -> number of red refinements applied
    """
    def __init__(self,vertices,triangles,boundary_edges,boundary_markers,level=0,name=None):
        self.vertices          = np.asarray(vertices,dtype=float)
        self.triangles         = np.asarray(triangles,dtype=np.int64)
        self.boundary_edges    = np.asarray(boundary_edges,dtype=np.int64)
        self.boundary_markers  = np.asarray(boundary_markers)
        self.level             = level
        self.name              = name
        self.edges             = None
        self.tri_edges         = None
        self.boundary_edge_ids = None
        self.h                 = None
        self.BuildEdges()

    def __repr__(self):
        return f"Mesh(name={self.name!r}, level={self.level}, nv={self.nv}, nt={self.nt}, h={self.h:.4g})"

    @property
    def nv(self):
        return self.vertices.shape[0]

    @property
    def nt(self):
        return self.triangles.shape[0]

    @property
    def ne(self):
        return self.edges.shape[0]

    def BuildEdges(self):
        t     = self.triangles
        local = np.stack([t[:,[1,2]],t[:,[2,0]],t[:,[0,1]]],axis=1).reshape(-1,2)
        local = np.sort(local,axis=1)
        self.edges, inverse = np.unique(local,axis=0,return_inverse=True)
        self.tri_edges = inverse.reshape(-1,3)
        lengths = np.linalg.norm(self.vertices[self.edges[:,1]]-self.vertices[self.edges[:,0]],axis=1)
        self.h  = float(lengths.max())
        keys    = self.edges[:,0]*self.nv + self.edges[:,1]
        bnd     = np.sort(self.boundary_edges,axis=1)
        bkeys   = bnd[:,0]*self.nv + bnd[:,1]
        ids     = np.searchsorted(keys,bkeys)
        if np.any(ids >= keys.size) or np.any(keys[np.minimum(ids,keys.size-1)] != bkeys):
            RaiseError(message="Boundary edge missing from the triangulation",error=DomainError)
        self.boundary_edge_ids = ids

    def Areas(self):
        """Signed area of every triangle."""
        p = self.vertices[self.triangles]
        return 0.5*((p[:,1,0]-p[:,0,0])*(p[:,2,1]-p[:,0,1]) - (p[:,1,1]-p[:,0,1])*(p[:,2,0]-p[:,0,0]))

    def EdgeMidpoints(self):
        return 0.5*(self.vertices[self.edges[:,0]] + self.vertices[self.edges[:,1]])


def triangulate(domain):
    """
    Coarse triangulation of a simple counterclockwise polygon by ear clipping.
    The first admissible ear in vertex order is cut at every step, so the result
    is deterministic. Boundary edges inherit the polygon edge markers.
    """
    if domain.kind != "polygon":
        RaiseError(message=f"Domain {domain.name}: only polygons can be triangulated",error=DomainError)
    v         = domain.vertices
    n         = v.shape[0]
    scale     = max(float(np.ptp(v[:,0])),float(np.ptp(v[:,1])))**2
    tol       = 1e-14*scale
    remaining = list(range(n))
    triangles = list()
    while len(remaining) > 3:
        m     = len(remaining)
        found = False
        for k in range(m):
            a, b, c = remaining[k-1], remaining[k], remaining[(k+1)%m]
            if _orient(v[a],v[b],v[c]) <= tol:
                continue
            blocked = False
            for p in remaining:
                if p in (a,b,c):
                    continue
                if (_orient(v[a],v[b],v[p]) >= 0 and _orient(v[b],v[c],v[p]) >= 0
                        and _orient(v[c],v[a],v[p]) >= 0):
                    blocked = True
                    break
            if not blocked:
                triangles.append((a,b,c))
                remaining.pop(k)
                found = True
                break
        if not found:
            RaiseError(message=f"Domain {domain.name}: ear clipping found no valid ear among {m} vertices",error=DomainError)
    a, b, c = remaining
    if _orient(v[a],v[b],v[c]) <= tol:
        RaiseError(message=f"Domain {domain.name}: degenerate (zero-area) ear at vertices {a},{b},{c}",error=DomainError)
    triangles.append((a,b,c))
    boundary = np.array([(i,(i+1)%n) for i in range(n)],dtype=np.int64)
    mesh     = Mesh(v.copy(),triangles,boundary,np.array(domain.markers),level=0,name=domain.name)
    PrintInfo(message=f" Domain {domain.name} triangulated into {mesh.nt} triangles")
    return mesh

def refine(mesh):
    """
    Red refinement: every triangle is split into four congruent children through its
    edge midpoints. Old vertices keep their indices; the midpoint of edge e gets index nv+e.
    """
    nv = mesh.nv
    t  = mesh.triangles
    a, b, c = t[:,0], t[:,1], t[:,2]
    m_bc = mesh.tri_edges[:,0] + nv
    m_ca = mesh.tri_edges[:,1] + nv
    m_ab = mesh.tri_edges[:,2] + nv
    children = np.concatenate((
        np.stack((a,m_ab,m_ca),axis=1),
        np.stack((m_ab,b,m_bc),axis=1),
        np.stack((m_ca,m_bc,c),axis=1),
        np.stack((m_ab,m_bc,m_ca),axis=1),
    ))
    vertices  = np.vstack((mesh.vertices,mesh.EdgeMidpoints()))
    mid       = mesh.boundary_edge_ids + nv
    boundary  = np.empty((2*mesh.boundary_edges.shape[0],2),dtype=np.int64)
    boundary[0::2,0] = mesh.boundary_edges[:,0]
    boundary[0::2,1] = mid
    boundary[1::2,0] = mid
    boundary[1::2,1] = mesh.boundary_edges[:,1]
    markers   = np.repeat(mesh.boundary_markers,2)
    return Mesh(vertices,children,boundary,markers,level=mesh.level+1,name=mesh.name)

def mesh_hierarchy(domain,levels):
    """
    Nested meshes for the level schedule 1..levels (level = number of red refinements
    of the ear-clipped coarse mesh).
    """
    mesh   = triangulate(domain)
    meshes = list()
    for _ in range(levels):
        mesh = refine(mesh)
        meshes.append(mesh)
    return meshes

def prolongation_p1(coarse):
    """Sparse interpolation of P1 vertex values from coarse onto refine(coarse)."""
    nv, ne = coarse.nv, coarse.ne
    rows   = np.concatenate((np.arange(nv),np.repeat(nv+np.arange(ne),2)))
    cols   = np.concatenate((np.arange(nv),coarse.edges.reshape(-1)))
    vals   = np.concatenate((np.ones(nv),np.full(2*ne,0.5)))
    return sp.csr_matrix((vals,(rows,cols)),shape=(nv+ne,nv))
