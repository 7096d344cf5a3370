import numpy as np
from spectra.utils.logging import RaiseError, UsageError


KINDS = ["P1","P2","CR"]


class FemSpace():
    """
    Finite element space on a triangle mesh.

    Local numbering: vertex dofs follow the triangle vertices; edge dofs follow the edge opposite
    local vertex k (P2: dofs 3..5, CR: dofs 0..2).

    Attributes:
    - kind:        str              -> "P1", "P2" or "CR"
    - mesh:        Mesh             -> underlying triangulation
    - ndofs:       int              -> P1: nv, P2: nv + ne, CR: ne
    - cell_dofs:   np.ndarray(nt,k) -> global dofs of every triangle
    - edge_dofs:   np.ndarray(nb,k) -> global dofs of every boundary edge (P2: start, midpoint, end)
    - constrained: np.ndarray(bool) -> dofs eliminated by Dirichlet edges
    """
    def __init__(self,kind,mesh,dirichlet_edges=None):
        if kind not in KINDS:
            RaiseError(message=f"Unknown finite element {kind}; available {KINDS}",error=UsageError)
        self.kind        = kind
        self.mesh        = mesh
        self.ndofs       = None
        self.cell_dofs   = None
        self.edge_dofs   = None
        self.constrained = None
        self.SetDofs()
        if dirichlet_edges is None:
            dirichlet_edges = np.zeros(mesh.boundary_edges.shape[0],dtype=bool)
        self.SetConstraints(np.asarray(dirichlet_edges,dtype=bool))

    def __repr__(self):
        return f"FemSpace(kind={self.kind!r}, ndofs={self.ndofs}, constrained={int(self.constrained.sum())})"

    def SetDofs(self):
        mesh = self.mesh
        nv   = mesh.nv
        bnd  = mesh.boundary_edges
        eid  = mesh.boundary_edge_ids
        if self.kind == "P1":
            self.ndofs     = nv
            self.cell_dofs = mesh.triangles.copy()
            self.edge_dofs = bnd.copy()
        elif self.kind == "P2":
            self.ndofs     = nv + mesh.ne
            self.cell_dofs = np.hstack((mesh.triangles,mesh.tri_edges + nv))
            self.edge_dofs = np.stack((bnd[:,0],eid + nv,bnd[:,1]),axis=1)
        else:
            self.ndofs     = mesh.ne
            self.cell_dofs = mesh.tri_edges.copy()
            self.edge_dofs = eid[:,None].copy()

    def SetConstraints(self,dirichlet_edges):
        constrained = np.zeros(self.ndofs,dtype=bool)
        if dirichlet_edges.any():
            constrained[np.unique(self.edge_dofs[dirichlet_edges])] = True
        self.constrained = constrained

    @property
    def free(self):
        return ~self.constrained

    def DofCoordinates(self):
        mesh = self.mesh
        if self.kind == "P1":
            return mesh.vertices
        if self.kind == "P2":
            return np.vstack((mesh.vertices,mesh.EdgeMidpoints()))
        return mesh.EdgeMidpoints()

    def VertexValues(self,u):
        """Values of a dof vector at the mesh vertices (CR: average of the adjacent triangle traces)."""
        mesh = self.mesh
        if self.kind == "P1":
            return u
        if self.kind == "P2":
            return u[:mesh.nv]
        # CR value at a vertex of a triangle: sum of the two incident edge dofs minus the opposite one
        values = np.zeros(mesh.nv)
        counts = np.zeros(mesh.nv)
        c      = u[self.cell_dofs]
        for k in range(3):
            local = c[:,(k+1)%3] + c[:,(k+2)%3] - c[:,k]
            np.add.at(values,mesh.triangles[:,k],local)
            np.add.at(counts,mesh.triangles[:,k],1.0)
        return values/counts
