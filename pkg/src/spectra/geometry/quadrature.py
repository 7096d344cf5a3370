import math
import numpy as np
from spectra.utils.logging import RaiseError, DomainError


def triangle_quadrature():
    """
    Seven-point rule exact for polynomials of degree 5 on a triangle.

    Returns:
    - bary:    np.ndarray(7,3) -> barycentric coordinates of the points
    - weights: np.ndarray(7,)  -> weights summing to 1 (multiply by the triangle area)
    """
    s15 = math.sqrt(15.0)
    b1, b2 = (6.0+s15)/21.0, (6.0-s15)/21.0
    a1, a2 = 1.0-2.0*b1, 1.0-2.0*b2
    w1, w2 = (155.0+s15)/1200.0, (155.0-s15)/1200.0
    bary = np.array([
        [1/3,1/3,1/3],
        [a1,b1,b1],[b1,a1,b1],[b1,b1,a1],
        [a2,b2,b2],[b2,a2,b2],[b2,b2,a2],
    ])
    weights = np.array([0.225,w1,w1,w1,w2,w2,w2])
    return bary, weights

def edge_midpoint_quadrature():
    """Three edge-midpoint rule, exact for quadratics; barycentric points follow the opposite-vertex edge order."""
    bary = np.array([[0.0,0.5,0.5],[0.5,0.0,0.5],[0.5,0.5,0.0]])
    return bary, np.full(3,1.0/3.0)

def line_quadrature(npts=3):
    """Gauss-Legendre points mapped to [0,1] with weights summing to 1."""
    x, w = np.polynomial.legendre.leggauss(npts)
    return 0.5*(x+1.0), 0.5*w


class BoundaryQuadrature():
    """
    Equispaced-in-parameter nodes on every circle of a smooth-curves domain.

    Outer circles run counterclockwise, holes clockwise, so the domain always lies on the
    left and normals = tangent rotated clockwise point out of the domain. Curvature is signed
    relative to that normal: +1/R on the outer circle, -1/R on holes.

    Attributes:
    - counts:    list(int)       -> nodes per curve (all even)
    - offsets:   np.ndarray      -> start index of every curve in the stacked arrays
    - t:         np.ndarray(N,)  -> parameter of every node in [0, 2 pi)
    - nodes:     np.ndarray(N,2) -> coordinates
    - dnodes:    np.ndarray(N,2) -> derivative of the parametrization
    - normals:   np.ndarray(N,2) -> outward unit normals
    - curvature: np.ndarray(N,)  -> signed curvature
    - speed:     np.ndarray(N,)  -> |x'(t)|
    - weights:   np.ndarray(N,)  -> arclength weights (2 pi R / N on a circle)
    - curve:     np.ndarray(N,)  -> curve index of every node
    """
    def __init__(self,domain,n_per_curve,phase=0.0):
        if domain.kind != "smooth-curves":
            RaiseError(message=f"Domain {domain.name}: boundary quadrature needs smooth curves",error=DomainError)
        ncurves = len(domain.circles)
        if np.isscalar(n_per_curve):
            counts = [int(n_per_curve)]*ncurves
        else:
            counts = [int(n) for n in n_per_curve]
        if len(counts) != ncurves:
            RaiseError(message=f"Got {len(counts)} node counts for {ncurves} curves",error=DomainError)
        for n in counts:
            if n < 2 or n % 2 != 0:
                RaiseError(message=f"Node count per curve must be even and positive, got {n}",error=DomainError)
        self.domain  = domain
        self.counts  = counts
        self.phase   = phase
        self.offsets = np.concatenate(([0],np.cumsum(counts)))
        t_all, x_all, dx_all, k_all, c_all = [], [], [], [], []
        for i, ((cx,cy,r,orientation),n) in enumerate(zip(domain.circles,counts)):
            t    = 2.0*np.pi*(np.arange(n)+phase)/n
            sign = 1.0 if orientation == "outer-ccw" else -1.0
            x    = np.stack((cx+r*np.cos(t),cy+sign*r*np.sin(t)),axis=1)
            dx   = np.stack((-r*np.sin(t),sign*r*np.cos(t)),axis=1)
            t_all.append(t)
            x_all.append(x)
            dx_all.append(dx)
            k_all.append(np.full(n,sign/r))
            c_all.append(np.full(n,i))
        self.t         = np.concatenate(t_all)
        self.nodes     = np.vstack(x_all)
        self.dnodes    = np.vstack(dx_all)
        self.speed     = np.linalg.norm(self.dnodes,axis=1)
        tangent        = self.dnodes/self.speed[:,None]
        self.normals   = np.stack((tangent[:,1],-tangent[:,0]),axis=1)
        self.curvature = np.concatenate(k_all)
        self.curve     = np.concatenate(c_all)
        self.weights   = np.concatenate([self.speed[self.offsets[i]:self.offsets[i+1]]*2.0*np.pi/n for i, n in enumerate(counts)])

    def __len__(self):
        return int(self.offsets[-1])

    @property
    def ncurves(self):
        return len(self.counts)

    def Length(self):
        return float(self.weights.sum())

    def CurveSlice(self,i):
        return slice(int(self.offsets[i]),int(self.offsets[i+1]))

    def Spacing(self):
        """Largest distance between consecutive nodes on any curve."""
        return float(max(2.0*np.pi*self.domain.circles[i][2]/n for i, n in enumerate(self.counts)))


def split_nodes(domain,n,split="total"):
    """
    Distributes a node budget over the curves of a domain.

    Parameters:
    - n:     int -> total node count (split="total") or nodes on every curve (split="per-curve")
    - split: str -> "total" shares n in proportion to circumference, every share even
    """
    if split == "per-curve":
        return [int(n)]*len(domain.circles)
    if split != "total":
        RaiseError(message=f"Unknown node split {split}",error=DomainError)
    radii  = np.array([c[2] for c in domain.circles])
    shares = n*radii/radii.sum()
    counts = [max(2,2*int(round(s/2.0))) for s in shares]
    counts[0] += int(n) - sum(counts)
    if counts[0] % 2 != 0:
        RaiseError(message=f"Cannot split {n} nodes into even counts per curve",error=DomainError)
    return counts
