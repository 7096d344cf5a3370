import numpy as np
from scipy.stats import qmc
from spectra.geometry.domains import interior_angles, point_in_domain
from spectra.specfun.bessel import bessel_j
from spectra.utils.logging import RaiseError, UsageError, DomainError
from spectra.utils.defaults import defaults


CORNER_CHOICES = ["single","singular","all"]


class CornerBasis():
    """
    Fourier-Bessel functions J_{alpha k}(sqrt(lambda) r) sin(alpha k theta), k = 1..size, around
    one polygon corner with interior angle pi/alpha.

    theta is measured counterclockwise from the edge leaving the corner, so every function
    vanishes on both edges meeting there. The branch cut runs along the bisector of the
    exterior angle.

    Attributes:
    - corner: int        -> vertex index
    - vertex: np.ndarray -> corner coordinates
    - angle:  float      -> interior angle
    - alpha:  float      -> pi / angle
    - size:   int        -> number of functions K
    - orders: np.ndarray -> alpha k
    - frame:  float      -> direction of the leaving edge
    """
    def __init__(self,domain,corner,size=None):
        if domain.kind != "polygon":
            RaiseError(message=f"Domain {domain.name}: corner bases need a polygon",error=DomainError)
        size   = defaults.mps_basis_size if size is None else int(size)
        if size < 1:
            RaiseError(message=f"Basis size must be positive, got {size}",error=UsageError)
        nv     = domain.vertices.shape[0]
        corner = int(corner) % nv
        edge   = domain.vertices[(corner+1)%nv] - domain.vertices[corner]
        self.domain = domain
        self.corner = corner
        self.vertex = domain.vertices[corner].copy()
        self.angle  = float(interior_angles(domain)[corner])
        self.alpha  = np.pi/self.angle
        self.size   = size
        self.orders = self.alpha*np.arange(1,size+1)
        self.frame  = float(np.arctan2(edge[1],edge[0]))

    def __repr__(self):
        return f"CornerBasis(corner={self.corner}, alpha={self.alpha:.6g}, size={self.size})"

    def __len__(self):
        return self.size

    @property
    def singular(self):
        return abs(self.alpha-round(self.alpha)) > 1.0e-10

    @property
    def edges(self):
        """The two polygon edges on which every function vanishes."""
        nv = self.domain.vertices.shape[0]
        return ((self.corner-1)%nv, self.corner)

    def Polar(self,points):
        d     = np.atleast_2d(points) - self.vertex
        r     = np.hypot(d[:,0],d[:,1])
        cut   = 0.5*(2.0*np.pi-self.angle)
        theta = np.mod(np.arctan2(d[:,1],d[:,0]) - self.frame + cut, 2.0*np.pi) - cut
        return r, theta

    def Evaluate(self,lam,points):
        """Basis matrix, one row per point and one column per function."""
        r, theta = self.Polar(points)
        return bessel_j(self.orders[None,:],np.sqrt(lam)*r[:,None])*np.sin(np.outer(theta,self.orders))


class CentredBasis():
    """
    Full Fourier-Bessel family J_0, J_n cos(n theta), J_n sin(n theta), n = 1..size, around an
    interior point. Used on smooth domains where no corner fixes the angular exponent.
    """
    def __init__(self,center,size):
        self.center = np.asarray(center,dtype=float)
        self.size   = int(size)
        self.orders = np.concatenate(([0.0],np.repeat(np.arange(1,self.size+1),2))).astype(float)
        self.cosine = np.concatenate(([True],np.tile([True,False],self.size)))

    def __repr__(self):
        return f"CentredBasis(center={tuple(self.center)}, size={self.size})"

    def __len__(self):
        return self.orders.size

    def Evaluate(self,lam,points):
        d      = np.atleast_2d(points) - self.center
        r      = np.hypot(d[:,0],d[:,1])
        theta  = np.arctan2(d[:,1],d[:,0])
        phase  = np.outer(theta,self.orders)
        radial = bessel_j(self.orders[None,:],np.sqrt(lam)*r[:,None])
        return radial*np.where(self.cosine[None,:],np.cos(phase),np.sin(phase))


def corner_bases(domain,corners="single",size=None):
    """
    Basis set for a polygon.

    Parameters:
    - corners: str -> "single" (largest interior angle), "singular" (every corner whose exponent
                      is not an integer, falling back to single) or "all"
    - size:    int -> functions per corner
    """
    if corners not in CORNER_CHOICES:
        RaiseError(message=f"Unknown corner selection {corners}, expected one of {CORNER_CHOICES}",error=UsageError)
    if domain.kind != "polygon":
        RaiseError(message=f"Domain {domain.name}: corner bases need a polygon",error=DomainError)
    angles = interior_angles(domain)
    single = [CornerBasis(domain,int(np.argmax(angles)),size)]
    if corners == "single":
        return single
    bases = [CornerBasis(domain,i,size) for i in range(angles.size)]
    if corners == "singular":
        bases = [b for b in bases if b.singular]
        return bases if bases else single
    return bases

def basis_matrix(bases,lam,points):
    return np.hstack([b.Evaluate(lam,points) for b in bases])

def basis_size(bases):
    return int(sum(len(b) for b in bases))


class Collocation():
    """
    Boundary and interior points of one MPS problem.

    Boundary points sit at (j + 1/2)/n along every edge, n proportional to the edge length,
    oversampling times the basis size in total. Edges where a lone corner basis already vanishes
    are skipped. Interior points come from a Halton sequence over the bounding box, filtered to
    the domain, as many as boundary points.

    Attributes:
    - boundary: np.ndarray(m_b,2)
    - interior: np.ndarray(m_i,2)
    - seed:     int -> number of Halton points skipped
    """
    def __init__(self,domain,bases,oversampling=None,seed=None):
        oversampling  = defaults.mps_oversampling if oversampling is None else oversampling
        seed          = defaults.default_seed if seed is None else int(seed)
        count         = int(np.ceil(oversampling*basis_size(bases)))
        self.domain   = domain
        self.seed     = seed
        self.boundary = boundary_points(domain,bases,count)
        self.interior = interior_points(domain,self.boundary.shape[0],seed)

    def __repr__(self):
        return f"Collocation(boundary={self.boundary.shape[0]}, interior={self.interior.shape[0]})"

    @property
    def nb(self):
        return self.boundary.shape[0]

    @property
    def points(self):
        return np.vstack((self.boundary,self.interior))


def boundary_points(domain,bases,count):
    v      = domain.vertices
    nv     = v.shape[0]
    skip   = set(bases[0].edges) if len(bases) == 1 and isinstance(bases[0],CornerBasis) else set()
    edges  = [e for e in range(nv) if e not in skip]
    starts = v[edges]
    ends   = v[[(e+1)%nv for e in edges]]
    length = np.hypot(*(ends-starts).T)
    per    = np.maximum(1,np.round(count*length/length.sum())).astype(int)
    points = list()
    for a, b, n in zip(starts,ends,per):
        s = (np.arange(n)+0.5)/n
        points.append(a[None,:] + s[:,None]*(b-a)[None,:])
    return np.vstack(points)

def interior_points(domain,count,seed=None):
    """First count points of the deterministic Halton sequence that fall inside the domain."""
    seed   = defaults.default_seed if seed is None else int(seed)
    lo, hi = domain.vertices.min(axis=0), domain.vertices.max(axis=0)
    engine = qmc.Halton(d=2,scramble=False)
    engine.fast_forward(seed)
    found  = list()
    total  = 0
    while total < count:
        batch  = qmc.scale(engine.random(2*count),lo,hi)
        inside = batch[point_in_domain(domain,batch)]
        found.append(inside)
        total += inside.shape[0]
    return np.vstack(found)[:count]
