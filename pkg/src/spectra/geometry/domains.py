import os
import math
import numpy as np
from matplotlib.path import Path
from spectra.utils.logging import RaiseError, PrintInfo, DomainError
from spectra.utils.defaults import DIRICHLET, NEUMANN, STEKLOV, defaults


MARKERS      = [DIRICHLET,NEUMANN,STEKLOV]
ORIENTATIONS = ["outer-ccw","inner-cw"]
WEIGHTS      = ["unit","genus2"]

GWW_A = [(0.0,0.0),(1.0,0.0),(1.5,0.5),(2.0,0.0),(2.0,1.0),(1.5,1.5),(0.5,0.5),(0.0,1.0)]
GWW_B = [(0.0,0.0),(0.5,-0.5),(1.0,0.0),(0.5,0.5),(1.0,1.0),(1.0,2.0),(0.5,1.5),(0.0,2.0)]


class Domain():
    """
    Planar domain: either a simple counterclockwise polygon with one boundary marker per edge,
    or a set of disjoint circles (one outer, counterclockwise; any number of holes, clockwise).

    Attributes:
    - kind:     str             -> "polygon" or "smooth-curves"
    - name:     str             -> identifier carried into every output row
    - vertices: np.ndarray(n,2) -> polygon vertices; edge i joins vertex i to vertex i+1
    - markers:  list(str)       -> per-edge marker in {dirichlet, neumann, steklov}
    - circles:  list(tuple)     -> (cx, cy, r, orientation) per curve, outer circle first
    - weight:   str             -> mass weight, "unit" or "genus2" (4/(1+r^2)^2)
    """
    def __init__(self,kind,name=None,vertices=None,markers=None,circles=None,weight="unit"):
        self.kind     = kind
        self.name     = name
        self.vertices = None
        self.markers  = None
        self.circles  = None
        self.weight   = weight
        if kind == "polygon":
            self.vertices = np.array(vertices,dtype=float)
            if markers is None:
                markers = [DIRICHLET]*self.vertices.shape[0]
            self.markers  = list(markers)
        elif kind == "smooth-curves":
            self.circles  = [(float(c[0]),float(c[1]),float(c[2]),c[3]) for c in circles]
        else:
            RaiseError(message=f"Unknown domain kind {kind}",error=DomainError)
        if self.name is None:
            self.name = kind
        self.Validate()

    def __repr__(self):
        return f"Domain(kind={self.kind!r}, name={self.name!r})"

    @property
    def nedges(self):
        return self.vertices.shape[0]

    def Validate(self):
        if self.weight not in WEIGHTS:
            RaiseError(message=f"Domain {self.name}: unknown weight {self.weight}",error=DomainError)
        if self.kind == "polygon":
            self.ValidatePolygon()
        else:
            self.ValidateCircles()

    def ValidatePolygon(self):
        v = self.vertices
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            RaiseError(message=f"Domain {self.name}: a polygon needs at least 3 vertices",error=DomainError)
        if len(self.markers) != v.shape[0]:
            RaiseError(message=f"Domain {self.name}: {len(self.markers)} markers for {v.shape[0]} edges",error=DomainError)
        for marker in self.markers:
            if marker not in MARKERS:
                RaiseError(message=f"Domain {self.name}: unknown edge marker {marker}",error=DomainError)
        if signed_area(v) <= 0.0:
            RaiseError(message=f"Domain {self.name}: vertices are not counterclockwise",error=DomainError)
        n = v.shape[0]
        lengths = np.linalg.norm(np.roll(v,-1,axis=0)-v,axis=1)
        if lengths.min() <= 0.0:
            RaiseError(message=f"Domain {self.name}: repeated vertex",error=DomainError)
        for i in range(n):
            a, b = v[i], v[(i+1)%n]
            for j in range(i+1,n):
                if j == i or (j+1)%n == i or j == (i+1)%n:
                    continue
                c, d = v[j], v[(j+1)%n]
                if segments_intersect(a,b,c,d):
                    RaiseError(message=f"Domain {self.name}: edges {i} and {j} intersect (polygon is not simple)",error=DomainError)

    def ValidateCircles(self):
        if len(self.circles) == 0:
            RaiseError(message=f"Domain {self.name}: no curves given",error=DomainError)
        outer = self.circles[0]
        if outer[3] != "outer-ccw":
            RaiseError(message=f"Domain {self.name}: the first curve must be the outer-ccw circle",error=DomainError)
        for c in self.circles:
            if c[2] <= 0.0:
                RaiseError(message=f"Domain {self.name}: circle radius must be positive",error=DomainError)
            if c[3] not in ORIENTATIONS:
                RaiseError(message=f"Domain {self.name}: unknown orientation {c[3]}",error=DomainError)
        inner = self.circles[1:]
        for i, c in enumerate(inner):
            if c[3] != "inner-cw":
                RaiseError(message=f"Domain {self.name}: only one outer circle is allowed",error=DomainError)
            dist = math.hypot(c[0]-outer[0],c[1]-outer[1])
            if dist + c[2] >= outer[2]:
                RaiseError(message=f"Domain {self.name}: inner circle {i+1} is not strictly inside the outer circle",error=DomainError)
            for j in range(i+1,len(inner)):
                d = inner[j]
                if math.hypot(c[0]-d[0],c[1]-d[1]) <= c[2]+d[2]:
                    RaiseError(message=f"Domain {self.name}: inner circles {i+1} and {j+1} overlap",error=DomainError)

    def Area(self):
        if self.kind == "polygon":
            return signed_area(self.vertices)
        area = math.pi*self.circles[0][2]**2
        for c in self.circles[1:]:
            area -= math.pi*c[2]**2
        return area

    def Perimeter(self):
        if self.kind == "polygon":
            return float(np.linalg.norm(np.roll(self.vertices,-1,axis=0)-self.vertices,axis=1).sum())
        return float(sum(2.0*math.pi*c[2] for c in self.circles))

    def Scaled(self,factor):
        """Returns a copy of the domain scaled about the origin by factor."""
        if self.kind == "polygon":
            return Domain("polygon",name=f"{self.name}*{factor:g}",vertices=factor*self.vertices,markers=self.markers,weight=self.weight)
        circles = [(factor*c[0],factor*c[1],factor*c[2],c[3]) for c in self.circles]
        return Domain("smooth-curves",name=f"{self.name}*{factor:g}",circles=circles,weight=self.weight)

    def WithMarkers(self,marker):
        """Returns a copy of the polygon with every edge carrying the same marker."""
        return Domain("polygon",name=self.name,vertices=self.vertices,markers=[marker]*self.nedges,weight=self.weight)


def signed_area(vertices):
    x, y = vertices[:,0], vertices[:,1]
    return 0.5*float(np.sum(x*np.roll(y,-1) - np.roll(x,-1)*y))

def _orient(a,b,c):
    return (b[0]-a[0])*(c[1]-a[1]) - (b[1]-a[1])*(c[0]-a[0])

def _on_segment(a,b,p):
    return min(a[0],b[0]) <= p[0] <= max(a[0],b[0]) and min(a[1],b[1]) <= p[1] <= max(a[1],b[1])

def segments_intersect(a,b,c,d):
    """Closed-segment intersection test, collinear overlaps included."""
    d1, d2 = _orient(c,d,a), _orient(c,d,b)
    d3, d4 = _orient(a,b,c), _orient(a,b,d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(c,d,a):
        return True
    if d2 == 0 and _on_segment(c,d,b):
        return True
    if d3 == 0 and _on_segment(a,b,c):
        return True
    if d4 == 0 and _on_segment(a,b,d):
        return True
    return False

def polygon_area(domain):
    return signed_area(domain.vertices)

def polygon_perimeter(domain):
    return domain.Perimeter()

def interior_angles(domain):
    """Interior angle at every polygon vertex, in (0, 2 pi)."""
    v    = domain.vertices
    prev = np.roll(v,1,axis=0) - v
    nxt  = np.roll(v,-1,axis=0) - v
    a_next = np.arctan2(nxt[:,1],nxt[:,0])
    a_prev = np.arctan2(prev[:,1],prev[:,0])
    return np.mod(a_prev - a_next, 2.0*np.pi)

def point_in_domain(domain,points):
    """
    Boolean mask of points strictly inside the domain.

    Parameters:
    - domain: Domain          -> polygon or smooth-curves domain
    - points: np.ndarray(m,2) -> query coordinates
    """
    points = np.atleast_2d(np.asarray(points,dtype=float))
    if domain.kind == "polygon":
        path = Path(np.vstack((domain.vertices,domain.vertices[:1])),closed=True)
        return path.contains_points(points,radius=-1e-12)
    outer = domain.circles[0]
    mask  = np.hypot(points[:,0]-outer[0],points[:,1]-outer[1]) < outer[2]
    for c in domain.circles[1:]:
        mask &= np.hypot(points[:,0]-c[0],points[:,1]-c[1]) > c[2]
    return mask

def annulus(eps,inner_radius=None):
    if inner_radius is None:
        inner_radius = defaults.bie_inner_radius
    if abs(eps) + inner_radius >= 1.0:
        RaiseError(message=f"Inner circle of radius {inner_radius} at eps={eps} touches the outer circle",error=DomainError)
    circles = [(0.0,0.0,1.0,"outer-ccw"),(0.0,float(eps),inner_radius,"inner-cw")]
    return Domain("smooth-curves",name=f"annulus:eps={eps:g}",circles=circles)

def builtin_domain(name):
    """Resolves a built-in domain name; returns None when the name is not a built-in."""
    if name == "gww-a":
        return Domain("polygon",name=name,vertices=GWW_A)
    if name == "gww-b":
        return Domain("polygon",name=name,vertices=GWW_B)
    if name == "unit-square":
        return Domain("polygon",name=name,vertices=[(0,0),(1,0),(1,1),(0,1)])
    if name == "dn-square":
        markers = [DIRICHLET,DIRICHLET,NEUMANN,DIRICHLET]
        return Domain("polygon",name=name,vertices=[(0,0),(1,0),(1,1),(0,1)],markers=markers)
    if name == "dn-triangle":
        s = math.sqrt(2.0)
        markers = [NEUMANN,DIRICHLET,DIRICHLET]
        return Domain("polygon",name=name,vertices=[(0,0),(s,0),(0,s)],markers=markers)
    if name == "unit-disk":
        return Domain("smooth-curves",name=name,circles=[(0.0,0.0,1.0,"outer-ccw")])
    if name.startswith("annulus:"):
        try:
            eps = float(name.split("eps=")[1])
        except (IndexError,ValueError):
            RaiseError(message=f"Cannot read eps from built-in name {name}",error=DomainError)
        return annulus(eps)
    return None

def parse_domain_text(text,name="domain"):
    """
    Parses the line-oriented domain grammar.

    Parameters:
    - text: str -> file content; sections "polygon" (v x y / e i j marker lines),
                   "circles" (c cx cy r orientation lines) and a "weight unit|genus2" line
    - name: str -> name given to the parsed domain
    """
    vertices = list()
    edges    = dict()
    circles  = list()
    weight   = "unit"
    section  = None
    for lineno, raw in enumerate(text.splitlines(),start=1):
        line = raw.split("#")[0].strip()
        if len(line) == 0:
            continue
        tokens = line.split()
        try:
            if tokens[0] in ("polygon","circles"):
                section = tokens[0]
            elif tokens[0] == "weight":
                weight = tokens[1]
            elif tokens[0] == "v" and section == "polygon":
                vertices.append((float(tokens[1]),float(tokens[2])))
            elif tokens[0] == "e" and section == "polygon":
                edges[(int(tokens[1]),int(tokens[2]))] = tokens[3]
            elif tokens[0] == "c" and section == "circles":
                circles.append((float(tokens[1]),float(tokens[2]),float(tokens[3]),tokens[4]))
            else:
                RaiseError(message=f"{name}: line {lineno}: unexpected '{line}'",error=DomainError)
        except (IndexError,ValueError):
            RaiseError(message=f"{name}: line {lineno}: cannot parse '{line}'",error=DomainError)
    if len(vertices) > 0 and len(circles) > 0:
        RaiseError(message=f"{name}: a domain is either a polygon or a set of circles",error=DomainError)
    if len(vertices) > 0:
        n       = len(vertices)
        markers = [DIRICHLET]*n
        for (i,j), marker in edges.items():
            if not (0 <= i < n) or j != (i+1)%n:
                RaiseError(message=f"{name}: edge ({i},{j}) does not join consecutive vertices",error=DomainError)
            markers[i] = marker
        return Domain("polygon",name=name,vertices=vertices,markers=markers,weight=weight)
    if len(circles) > 0:
        return Domain("smooth-curves",name=name,circles=circles,weight=weight)
    RaiseError(message=f"{name}: no polygon or circles section found",error=DomainError)

def load_domain(path):
    """
    Returns a validated Domain from a built-in name or from a domain file.

    Parameters:
    - path: str -> built-in name (gww-a, gww-b, unit-square, unit-disk, annulus:eps=<v>,
                   dn-square, dn-triangle) or path to a domain file
    """
    domain = builtin_domain(path)
    if domain is not None:
        return domain
    if not os.path.isfile(path):
        RaiseError(message=f"Domain file {path} not found",error=DomainError)
    with open(path,"r",encoding="utf-8") as f:
        content = f.read()
    name   = os.path.splitext(os.path.basename(path))[0]
    domain = parse_domain_text(content,name=name)
    PrintInfo(message=f" Domain {name} loaded from {path}")
    return domain
