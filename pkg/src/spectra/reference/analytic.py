import math
import numpy as np
from spectra.specfun.bessel import bessel_j_zero, bessel_jp_zero
from spectra.utils.logging import RaiseError, PrintInfo, UsageError
from spectra.utils.defaults import DIRICHLET, NEUMANN, STEKLOV, MIXED


SIDES = ["left","right","bottom","top"]


class AnalyticSpectrum():
    """
    Closed-form spectrum.

    Attributes:
    - problem:        str             -> e.g. "disk-steklov", "rectangle-mixed"
    - params:         dict            -> radii, side lengths, masks
    - eigenvalues:    np.ndarray      -> ascending, every value repeated by its multiplicity
    - distinct:       np.ndarray      -> ascending distinct values
    - multiplicities: np.ndarray(int) -> multiplicity of every distinct value
    - generator:      str             -> how the list was produced
    """
    def __init__(self,problem,params,values,multiplicities,generator,count=None):
        order  = np.argsort(values,kind="stable")
        values = np.asarray(values,dtype=float)[order]
        mults  = np.asarray(multiplicities,dtype=int)[order]
        distinct, merged = list(), list()
        for v, m in zip(values,mults):
            if len(distinct) > 0 and abs(v-distinct[-1]) <= 1.0e-12*max(1.0,abs(v)):
                merged[-1] += m
            else:
                distinct.append(v)
                merged.append(m)
        self.problem        = problem
        self.params         = params
        self.distinct       = np.array(distinct)
        self.multiplicities = np.array(merged,dtype=int)
        self.eigenvalues    = np.repeat(self.distinct,self.multiplicities)
        self.generator      = generator
        if count is not None:
            if self.eigenvalues.size < count:
                RaiseError(message=f"{problem}: generated {self.eigenvalues.size} values, {count} requested",error=UsageError)
            self.Truncate(count)

    def __len__(self):
        return int(self.eigenvalues.size)

    def __repr__(self):
        return f"AnalyticSpectrum(problem={self.problem!r}, n={len(self)})"

    def Truncate(self,count):
        self.eigenvalues = self.eigenvalues[:count]
        last  = self.eigenvalues[-1] if count > 0 else -np.inf
        keep  = self.distinct <= last
        self.distinct       = self.distinct[keep]
        self.multiplicities = self.multiplicities[keep].copy()
        if self.multiplicities.size > 0:
            self.multiplicities[-1] -= int(np.repeat(self.distinct,self.multiplicities).size - count)

    def MultiplicityOf(self,index):
        """Multiplicity of the eigenvalue at position index of the expanded list."""
        value = self.eigenvalues[index]
        where = np.argmin(np.abs(self.distinct-value))
        return int(self.multiplicities[where])


def _bessel_family(zero,radius,count,include_zero):
    values, mults = list(), list()
    if include_zero:
        values.append(0.0)
        mults.append(1)
    cutoff = math.sqrt(4.0*(count+4))*1.5 + 3.0
    while True:
        vals, ms = list(values), list(mults)
        n = 0
        while True:
            k  = 1
            first = zero(n,1)
            if first > cutoff:
                break
            while True:
                z = zero(n,k)
                if z > cutoff:
                    break
                vals.append((z/radius)**2)
                ms.append(1 if n == 0 else 2)
                k += 1
            n += 1
        if sum(ms) >= count:
            return vals, ms
        cutoff *= 1.5

def disk_spectra(kind,radius,count):
    """
    Dirichlet, Neumann or Steklov spectrum of the disk of the given radius.

    Parameters:
    - kind:   str   -> "dirichlet", "neumann" or "steklov"
    - radius: float -> R > 0
    - count:  int   -> number of eigenvalues (with multiplicity) returned
    """
    if radius <= 0.0:
        RaiseError(message=f"Disk radius must be positive, got {radius}",error=UsageError)
    params = {"radius": radius}
    if kind == DIRICHLET:
        vals, ms = _bessel_family(bessel_j_zero,radius,count,include_zero=False)
        return AnalyticSpectrum("disk-dirichlet",params,vals,ms,"(j_{n,k}/R)^2",count=count)
    if kind == NEUMANN:
        vals, ms = _bessel_family(bessel_jp_zero,radius,count,include_zero=True)
        return AnalyticSpectrum("disk-neumann",params,vals,ms,"(j'_{n,k}/R)^2 and 0",count=count)
    if kind == STEKLOV:
        nmax = count//2 + 1
        vals = [0.0] + [n/radius for n in range(1,nmax+1)]
        ms   = [1] + [2]*nmax
        return AnalyticSpectrum("disk-steklov",params,vals,ms,"n/R",count=count)
    RaiseError(message=f"Unknown disk problem {kind}",error=UsageError)

def _axis_frequencies(length,neumann_low,neumann_high,n):
    if neumann_low and neumann_high:
        return np.arange(0,n)*math.pi/length
    if neumann_low or neumann_high:
        return (np.arange(1,n+1)-0.5)*math.pi/length
    return np.arange(1,n+1)*math.pi/length

def rectangle_spectra(kind,a,b,mask=None,count=6):
    """
    Spectrum of the rectangle [0,a] x [0,b] by separation of variables.

    Parameters:
    - kind:  str       -> "dirichlet", "neumann" or "mixed"
    - a, b:  float     -> side lengths
    - mask:  list(str) -> Neumann sides for "mixed", any subset of left, right, bottom, top
    - count: int       -> number of eigenvalues returned
    """
    if a <= 0.0 or b <= 0.0:
        RaiseError(message=f"Rectangle sides must be positive, got {a} x {b}",error=UsageError)
    if kind == DIRICHLET:
        sides = set()
    elif kind == NEUMANN:
        sides = set(SIDES)
    elif kind == MIXED:
        sides = set(mask or [])
        unknown = sides - set(SIDES)
        if len(unknown) > 0:
            RaiseError(message=f"Unsupported Neumann mask {sorted(unknown)}; sides are {SIDES}",error=UsageError)
    else:
        RaiseError(message=f"Unknown rectangle problem {kind}",error=UsageError)
    kx   = _axis_frequencies(a,"left" in sides,"right" in sides,count+1)
    ky   = _axis_frequencies(b,"bottom" in sides,"top" in sides,count+1)
    vals = (kx[:,None]**2 + ky[None,:]**2).reshape(-1)
    params = {"a": a, "b": b, "neumann_sides": sorted(sides)}
    return AnalyticSpectrum(f"rectangle-{kind}",params,vals,np.ones(vals.size,dtype=int),"pi^2 (m^2/a^2 + n^2/b^2)",count=count)

def annulus_angular_roots(n,ratio):
    """
    The two Steklov eigenvalues of angular mode n >= 1 on the annulus ratio < rho < 1: roots of
    ratio (1-t) s^2 - n (1+ratio)(1+t) s + n^2 (1-t) = 0 with t = ratio^(2n).
    """
    t    = ratio**(2*n)
    A    = ratio*(1.0-t)
    B    = n*(1.0+ratio)*(1.0+t)
    disc = B*B - 4.0*A*n*n*(1.0-t)
    high = (B + math.sqrt(disc))/(2.0*A)
    low  = n*n/(ratio*high)
    return low, high

def annulus_radial_root(ratio):
    return -(1.0 + 1.0/ratio)/math.log(ratio)

def concentric_annulus_steklov(r_inner,r_outer,count):
    """
    Steklov spectrum of the concentric annulus r_inner < |x| < r_outer, counted from sigma_0 = 0.
    Values scale as 1/r_outer, so the roots are computed for the radius ratio and divided by r_outer.
    """
    if not (0.0 < r_inner < r_outer):
        RaiseError(message=f"Annulus needs 0 < r_inner < r_outer, got {r_inner}, {r_outer}",error=UsageError)
    ratio = r_inner/r_outer
    vals  = [0.0, annulus_radial_root(ratio)/r_outer]
    ms    = [1, 1]
    for n in range(1,count+2):
        low, high = annulus_angular_roots(n,ratio)
        vals += [low/r_outer, high/r_outer]
        ms   += [2, 2]
    params = {"r_inner": r_inner, "r_outer": r_outer}
    return AnalyticSpectrum("annulus-steklov",params,vals,ms,"radial mode and 2x2 angular determinants",count=count)

def union_spectrum(spec_a,spec_b,count=None):
    """Merged ascending list of two spectra; multiplicities add on exact ties."""
    vals = np.concatenate((spec_a.distinct,spec_b.distinct))
    ms   = np.concatenate((spec_a.multiplicities,spec_b.multiplicities))
    params = {"parts": [spec_a.problem,spec_b.problem]}
    if count is None:
        count = len(spec_a) + len(spec_b)
    return AnalyticSpectrum("union",params,vals,ms,f"union of {spec_a.problem} and {spec_b.problem}",count=count)

def weyl_eigenvalue(area,perimeter,k,bc=DIRICHLET):
    """
    Two-term Weyl estimate of the kth eigenvalue: area l/(4 pi) -+ perimeter sqrt(l)/(4 pi) = k
    (minus for Dirichlet, plus for Neumann).
    """
    sign = 1.0 if bc == DIRICHLET else -1.0
    s    = (sign*perimeter + math.sqrt(perimeter**2 + 16.0*math.pi*area*k))/(2.0*area)
    return s*s

def faber_krahn_constant():
    """Area-normalized first Dirichlet eigenvalue of the disk, pi j_{0,1}^2."""
    return math.pi*bessel_j_zero(0.0,1)**2

def concentric_to_disk_continuity(count=6,ratios=(1e-2,1e-4,1e-8)):
    """
    Logs the distance between the concentric annulus spectrum and the unit-disk Steklov spectrum
    as the hole shrinks. Only the lowest values are compared.
    """
    disk = disk_spectra(STEKLOV,1.0,count).eigenvalues
    gaps = list()
    for r in ratios:
        ann  = concentric_annulus_steklov(r,1.0,count+1).eigenvalues
        # the radial mode escapes to infinity as r -> 0
        ann  = np.sort(ann[ann < 0.5*annulus_radial_root(r)])[:count]
        gap  = float(np.max(np.abs(ann-disk[:ann.size]))) if ann.size > 0 else float("nan")
        gaps.append(gap)
        PrintInfo(message=f" Concentric annulus r={r:g}: max distance to disk Steklov values {gap:.3e}")
    return gaps
