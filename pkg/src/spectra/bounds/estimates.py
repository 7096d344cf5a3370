import numpy as np
from spectra.specfun.bessel import bessel_j_zero
from spectra.utils.logging import RaiseError, RaiseWarning, UsageError
from spectra.utils.defaults import defaults


def cr_constant():
    """kappa^2 = 1/8 + 1/j_{1,1}^2 of the nonconforming lower bound."""
    return 0.125 + 1.0/bessel_j_zero(1.0,1)**2

def cr_lower_bound(lam_cr,h):
    """
    Guaranteed lower bound lam_cr / (1 + kappa^2 h^2 lam_cr) from a Crouzeix-Raviart Dirichlet
    eigenvalue on a mesh of maximal edge length h, assuming the algebraic eigenproblem is solved
    exactly.
    """
    lam_cr = np.asarray(lam_cr,dtype=float)
    if np.any(lam_cr <= 0.0) or h <= 0.0:
        RaiseError(message=f"Lower bound needs positive eigenvalue and mesh size, got {lam_cr} and {h}",error=UsageError)
    bound = lam_cr/(1.0 + cr_constant()*h*h*lam_cr)
    return float(bound) if bound.ndim == 0 else bound

def _window(v,ratio):
    d1, d2 = v[0]-v[1], v[1]-v[2]
    if d2 == 0.0 or d1/d2 <= 1.0:
        return None
    rate  = np.log(d1/d2)/np.log(ratio)
    limit = v[2] - d2/(ratio**rate - 1.0)
    return limit, rate

def richardson_extrapolate(values,hs,tol=None):
    """
    Fits v(h) = v* + C h^r on consecutive triples of levels.

    Parameters:
    - values: list(float) -> one value per level, coarsest first
    - hs:     list(float) -> mesh sizes, halving from level to level
    - tol:    float       -> relative agreement of successive rates for the asymptotic flag

    Returns:
    - limit:      float -> estimate from the finest triple, or the finest value when the rate is undefined
    - rate:       float -> observed rate of the finest triple (nan when undefined)
    - asymptotic: bool  -> successive rate estimates agree within tol
    """
    tol    = defaults.asymptotic_rate_tol if tol is None else tol
    values = np.asarray(values,dtype=float)
    hs     = np.asarray(hs,dtype=float)
    if values.size < 3 or values.size != hs.size:
        RaiseError(message=f"Extrapolation needs at least three levels with matching mesh sizes, got {values.size} and {hs.size}",error=UsageError)
    ratios = hs[:-1]/hs[1:]
    if np.any(np.abs(ratios-ratios[0]) > 1.0e-8*ratios[0]) or ratios[0] <= 1.0:
        RaiseWarning(message=f" Mesh sizes do not shrink by a constant factor: {hs}")
    fits = [_window(values[i:i+3],ratios[i]) for i in range(values.size-2)]
    if fits[-1] is None:
        return float(values[-1]), float("nan"), False
    limit, rate = fits[-1]
    asymptotic  = False
    if len(fits) > 1 and fits[-2] is not None:
        asymptotic = bool(abs(fits[-2][1]-rate) <= tol*abs(rate))
    return float(limit), float(rate), asymptotic

def ordering_breaks(finest,limits,order=("cr","p2","p1"),label=""):
    """
    Adjacent pairs of the element order whose finest-level values are ordered but whose
    extrapolated limits are not. Each break is reported as a warning.

    Parameters:
    - finest: dict -> element column -> finest-level value
    - limits: dict -> element column -> extrapolated value
    - order:  tuple -> columns expected in ascending order
    """
    breaks = list()
    for low, high in zip(order[:-1],order[1:]):
        if finest[low] <= finest[high] and limits[low] > limits[high]:
            breaks.append((low,high))
            RaiseWarning(message=f" {label}extrapolated {low}={limits[low]:.10g} above {high}={limits[high]:.10g} while the finest level has {finest[low]:.10g} <= {finest[high]:.10g}")
    return breaks
