import math
import numpy as np
from scipy.special import jv, jvp
from scipy.optimize import brentq
from spectra.utils.logging import RaiseError, NumericalQualityError


global MAX_ORDER, MAX_ARGUMENT, MAX_ZERO_INDEX
MAX_ORDER      = 200.0
MAX_ARGUMENT   = 1.0e4
MAX_ZERO_INDEX = 100


class BesselEval():
    """
    One evaluation of J_nu and its derivative.

    Attributes:
    - order:      float -> nu >= 0
    - argument:   float -> x >= 0
    - value:      float -> J_nu(x)
    - derivative: float -> J_nu'(x)
    """
    def __init__(self,order,argument):
        check_domain(order,argument)
        self.order      = float(order)
        self.argument   = float(argument)
        self.value      = float(jv(order,argument))
        self.derivative = float(jvp(order,argument))

    def __repr__(self):
        return f"BesselEval(order={self.order}, argument={self.argument}, value={self.value:.15g})"


def check_domain(nu,x):
    nu = np.asarray(nu,dtype=float)
    x  = np.asarray(x,dtype=float)
    if np.any(nu < 0.0) or np.any(nu > MAX_ORDER):
        RaiseError(message=f"Bessel order outside [0, {MAX_ORDER:g}]: max {float(np.max(nu)):g}",error=NumericalQualityError)
    if np.any(x < 0.0) or np.any(x > MAX_ARGUMENT):
        RaiseError(message=f"Bessel argument outside [0, {MAX_ARGUMENT:g}]: max {float(np.max(x)):g}",error=NumericalQualityError)

def bessel_j(nu,x):
    """
    J_nu(x) for real order nu and real argument x inside the accuracy domain
    (0 <= nu <= 200, 0 <= x <= 1e4). Broadcasts like numpy.
    """
    check_domain(nu,x)
    return jv(nu,x)

def bessel_jp(nu,x):
    """Derivative of J_nu with respect to x."""
    check_domain(nu,x)
    return jvp(nu,x)

def mcmahon(nu,k,derivative=False):
    """Large-zero asymptotic estimate of the kth positive zero of J_nu (or of J_nu')."""
    mu = 4.0*nu*nu
    if derivative:
        b = (k + 0.5*nu - 0.75)*math.pi
        return b - (mu+3.0)/(8.0*b) - 4.0*(7.0*mu*mu+82.0*mu-9.0)/(3.0*(8.0*b)**3)
    b = (k + 0.5*nu - 0.25)*math.pi
    return b - (mu-1.0)/(8.0*b) - 4.0*(mu-1.0)*(7.0*mu-31.0)/(3.0*(8.0*b)**3)

def _kth_root(func,nu,k,guess,step=0.25):
    lo     = max(nu,1.0e-8)
    hi     = max(guess,lo) + math.pi
    found  = 0
    left   = lo
    f_left = func(left)
    while True:
        grid   = np.arange(left+step,hi+step,step)
        values = func(grid)
        for x, f in zip(grid,values):
            if f_left != 0.0 and np.sign(f) != np.sign(f_left):
                found += 1
                if found == k:
                    return brentq(func,left,x,xtol=1.0e-14,rtol=4.0*np.finfo(float).eps)
            left, f_left = x, f
        hi += (k-found+1)*math.pi
        if hi > MAX_ARGUMENT:
            RaiseError(message=f"Bracketing of zero {k} of order {nu:g} failed below {MAX_ARGUMENT:g}",error=NumericalQualityError)

def bessel_j_zero(nu,k):
    """
    kth positive zero of J_nu. The McMahon estimate sets the scan window, sign changes on a
    fine grid bracket the zero and brentq refines it.

    Parameters:
    - nu: float -> order in [0, 200]
    - k:  int   -> zero index in [1, 100]
    """
    if k < 1 or k > MAX_ZERO_INDEX:
        RaiseError(message=f"Zero index {k} outside [1, {MAX_ZERO_INDEX}]",error=NumericalQualityError)
    check_domain(nu,0.0)
    return _kth_root(lambda x: jv(nu,x),nu,k,mcmahon(nu,k))

def bessel_jp_zero(nu,k):
    """kth positive zero of J_nu' (x = 0 excluded)."""
    if k < 1 or k > MAX_ZERO_INDEX:
        RaiseError(message=f"Zero index {k} outside [1, {MAX_ZERO_INDEX}]",error=NumericalQualityError)
    check_domain(nu,0.0)
    return _kth_root(lambda x: jvp(nu,x),nu,k,mcmahon(nu,k,derivative=True))
