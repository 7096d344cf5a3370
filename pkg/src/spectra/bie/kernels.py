import numpy as np
import scipy.linalg as sla
from spectra.utils.logging import RaiseError, DomainError


NORMALIZATION = "-1/(2 pi) log|x-y|"


class KernelMatrices():
    """
    Nystrom matrices of the Laplace layer operators on a multi-circle boundary.

    Attributes:
    - S:      np.ndarray(N,N) -> single layer, fundamental solution -1/(2 pi) log|x-y|
    - Kp:     np.ndarray(N,N) -> adjoint double layer K'
    - W:      np.ndarray(N,N) -> arclength averaging 1 w^T / |boundary|
    - S0:     np.ndarray(N,N) -> S (I - W), single layer of the mean-free density
    - Khalf:  np.ndarray(N,N) -> (1/2 I + K') (I - W)
    - rhs:    np.ndarray(N,N) -> S0 + W, trace of S[phi - mean] + mean
    - quad:   BoundaryQuadrature
    - normalization: str
    """
    def __init__(self,quad,S,Kp):
        n     = len(quad)
        W     = np.outer(np.ones(n),quad.weights)/quad.Length()
        P     = np.eye(n) - W
        self.quad          = quad
        self.S             = S
        self.Kp            = Kp
        self.W             = W
        self.S0            = S @ P
        self.Khalf         = (0.5*np.eye(n) + Kp) @ P
        self.rhs           = self.S0 + W
        self.normalization = NORMALIZATION

    def __repr__(self):
        return f"KernelMatrices(N={len(self.quad)}, curves={self.quad.ncurves})"


def kress_vector(n):
    """
    First column of the circulant that integrates the periodic log(4 sin^2((t-s)/2)) singularity
    against trigonometric interpolants on n equispaced nodes, scaled as in the self-block formula.
    """
    dt     = 2.0*np.pi/n
    v1     = 4.0*np.sin(np.pi*np.arange(n)/n)**2
    v1[0]  = 1.0
    v1     = 0.5*np.log(v1)/dt
    k      = np.abs(np.fft.fftfreq(n,1.0/n))
    k[0]   = np.inf
    v2     = 0.5*np.fft.ifft(1.0/k).real/dt
    return v1/n + v2

def single_layer(quad):
    """
    Single layer with log-singular self blocks: plain trapezoid kernel with the diagonal replaced
    by -log(speed)/(2 pi) w plus the circulant log correction; cross-curve blocks stay plain.
    """
    x     = quad.nodes
    w     = quad.weights
    diff  = x[:,None,:] - x[None,:,:]
    dist  = np.sqrt(np.sum(diff**2,axis=-1))
    np.fill_diagonal(dist,1.0)
    if np.any(dist <= 0.0):
        RaiseError(message="Coincident quadrature nodes on different curves",error=DomainError)
    S = -np.log(dist)/(2.0*np.pi)*w[None,:]
    for i in range(quad.ncurves):
        block = quad.CurveSlice(i)
        n     = quad.counts[i]
        sub   = S[block,block]
        np.fill_diagonal(sub,-np.log(quad.speed[block])/(2.0*np.pi)*w[block])
        C     = sla.circulant(kress_vector(n))
        S[block,block] = sub + C*w[None,block]
    return S

def adjoint_double_layer(quad):
    """K' with the smooth diagonal limit -kappa(x)/(4 pi) w (signed curvature)."""
    x     = quad.nodes
    w     = quad.weights
    diff  = x[:,None,:] - x[None,:,:]
    r2    = np.sum(diff**2,axis=-1)
    np.fill_diagonal(r2,1.0)
    dot   = np.sum(diff*quad.normals[:,None,:],axis=-1)
    Kp    = -dot/r2/(2.0*np.pi)*w[None,:]
    np.fill_diagonal(Kp,-quad.curvature*w/(4.0*np.pi))
    return Kp

def assemble_kernels(quad):
    return KernelMatrices(quad,single_layer(quad),adjoint_double_layer(quad))
