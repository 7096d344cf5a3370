import time
import numpy as np
import pandas as pd
from multiprocessing.pool import ThreadPool
from tqdm import tqdm
from spectra.geometry.domains import annulus, point_in_domain
from spectra.geometry.quadrature import BoundaryQuadrature, split_nodes
from spectra.bie.kernels import assemble_kernels
from spectra.pencil.solvers import Pencil, Spectrum, solve_general, condition_estimate
from spectra.reference.analytic import concentric_annulus_steklov, disk_spectra, union_spectrum
from spectra.utils.logging import RaiseError, RaiseWarning, PrintInfo, DomainError, NumericalQualityError, UsageError
from spectra.utils.defaults import STEKLOV, defaults
from spectra.utils import printing


TABLE_SCHEDULE = [130,260,520,780,1040]
TABLE_KS       = [1,2,10,100]


def _halve(counts):
    return [max(2,2*(n//4)) for n in counts]

def solve_steklov_bie(domain,n_per_curve,count=None,phase=0.0,vectors=False,gate=None):
    """
    Steklov eigenvalues of a multi-circle domain from the pencil
    (1/2 I + K')(I - W) phi = sigma (S (I - W) + W) phi, solved by QZ.

    Parameters:
    - domain:      Domain    -> smooth-curves domain
    - n_per_curve: int|list  -> even node count on every curve (or one count per curve)
    - count:       int       -> eigenvalues checked for realness and returned (all when None)
    - phase:       float     -> node offset as a fraction of the node spacing
    - vectors:     bool      -> keep the densities
    """
    if domain.kind != "smooth-curves":
        RaiseError(message=f"Domain {domain.name}: boundary integrals need smooth curves",error=DomainError)
    gate   = defaults.condition_gate if gate is None else gate
    counts = [int(n_per_curve)]*len(domain.circles) if np.isscalar(n_per_curve) else [int(n) for n in n_per_curve]
    while True:
        quad    = BoundaryQuadrature(domain,counts,phase=phase)
        kernels = assemble_kernels(quad)
        cond    = condition_estimate(kernels.rhs)
        if cond <= gate:
            break
        smaller = _halve(counts)
        if smaller == counts or min(smaller) < 4:
            RaiseError(message=f"Single-layer side ill-conditioned (condition {cond:.3e}) at N={counts}",error=NumericalQualityError)
        RaiseWarning(message=f" Single-layer condition {cond:.3e} above {gate:.1e} at N={counts}; halving to {smaller}")
        counts = smaller
    ntotal = len(quad)
    if count is None:
        count = ntotal
    if count > ntotal:
        RaiseError(message=f"{count} eigenvalues requested from {ntotal} boundary nodes",error=UsageError)
    general = solve_general(Pencil(kernels.Khalf,kernels.rhs),vectors=vectors,gate=gate)
    values  = np.asarray(general.eigenvalues)
    if np.iscomplexobj(values):
        head  = values[:count]
        worst = np.max(np.abs(head.imag)/np.maximum(np.abs(head),np.finfo(float).tiny))
        if worst > defaults.complex_reject_tol:
            RaiseError(message=f"Complex Steklov eigenvalues among the first {count}: relative imaginary part {worst:.3e} (under-resolved, increase N)",
                       error=NumericalQualityError)
        values = values.real
    order   = np.argsort(values[:count],kind="stable")
    values  = values[:count][order]
    density = None
    if vectors:
        density = np.real(general.vectors[:,:count][:,order])
    spectrum = Spectrum(values,vectors=density,method="bie",param=ntotal,domain=domain.name)
    spectrum.condition = general.condition
    spectrum.quad      = quad
    spectrum.FlagZeroMode(tol=1.0e-8)
    if values[0] < -1.0e-10:
        RaiseWarning(message=f" Smallest BIE eigenvalue {values[0]:.3e} is negative")
    return spectrum

def evaluate_interior(quad,density,points):
    """
    Single-layer potential of the mean-free density, u(x) = sum_j Phi(x, y_j) (phi_j - mean) w_j.
    Points closer to the boundary than three node spacings are rejected.
    """
    points  = np.atleast_2d(np.asarray(points,dtype=float))
    density = np.asarray(density,dtype=float)
    inside  = point_in_domain(quad.domain,points)
    if not np.all(inside):
        RaiseError(message=f"{int((~inside).sum())} evaluation points lie outside the domain",error=DomainError)
    dist    = np.sqrt(np.sum((points[:,None,:]-quad.nodes[None,:,:])**2,axis=-1))
    limit   = 3.0*quad.Spacing()
    if dist.min() < limit:
        RaiseError(message=f"Evaluation point at distance {dist.min():.3e} from the boundary, below {limit:.3e}",error=DomainError)
    mean    = np.dot(quad.weights,density)/quad.Length()
    return -np.log(dist)/(2.0*np.pi) @ ((density-mean)*quad.weights)

def _annulus_spectrum(eps,n_per_curve,count,split):
    domain = annulus(eps)
    counts = split_nodes(domain,n_per_curve,split)
    return solve_steklov_bie(domain,counts,count=count)

def sweep_annulus(eps_grid,n_per_curve,k_list,split="per-curve",threads=1):
    """
    sigma_k on the eccentric annulus B_1(0,0) minus B_0.1(0,eps) over an eps grid, with the ratio
    to the concentric closed form. Rows are ordered by eps, then k.
    """
    eps_grid = [float(e) for e in eps_grid]
    for eps in eps_grid:
        if eps < 0.0 or eps + defaults.bie_inner_radius >= 1.0:
            RaiseError(message=f"eps={eps} outside [0, {1.0-defaults.bie_inner_radius:g})",error=DomainError)
    k_list    = [int(k) for k in k_list]
    count     = max(k_list) + 1
    reference = concentric_annulus_steklov(defaults.bie_inner_radius,1.0,count).eigenvalues
    job       = lambda eps: _annulus_spectrum(eps,n_per_curve,count,split)
    start     = time.time()
    if threads > 1:
        with ThreadPool(threads) as pool:
            spectra = list(tqdm(pool.imap(job,eps_grid),total=len(eps_grid),desc="eps sweep",disable=printing.quiet,leave=False))
    else:
        spectra = [job(eps) for eps in tqdm(eps_grid,desc="eps sweep",disable=printing.quiet,leave=False)]
    rows = list()
    for eps, spectrum in zip(eps_grid,spectra):
        for k in k_list:
            sigma = float(spectrum.eigenvalues[k])
            ratio = sigma/reference[k] if reference[k] != 0.0 else float("nan")
            rows.append({"eps": eps, "k": k, "sigma": sigma, "ratio_to_concentric": ratio, "N": spectrum.param})
    PrintInfo(message=f" Annulus sweep over {len(eps_grid)} eps values done in {time.time()-start:.3f} s")
    return pd.DataFrame(rows,columns=["eps","k","sigma","ratio_to_concentric","N"])

def is_strictly_decreasing(frame,k=1):
    column = frame[frame["k"] == k].sort_values("eps")["sigma"].to_numpy()
    return bool(np.all(np.diff(column) < 0.0))

def annulus_table(eps=0.88,n_schedule=None,ks=None,split="total"):
    """Convergence table of selected sigma_k on one eccentric annulus over a node schedule."""
    n_schedule = TABLE_SCHEDULE if n_schedule is None else n_schedule
    ks         = TABLE_KS if ks is None else ks
    rows       = list()
    for n in tqdm(n_schedule,desc=f"annulus eps={eps:g}",disable=printing.quiet,leave=False):
        spectrum = _annulus_spectrum(eps,n,max(ks)+1,split)
        for k in ks:
            rows.append({"N": int(n), "split": split, "k": int(k), "sigma": float(spectrum.eigenvalues[k])})
    return pd.DataFrame(rows,columns=["N","split","k","sigma"])

def concentric_convergence(n_schedule,count=20,split="per-curve"):
    """Summed relative error of the first count nonzero eigenvalues against the closed form, per N."""
    reference = concentric_annulus_steklov(defaults.bie_inner_radius,1.0,count+1).eigenvalues[1:]
    rows      = list()
    for n in n_schedule:
        spectrum = _annulus_spectrum(0.0,n,count+1,split)
        error    = float(np.sum(np.abs(spectrum.eigenvalues[1:]-reference)/reference))
        rows.append({"N": spectrum.param, "error": error})
    return pd.DataFrame(rows,columns=["N","error"])

def quasimode_deviation(eps,n_per_curve,k_range=(50,200),split="per-curve"):
    """
    Relative deviation of sigma_k on the eccentric annulus from the merged Steklov spectra of the
    two boundary disks, both lists counted from their first zero.
    """
    k_lo, k_hi = int(k_range[0]), int(k_range[1])
    spectrum   = _annulus_spectrum(eps,n_per_curve,k_hi+1,split)
    union      = union_spectrum(disk_spectra(STEKLOV,1.0,k_hi+1),disk_spectra(STEKLOV,defaults.bie_inner_radius,k_hi+1),count=k_hi+1)
    ks         = np.arange(k_lo,k_hi+1)
    sigma      = spectrum.eigenvalues[ks]
    merged     = union.eigenvalues[ks]
    return pd.DataFrame({"k": ks, "sigma": sigma, "union": merged, "deviation": (sigma-merged)/merged})
