from spectra.mps.bases import CornerBasis, CentredBasis, Collocation, corner_bases, basis_matrix, basis_size
from spectra.mps.solvers import Enclosure, subspace_sines, sigma_min_sweep, refine_minimum, l2_norm
from spectra.mps.solvers import fhm_enclosure, enclosure_from_epsilon, locate_eigenvalues
