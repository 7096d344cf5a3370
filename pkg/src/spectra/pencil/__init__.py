from spectra.pencil.solvers import Pencil, Spectrum, solve_symdef, solve_general, subspace_gap
from spectra.pencil.solvers import subspace_iteration, cluster_eigenvalues, is_symmetric, condition_estimate
