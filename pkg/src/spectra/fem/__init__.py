from spectra.fem.spaces import FemSpace
from spectra.fem.assembly import assemble_stiffness, assemble_mass, assemble_boundary_mass
from spectra.fem.solvers import EigenProblemSpec, solve_fem, solve_fem_levels, solve_on_mesh, track_eigenspaces
