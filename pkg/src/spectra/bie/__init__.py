from spectra.bie.kernels import KernelMatrices, assemble_kernels, single_layer, adjoint_double_layer, kress_vector
from spectra.bie.solvers import solve_steklov_bie, evaluate_interior, sweep_annulus, is_strictly_decreasing
from spectra.bie.solvers import annulus_table, concentric_convergence, quasimode_deviation
