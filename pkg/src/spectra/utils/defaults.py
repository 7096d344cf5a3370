import os
from spectra.utils.logging import PrintInfo


VERSION = "1.0.0"

DIRICHLET = "dirichlet"
NEUMANN   = "neumann"
STEKLOV   = "steklov"
MIXED     = "mixed"

class constants():
    def __init__(self):
        self.root                 = os.getcwd()
        self.default_outdir       = os.environ.get("SPECTRA_OUT",os.path.join(self.root,"spectra-out"))
        self.config_filename      = "spectra.ini"
        self.available_methods    = ["fem-p1","fem-p2","fem-cr","bie","mps"]
        self.available_bcs        = [DIRICHLET,NEUMANN,MIXED,STEKLOV]
        self.available_subcmds    = ["solve","compare","sweep","bounds","validate"]
        self.default_method       = "fem-p1"
        self.default_bc           = DIRICHLET
        self.default_count        = 6
        self.default_levels       = 4
        self.default_n            = 128
        self.default_seed         = 20
        self.default_threads      = 1
        self.cluster_radius       = 1.0e-6
        self.dense_limit          = 4000
        self.subspace_tol         = 1.0e-10
        self.subspace_maxiter     = 500
        self.symmetry_tol         = 1.0e-12
        self.condition_gate       = 1.0e12
        self.real_tol             = 1.0e-8
        self.complex_reject_tol   = 1.0e-6
        self.mps_oversampling     = 2
        self.mps_basis_size       = 20
        self.mps_rtol             = 1.0e-14
        self.mps_edge_samples     = 1000
        self.mps_quadrature_level = 3
        self.bie_inner_radius     = 0.1
        self.eps_max              = 0.9
        self.asymptotic_rate_tol  = 0.10
        self.compare_rtol         = 1.0e-3
        self.compare_atol         = 1.0e-8
        self.mps_step             = 0.05

        PrintInfo(message=' Default parameters loaded')


global defaults
defaults = constants()
