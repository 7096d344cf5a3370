import os
import argparse
import numpy as np
from spectra.config.ini import check_config
from spectra.geometry.domains import load_domain
from spectra.utils.logging import RaiseError, UsageError
from spectra.utils.defaults import VERSION, DIRICHLET, STEKLOV, MIXED, defaults


global compatibility
compatibility = """
 method   | domain        | boundary conditions
 ---------+---------------+----------------------------------------------
 fem-p1   | polygon       | dirichlet, neumann, mixed, steklov
 fem-p2   | polygon       | dirichlet, neumann, mixed, steklov
 fem-cr   | polygon       | dirichlet, neumann, mixed; steklov needs --cr-midpoint
 bie      | smooth curves | steklov
 mps      | polygon       | dirichlet (needs --bracket)
"""

SUBCOMMAND_DEFAULTS = {
    "solve":    {"method": "fem-p1", "count": defaults.default_count},
    "compare":  {"method": "fem-p2", "count": 10},
    "sweep":    {"method": "bie", "bc": STEKLOV, "n": 660, "eps": "0:0.88:45", "k": "1", "domain": "annulus:eps=0"},
    "bounds":   {"method": "fem-cr", "index": 1, "domain": "unit-square"},
    "validate": {},
}


class RunConfig():
    """
    Everything one command needs, after flags, spectra.ini and defaults are merged (in that order).

    Attributes:
    - subcommand: str       -> solve, compare, sweep, bounds or validate
    - domain:     str       -> built-in name or domain file
    - domain2:    str       -> second domain of compare
    - method:     str       -> fem-p1, fem-p2, fem-cr, bie or mps
    - bc:         str       -> dirichlet, neumann, mixed or steklov
    - count:      int       -> eigenvalues requested
    - levels:     int       -> refinement levels 1..levels
    - n:          int       -> boundary nodes per curve (bie)
    - eps:        list      -> eccentricity grid of the sweep
    - k:          list(int) -> Steklov indices followed by the sweep
    - index:      int       -> 1-based eigenvalue index of bounds
    - bracket:    tuple     -> lambda interval searched by mps
    - outdir:     str       -> output directory (SPECTRA_OUT, read at run time, otherwise ./spectra-out)
    - seed, threads, cluster, split, variant, corners, basis, step, modes, quiet
    """
    def __init__(self,subcommand):
        self.subcommand = subcommand
        self.domain     = None
        self.domain2    = None
        self.method     = defaults.default_method
        self.bc         = defaults.default_bc
        self.count      = defaults.default_count
        self.levels     = defaults.default_levels
        self.n          = defaults.default_n
        self.eps        = None
        self.k          = None
        self.index      = None
        self.bracket    = None
        self.step       = defaults.mps_step
        self.corners    = "single"
        self.basis      = defaults.mps_basis_size
        self.seed       = defaults.default_seed
        self.threads    = defaults.default_threads
        self.outdir     = None
        self.cluster    = defaults.cluster_radius
        self.split      = "per-curve"
        self.variant    = None
        self.modes      = False
        self.quiet      = False

    def __repr__(self):
        return f"RunConfig(subcommand={self.subcommand!r}, domain={self.domain!r}, method={self.method!r}, bc={self.bc!r})"

    def Set(self,key,value):
        if value is None:
            return
        parsers = {
            "count": int, "levels": int, "n": int, "index": int, "seed": int, "threads": int, "basis": int,
            "step": float, "cluster": float, "eps": parse_grid, "k": parse_ints, "bracket": parse_bracket,
            "out": str, "variant": str,
        }
        try:
            value = parsers.get(key,str)(value) if isinstance(value,str) else value
        except ValueError as err:
            RaiseError(message=f"Cannot read --{key} {value}: {err}",error=UsageError)
        choices = {"method": defaults.available_methods, "bc": defaults.available_bcs,
                   "corners": ["single","singular","all"], "split": ["total","per-curve"], "variant": ["cr-midpoint"]}
        if key in choices and value not in choices[key]:
            RaiseError(message=f"--{key} {value} not in {choices[key]}",error=UsageError)
        setattr(self,"outdir" if key == "out" else key,value)

    def Domains(self):
        """Loads and validates the domains named by the configuration."""
        if self.domain is None:
            RaiseError(message=f"{self.subcommand} needs --domain",error=UsageError)
        domains = [load_domain(self.domain)]
        if self.subcommand == "compare":
            if self.domain2 is None:
                RaiseError(message="compare needs --domain2",error=UsageError)
            domains.append(load_domain(self.domain2))
        for domain in domains:
            self.CheckCompatibility(domain)
        return domains

    def CheckCompatibility(self,domain):
        message = None
        if self.method == "bie" and (domain.kind != "smooth-curves" or self.bc != STEKLOV):
            message = "bie needs a smooth-curves domain and --bc steklov"
        elif self.method == "mps" and (domain.kind != "polygon" or self.bc != DIRICHLET):
            message = "mps needs a polygon and --bc dirichlet"
        elif self.method == "mps" and self.subcommand == "solve" and self.bracket is None:
            message = "mps needs --bracket lo:hi"
        elif self.method.startswith("fem") and domain.kind != "polygon":
            message = f"{self.method} needs a polygon"
        elif self.method == "fem-cr" and self.variant != "cr-midpoint":
            steklov = self.bc == STEKLOV or (self.bc == MIXED and STEKLOV in domain.markers)
            if steklov:
                message = "fem-cr with Steklov edges needs --cr-midpoint"
        if message is not None:
            RaiseError(message=f"{message} (domain {domain.name}, method {self.method}, bc {self.bc})\n{compatibility}",error=UsageError)

    def Outdir(self):
        if self.outdir is not None:
            return self.outdir
        return os.environ.get("SPECTRA_OUT",defaults.default_outdir)


def parse_grid(text):
    """lo:hi:count -> linspace, or a comma-separated list."""
    if ":" in text:
        lo, hi, count = text.split(":")
        return np.linspace(float(lo),float(hi),int(count)).tolist()
    return [float(x) for x in text.split(",")]

def parse_ints(text):
    return [int(x) for x in text.split(",")]

def parse_bracket(text):
    lo, hi = text.split(":")
    return (float(lo),float(hi))

def build_parser():
    parser = argparse.ArgumentParser(prog="spectra",description="Planar Laplace eigenvalues by finite elements, boundary integrals and particular solutions")
    parser.add_argument("--version",action="version",version=f"spectra {VERSION}")
    subparsers = parser.add_subparsers(dest="subcommand",required=True)
    for name in defaults.available_subcmds:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config",default=None,help="spectra.ini with a [run] section")
        sub.add_argument("--domain",default=None,help="built-in name or domain file")
        sub.add_argument("--domain2",default=None,help="second domain (compare)")
        sub.add_argument("--method",default=None,choices=defaults.available_methods)
        sub.add_argument("--bc",default=None,choices=defaults.available_bcs)
        sub.add_argument("--count",default=None)
        sub.add_argument("--levels",default=None)
        sub.add_argument("--n",default=None,help="boundary nodes per curve")
        sub.add_argument("--eps",default=None,help="lo:hi:count or comma list")
        sub.add_argument("--k",default=None,help="comma list of Steklov indices")
        sub.add_argument("--index",default=None)
        sub.add_argument("--bracket",default=None,help="lo:hi")
        sub.add_argument("--step",default=None)
        sub.add_argument("--corners",default=None,choices=["single","singular","all"])
        sub.add_argument("--basis",default=None,help="Fourier-Bessel functions per corner")
        sub.add_argument("--seed",default=None)
        sub.add_argument("--threads",default=None)
        sub.add_argument("--out",default=None)
        sub.add_argument("--cluster",default=None,help="relative clustering radius")
        sub.add_argument("--split",default=None,choices=["total","per-curve"])
        sub.add_argument("--cr-midpoint",dest="variant",action="store_const",const="cr-midpoint",default=None)
        sub.add_argument("--modes",action="store_true",help="write nodal lines to modes.svg")
        sub.add_argument("--quiet",action="store_true")
    return parser

def read_config(config_file):
    """[run] values of a spectra.ini as strings."""
    config = check_config(config_file)
    return dict(config["run"])

def read_cmd_args(argv=None):
    """
    Parses the command line into a RunConfig: flags win over spectra.ini (given by --config or
    found in the working directory), which wins over the subcommand defaults.
    """
    args   = build_parser().parse_args(argv)
    config = RunConfig(args.subcommand)
    for key, value in SUBCOMMAND_DEFAULTS[args.subcommand].items():
        config.Set(key,value)
    ini = args.config
    if ini is None and os.path.isfile(os.path.join(os.getcwd(),defaults.config_filename)):
        ini = os.path.join(os.getcwd(),defaults.config_filename)
    if ini is not None:
        for key, value in read_config(ini).items():
            config.Set(key,value)
    for key in ["domain","domain2","method","bc","count","levels","n","eps","k","index","bracket","step",
                "corners","basis","seed","threads","out","cluster","split","variant"]:
        config.Set(key,getattr(args,key))
    config.modes = args.modes
    config.quiet = args.quiet
    return config
