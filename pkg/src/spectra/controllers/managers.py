import os
import time
import numpy as np
import pandas as pd
from spectra.geometry.domains import builtin_domain, polygon_area, polygon_perimeter
from spectra.geometry.meshes import mesh_hierarchy
from spectra.geometry.quadrature import split_nodes
from spectra.specfun.bessel import bessel_j_zero
from spectra.pencil.solvers import Spectrum
from spectra.fem.solvers import EigenProblemSpec, solve_on_mesh, solve_fem
from spectra.bie.solvers import solve_steklov_bie, sweep_annulus, is_strictly_decreasing
from spectra.mps.bases import corner_bases, Collocation, basis_size
from spectra.mps.solvers import locate_eigenvalues
from spectra.bounds.estimates import cr_lower_bound, richardson_extrapolate
from spectra.bounds.reports import bracket_report
from spectra.reference.analytic import disk_spectra, rectangle_spectra, concentric_annulus_steklov
from spectra.reference.analytic import faber_krahn_constant, weyl_eigenvalue
from spectra.files.outputs import PrepareOutdir, write_spectrum, write_sweep, write_smin, write_enclosures
from spectra.files.outputs import write_bracket_report, write_table, write_modes_svg, provenance
from spectra.utils.logging import RaiseError, RaiseWarning, PrintInfo, UsageError, ValidationFailure
from spectra.utils.printing import PrintOnTerminal, PrintLine, PrintTable
from spectra.utils.defaults import VERSION, DIRICHLET, STEKLOV, defaults


KINDS = {"fem-p1": "P1", "fem-p2": "P2", "fem-cr": "CR"}


def level_spectra(domain,config):
    """
    Finite element spectra on levels 1..config.levels. Coarse levels with too few free dofs for
    the requested count are skipped.
    """
    spec    = EigenProblemSpec(config.bc,config.count,kind=KINDS[config.method],variant=config.variant)
    spectra = list()
    for mesh in mesh_hierarchy(domain,config.levels):
        msg   = f"{config.method} {domain.name} level {mesh.level}"
        start = time.time()
        PrintOnTerminal(msg=msg)
        try:
            spectrum = solve_on_mesh(domain,mesh,spec.WithLevel(mesh.level))
        except UsageError as err:
            if mesh.level == config.levels:
                raise
            PrintOnTerminal(duration=time.time()-start,msgLength=len(msg))
            RaiseWarning(message=f" Level {mesh.level} skipped: {err}")
            continue
        PrintOnTerminal(duration=time.time()-start,msgLength=len(msg))
        spectra.append(spectrum)
    return spectra

def extrapolate_spectra(spectra):
    """Per index: extrapolated value, rate, asymptotic flag and the finest-level deviation."""
    rows = list()
    hs   = [s.param for s in spectra]
    for i in range(len(spectra[-1])):
        values = [float(s.eigenvalues[i]) for s in spectra]
        if len(spectra) >= 3:
            limit, rate, flag = richardson_extrapolate(values,hs)
        else:
            limit, rate, flag = values[-1], float("nan"), False
        rows.append({"position": i, "eigenvalue": limit, "rate": rate, "asymptotic": flag,
                     "deviation": abs(values[-1]-limit)})
    return pd.DataFrame(rows)

def run_solve(config):
    domain = config.Domains()[0]
    outdir = PrepareOutdir(config.Outdir())
    path   = os.path.join(outdir,"spectrum.csv")
    if config.method in KINDS:
        spectra  = level_spectra(domain,config)
        spectrum = spectra[-1]
        write_spectrum(spectrum,path)
        if len(spectra) >= 3:
            table = extrapolate_spectra(spectra)
            start = 0 if spectrum.zero_mode else 1
            table.insert(0,"index",table.pop("position")+start)
            for key, value in provenance(f"{config.method}-extrapolated",len(spectra),domain.name).items():
                table[key] = value
            write_table(table,os.path.join(outdir,"extrapolated.csv"))
            PrintTable(["index","finest","extrapolated","rate"],
                       [[int(r["index"]),float(spectrum.eigenvalues[j]),float(r["eigenvalue"]),float(r["rate"])] for j, r in table.iterrows()])
        if config.modes:
            write_modes_svg(spectrum,os.path.join(outdir,"modes.svg"))
    elif config.method == "bie":
        counts   = split_nodes(domain,config.n,config.split)
        spectrum = solve_steklov_bie(domain,counts,count=config.count)
        write_spectrum(spectrum,path)
        PrintTable(["index","sigma","multiplicity"],[[i,float(v),int(m)] for i, (v, m) in enumerate(zip(spectrum.eigenvalues,spectrum.multiplicities))])
    else:
        bases  = corner_bases(domain,config.corners,config.basis)
        colloc = Collocation(domain,bases,seed=config.seed)
        lo, hi = config.bracket
        sweep, found = locate_eigenvalues(domain,bases,lo,hi,config.step,threads=config.threads,colloc=colloc)
        write_smin(sweep,os.path.join(outdir,"mps_sweep.csv"),domain.name,basis_size(bases))
        enclosures = [e for _, _, e in found]
        write_enclosures(enclosures,os.path.join(outdir,"enclosures.csv"),domain.name,basis_size(bases))
        spectrum = Spectrum([lam for lam, _, _ in found],method="mps",param=basis_size(bases),domain=domain.name,
                            cluster_radius=config.cluster)
        write_spectrum(spectrum,path)
        PrintTable(["lambda_h","lower","upper","epsilon"],[[e.center,e.lower,e.upper,e.epsilon] for e in enclosures])
    return spectrum

def _compare_values(domain,config):
    """Best estimate and uncertainty width of every eigenvalue of one domain."""
    if config.method in KINDS:
        table  = extrapolate_spectra(level_spectra(domain,config))
        values = table["eigenvalue"].to_numpy()
        widths = table["deviation"].to_numpy()
    elif config.method == "bie":
        counts = split_nodes(domain,config.n,config.split)
        fine   = solve_steklov_bie(domain,counts,count=config.count).eigenvalues
        coarse = solve_steklov_bie(domain,[max(4,2*(c//4)) for c in counts],count=config.count).eigenvalues
        values, widths = fine, np.abs(fine-coarse)
    else:
        RaiseError(message="compare runs finite elements or boundary integrals",error=UsageError)
    return values, np.maximum(widths,np.maximum(defaults.compare_rtol*np.abs(values),defaults.compare_atol))

def compare_verdicts(values_a,widths_a,values_b,widths_b):
    """Per index 'consistent-with-equal' when the values differ by at most the combined widths."""
    close = np.abs(values_a-values_b) <= widths_a + widths_b
    return np.where(close,"consistent-with-equal","distinct")

def run_compare(config):
    domain_a, domain_b = config.Domains()
    outdir = PrepareOutdir(config.Outdir())
    values_a, widths_a = _compare_values(domain_a,config)
    values_b, widths_b = _compare_values(domain_b,config)
    verdict = compare_verdicts(values_a,widths_a,values_b,widths_b)
    frame   = pd.DataFrame({"position": np.arange(values_a.size), "value_a": values_a, "value_b": values_b,
                            "width_a": widths_a, "width_b": widths_b, "verdict": verdict})
    frame["method"]  = config.method
    frame["domain"]  = f"{domain_a.name}|{domain_b.name}"
    frame["version"] = VERSION
    write_table(frame,os.path.join(outdir,"compare.csv"))
    overall = "distinct" if np.any(verdict == "distinct") else "consistent-with-equal"
    PrintTable(["position",domain_a.name,domain_b.name,"verdict"],[[i,float(a),float(b),v] for i, (a, b, v) in enumerate(zip(values_a,values_b,verdict))],width=22)
    PrintLine(f"Overall verdict: {overall}")
    return overall, frame

def run_sweep(config):
    outdir = PrepareOutdir(config.Outdir())
    frame  = sweep_annulus(config.eps,config.n,config.k,split=config.split,threads=config.threads)
    write_sweep(frame,os.path.join(outdir,"sweep.csv"))
    for k in config.k:
        status = "strictly decreasing" if is_strictly_decreasing(frame,k) else "NOT strictly decreasing"
        PrintLine(f"sigma_{k} over eps: {status}")
    return frame

def run_bounds(config):
    domain = config.Domains()[0]
    outdir = PrepareOutdir(config.Outdir())
    report = bracket_report(domain,config.index,config.levels,bc=config.bc)
    write_bracket_report(report,os.path.join(outdir,"bounds.csv"))
    PrintTable(["level","h","cr_lower","p1","p2"],report.rows[["level","h","cr_lower","p1","p2"]].values.tolist())
    PrintLine(f"Enclosure of eigenvalue {report.index}: [{report.lower:.12g}, {report.upper:.12g}]")
    return report


class Check():
    """One validation check: measured error against a tolerance."""
    def __init__(self,name,error,tolerance):
        self.name      = name
        self.error     = float(error)
        self.tolerance = float(tolerance)
        self.passed    = bool(self.error <= self.tolerance)

    def Row(self):
        return {"check": self.name, "error": self.error, "tolerance": self.tolerance, "passed": self.passed}


def _square_check(kind,level,count=6):
    square   = builtin_domain("unit-square")
    spectrum = solve_fem(square,EigenProblemSpec(DIRICHLET,count,kind=kind,level=level))
    exact    = rectangle_spectra(DIRICHLET,1.0,1.0,count=count).eigenvalues[:count]
    return spectrum, exact

def validation_checks():
    """The analytic-oracle suite, cheapest checks first."""
    checks = list()
    checks.append(Check("bessel j_{0,1}",abs(bessel_j_zero(0.0,1)-2.404825557695773),1.0e-12))
    checks.append(Check("bessel j_{1,1}",abs(bessel_j_zero(1.0,1)-3.831705970207512),1.0e-12))

    disk     = solve_steklov_bie(builtin_domain("unit-disk"),128,count=7)
    checks.append(Check("bie unit disk steklov",np.max(np.abs(disk.eigenvalues-disk_spectra(STEKLOV,1.0,7).eigenvalues)),1.0e-10))

    annulus  = builtin_domain("annulus:eps=0")
    bie      = solve_steklov_bie(annulus,256,count=20)
    exact    = concentric_annulus_steklov(defaults.bie_inner_radius,1.0,20).eigenvalues
    checks.append(Check("bie concentric annulus steklov",np.max(np.abs(bie.eigenvalues-exact)),1.0e-9))
    pattern  = [len(c) for c in bie.clusters[:-1]]
    expected = [len(c) for c in Spectrum(exact).clusters[:-1]]
    checks.append(Check("bie concentric annulus multiplicities",float(pattern != expected),0.0))

    p2, exact = _square_check("P2",4)
    checks.append(Check("fem-p2 unit square dirichlet (relative)",np.max(np.abs(p2.eigenvalues-exact)/exact),1.0e-3))

    neumann  = solve_fem(builtin_domain("unit-square"),EigenProblemSpec("neumann",4,kind="P2",level=3))
    nexact   = rectangle_spectra("neumann",1.0,1.0,count=4).eigenvalues[:4]
    checks.append(Check("fem-p2 unit square neumann",np.max(np.abs(neumann.eigenvalues-nexact)),1.0e-2))

    cr, exact = _square_check("CR",3,count=1)
    p1, _     = _square_check("P1",3,count=1)
    lower     = cr_lower_bound(cr.eigenvalues[0],cr.param)
    checks.append(Check("cr lower bound below 2 pi^2",max(0.0,lower-exact[0]),0.0))
    checks.append(Check("p1 above 2 pi^2",max(0.0,exact[0]-p1.eigenvalues[0]),0.0))

    fk = faber_krahn_constant()
    for name in ("unit-square","gww-a","gww-b","dn-square"):
        domain = builtin_domain(name).WithMarkers(DIRICHLET)
        first  = solve_fem(domain,EigenProblemSpec(DIRICHLET,1,kind="P2",level=2)).eigenvalues[0]
        checks.append(Check(f"faber-krahn {name}",max(0.0,fk-first*polygon_area(domain)),0.0))

    square = builtin_domain("unit-square")
    weyl   = weyl_eigenvalue(polygon_area(square),polygon_perimeter(square),10,DIRICHLET)
    tenth  = solve_fem(square,EigenProblemSpec(DIRICHLET,10,kind="P2",level=3)).eigenvalues[9]
    checks.append(Check("weyl unit square tenth eigenvalue (relative)",abs(tenth/weyl-1.0),0.2))
    return checks

def run_validate(config):
    outdir = PrepareOutdir(config.Outdir())
    checks = validation_checks()
    frame  = pd.DataFrame([c.Row() for c in checks],columns=["check","error","tolerance","passed"])
    frame["version"] = VERSION
    write_table(frame,os.path.join(outdir,"validation.csv"))
    PrintTable(["check","error","tolerance","passed"],[[c.name[:36],c.error,c.tolerance,"pass" if c.passed else "FAIL"] for c in checks],width=12)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        RaiseError(message=f"{len(failed)} validation checks failed: {', '.join(failed)}",error=ValidationFailure)
    PrintInfo(message=f" All {len(checks)} validation checks passed")
    return checks
