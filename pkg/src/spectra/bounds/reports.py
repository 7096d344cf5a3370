import time
import numpy as np
import pandas as pd
from spectra.geometry.meshes import mesh_hierarchy
from spectra.fem.solvers import EigenProblemSpec, solve_on_mesh
from spectra.bounds.estimates import cr_lower_bound, richardson_extrapolate, ordering_breaks
from spectra.utils.logging import RaiseError, RaiseWarning, PrintInfo, UsageError, DomainError
from spectra.utils.defaults import DIRICHLET, STEKLOV, defaults


COLUMNS = ["level","h","cr","cr_lower","p1","p2"]


class BracketReport():
    """
    One eigenvalue followed over a refinement schedule by the P1, P2 and CR elements.

    Attributes:
    - index:        int          -> 1-based position in the ascending spectrum
    - rows:         pd.DataFrame -> level, h, cr, cr_lower, p1, p2, cr_residual, cr_below_limit
    - extrapolated: dict         -> column -> (limit, rate, asymptotic flag)
    - value:        float        -> best extrapolated value (P2 column)
    - lower, upper: float        -> max CR lower bound (nan outside pure Dirichlet), min conforming value
    - certified:    bool         -> the lower column comes from the nonconforming bound
    - breaks:       list         -> element pairs whose extrapolated limits cross
    """
    def __init__(self,domain,index,bc,rows):
        self.domain       = domain.name
        self.index        = int(index)
        self.bc           = bc
        self.rows         = rows
        self.certified    = bool(np.isfinite(rows["cr_lower"]).all())
        self.extrapolated = {col: richardson_extrapolate(rows[col],rows["h"]) for col in ("cr","p1","p2")}
        self.value        = self.extrapolated["p2"][0]
        self.lower        = float(rows["cr_lower"].max()) if self.certified else float("nan")
        self.upper        = float(min(rows["p1"].min(),rows["p2"].min()))
        self.rows["cr_below_limit"] = self.rows["cr"] < self.value
        finest            = {col: float(rows[col].iloc[-1]) for col in ("cr","p1","p2")}
        self.breaks       = ordering_breaks(finest,{col: fit[0] for col, fit in self.extrapolated.items()},label=f"{self.domain} index {self.index}: ")

    def __repr__(self):
        return f"BracketReport(domain={self.domain!r}, index={self.index}, enclosure=[{self.lower:.10g}, {self.upper:.10g}])"

    def Contains(self,value):
        return self.certified and self.lower <= value <= self.upper

    def Width(self):
        return self.upper - self.lower if self.certified else float("nan")

    def Footer(self):
        return [("extrapolated",col,limit,rate) for col, (limit, rate, _) in self.extrapolated.items()]


def bracket_report(domain,index,levels=None,bc=DIRICHLET):
    """
    Runs the three elements on refinement levels 1..levels of one hierarchy.

    The nonconforming lower bound is applied only for pure Dirichlet problems; elsewhere the
    column is nan. Each lower bound carries the relative residual of its CR eigenpair.
    Whether CR falls below the extrapolated value is recorded, never asserted.
    """
    levels = defaults.default_levels if levels is None else int(levels)
    index  = int(index)
    if index < 1:
        RaiseError(message=f"Eigenvalue index is 1-based, got {index}",error=UsageError)
    if levels < 3:
        RaiseError(message=f"Bracketing needs at least three levels for extrapolation, got {levels}",error=UsageError)
    if domain.kind != "polygon":
        RaiseError(message=f"Domain {domain.name}: bracketing runs finite elements on polygons",error=DomainError)
    certified = bc == DIRICHLET
    variant   = "cr-midpoint" if bc == STEKLOV or (bc != DIRICHLET and STEKLOV in domain.markers) else None
    meshes    = mesh_hierarchy(domain,levels)
    rows      = list()
    start     = time.time()
    for mesh in meshes:
        row = {"level": mesh.level, "h": mesh.h}
        for kind in ("CR","P1","P2"):
            spec     = EigenProblemSpec(bc,index,kind=kind,level=mesh.level,variant=variant if kind == "CR" else None)
            spectrum = solve_on_mesh(domain,mesh,spec)
            row[kind.lower()] = float(spectrum.eigenvalues[index-1])
            if kind == "CR":
                row["cr_residual"] = float(spectrum.residuals[index-1])
        row["cr_lower"] = cr_lower_bound(row["cr"],mesh.h) if certified and row["cr"] > 0.0 else float("nan")
        rows.append(row)
        PrintInfo(message=f" Bracketing level {mesh.level}: cr={row['cr']:.10g} p1={row['p1']:.10g} p2={row['p2']:.10g}")
    frame  = pd.DataFrame(rows,columns=COLUMNS+["cr_residual"])
    report = BracketReport(domain,index,bc,frame)
    if report.certified and not report.lower <= report.upper:
        RaiseWarning(message=f" Lower bound {report.lower:.10g} above conforming value {report.upper:.10g}")
    PrintInfo(message=f" Bracket report for index {index} on {domain.name} in {time.time()-start:.3f} s")
    return report
