import os
import csv
import numpy as np
import pandas as pd
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import matplotlib.tri as mtri
from spectra.utils.logging import RaiseError, PrintInfo, UsageError
from spectra.utils.defaults import VERSION


FLOAT_FORMAT      = "%.15g"
SPECTRUM_COLUMNS  = ["index","eigenvalue","multiplicity","method","param","domain"]
SWEEP_COLUMNS     = ["eps","k","sigma","ratio_to_concentric","N"]
SMIN_COLUMNS      = ["lambda","smin"]
ENCLOSURE_COLUMNS = ["lambda_h","lower","upper","epsilon","caveat"]
BOUNDS_COLUMNS    = ["level","h","cr","cr_lower","p1","p2"]


def PrepareOutdir(outdir):
    if os.path.isfile(outdir):
        RaiseError(message=f"Output path {outdir} is a file, expected a directory",error=UsageError)
    os.makedirs(outdir,exist_ok=True)
    return outdir

def provenance(method,param,domain):
    return {"method": method, "param": param, "domain": domain, "version": VERSION}

def _write(frame,path):
    frame.to_csv(path,index=False,float_format=FLOAT_FORMAT,lineterminator="\n")
    PrintInfo(message=f" {len(frame)} rows written to {path}")
    return path

def spectrum_frame(spectrum):
    """Index starts at 0 when the spectrum carries the zero mode, otherwise at 1."""
    start  = 0 if spectrum.zero_mode else 1
    values = np.real(spectrum.eigenvalues)
    frame  = pd.DataFrame({
        "index":        np.arange(start,start+values.size),
        "eigenvalue":   values,
        "multiplicity": spectrum.multiplicities,
    })
    for key, value in provenance(spectrum.method,spectrum.param,spectrum.domain).items():
        frame[key] = value
    return frame

def write_spectrum(spectrum,path):
    return _write(spectrum_frame(spectrum),path)

def write_sweep(frame,path,method="bie",domain="annulus"):
    out = frame[SWEEP_COLUMNS].copy()
    out["method"]  = method
    out["domain"]  = domain
    out["version"] = VERSION
    return _write(out,path)

def write_smin(sweep,path,domain,basis_size):
    frame = pd.DataFrame(sweep,columns=SMIN_COLUMNS)
    for key, value in provenance("mps",basis_size,domain).items():
        frame[key] = value
    return _write(frame,path)

def write_enclosures(enclosures,path,domain,basis_size):
    frame = pd.DataFrame([e.Row() for e in enclosures],columns=ENCLOSURE_COLUMNS)
    for key, value in provenance("mps",basis_size,domain).items():
        frame[key] = value
    return _write(frame,path)

def write_bracket_report(report,path):
    """Per-level rows followed by one `extrapolated,<col>,<value>,<rate>` line per column."""
    frame = report.rows[BOUNDS_COLUMNS].copy()
    for key, value in provenance(f"bracket-{report.bc}",report.index,report.domain).items():
        frame[key] = value
    _write(frame,path)
    with open(path,"a",newline="") as myfile:
        csv_writer = csv.writer(myfile,lineterminator="\n")
        csv_writer.writerows([(tag,col,FLOAT_FORMAT % value,FLOAT_FORMAT % rate) for tag, col, value, rate in report.Footer()])
    return path

def write_table(frame,path):
    return _write(frame,path)

def write_modes_svg(spectrum,path,indices=None):
    """
    Zero-level contours (nodal lines) of selected finite element eigenfunctions, interpolated
    linearly on the mesh triangles. One panel per eigenfunction.
    """
    if spectrum.space is None or spectrum.vectors is None:
        RaiseError(message="Nodal lines need a finite element spectrum with eigenvectors",error=UsageError)
    mesh    = spectrum.space.mesh
    indices = list(range(min(4,len(spectrum)))) if indices is None else list(indices)
    tri     = mtri.Triangulation(mesh.vertices[:,0],mesh.vertices[:,1],mesh.triangles)
    fig, axes = plt.subplots(1,len(indices),figsize=(3.0*len(indices),3.0),squeeze=False)
    for ax, i in zip(axes[0],indices):
        values = spectrum.space.VertexValues(spectrum.vectors[:,i])
        for a, b in mesh.boundary_edges:
            ax.plot(mesh.vertices[[a,b],0],mesh.vertices[[a,b],1],color="black",linewidth=1.0)
        if np.ptp(values) > 0.0 and values.min() < 0.0 < values.max():
            ax.tricontour(tri,values,levels=[0.0],colors="tab:red",linewidths=1.0)
        ax.set_title(f"{spectrum.eigenvalues[i]:.6g}",fontsize=9)
        ax.set_aspect("equal")
        ax.axis("off")
    fig.tight_layout()
    fig.savefig(path,format="svg")
    plt.close(fig)
    PrintInfo(message=f" Nodal lines of {len(indices)} eigenfunctions written to {path}")
    return path
