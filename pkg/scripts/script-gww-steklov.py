import os
import pandas as pd
from spectra.geometry.domains import builtin_domain
from spectra.geometry.meshes import mesh_hierarchy
from spectra.fem.solvers import EigenProblemSpec, solve_on_mesh
from spectra.bounds.estimates import richardson_extrapolate, ordering_breaks
from spectra.files.outputs import PrepareOutdir, write_table


levels = 5
count  = 5
outdir = PrepareOutdir(os.environ.get("SPECTRA_OUT","spectra-out"))
rows   = list()
for name in ("gww-a","gww-b"):
    domain = builtin_domain(name)
    meshes = mesh_hierarchy(domain,levels)
    for kind, variant in (("P1",None),("P2",None),("CR","cr-midpoint")):
        spec    = EigenProblemSpec("steklov",count,kind=kind,variant=variant)
        spectra = [solve_on_mesh(domain,mesh,spec.WithLevel(mesh.level)) for mesh in meshes]
        for k in range(1,count):
            values = [s.eigenvalues[k] for s in spectra]
            limit, rate, flag = richardson_extrapolate(values,[s.param for s in spectra])
            rows.append({"domain": name, "element": kind, "k": k, "finest": values[-1],
                         "extrapolated": limit, "rate": rate, "asymptotic": flag})
table = pd.DataFrame(rows)
for (name, k), group in table.groupby(["domain","k"]):
    group = group.set_index("element")
    ordering_breaks({e.lower(): group.loc[e,"finest"] for e in ("CR","P1","P2")},
                    {e.lower(): group.loc[e,"extrapolated"] for e in ("CR","P1","P2")},label=f"{name} sigma_{k}: ")
write_table(table,os.path.join(outdir,"gww-steklov.csv"))
print(table.pivot_table(index=["element","k"],columns="domain",values="extrapolated").to_string())
