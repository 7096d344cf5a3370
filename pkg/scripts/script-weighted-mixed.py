import os
import sys
import pandas as pd
from spectra.geometry.domains import load_domain
from spectra.geometry.meshes import mesh_hierarchy
from spectra.fem.solvers import EigenProblemSpec, solve_on_mesh
from spectra.files.outputs import PrepareOutdir, write_table


if len(sys.argv) < 2 or not os.path.isfile(sys.argv[1]):
    print("SPECTRA: weighted mixed problem skipped, pass the partition domain file (mixed markers, weight genus2) as argument")
    sys.exit(0)

domain = load_domain(sys.argv[1])
outdir = PrepareOutdir(os.environ.get("SPECTRA_OUT","spectra-out"))
rows   = list()
for mesh in mesh_hierarchy(domain,5):
    row = {"level": mesh.level, "h": mesh.h}
    for kind in ("P1","CR"):
        spec = EigenProblemSpec("mixed",1,kind=kind,level=mesh.level,weight="genus2")
        row[kind.lower()] = solve_on_mesh(domain,mesh,spec).eigenvalues[0]
    rows.append(row)
table = pd.DataFrame(rows)
write_table(table,os.path.join(outdir,"weighted-mixed.csv"))
print(table.to_string(index=False))
