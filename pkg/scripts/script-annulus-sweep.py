import os
import numpy as np
from spectra.bie.solvers import sweep_annulus, is_strictly_decreasing, concentric_convergence, quasimode_deviation
from spectra.files.outputs import PrepareOutdir, write_sweep, write_table


outdir = PrepareOutdir(os.environ.get("SPECTRA_OUT","spectra-out"))

sweep = sweep_annulus(np.linspace(0.0,0.88,45),660,[1,2,3],threads=4)
write_sweep(sweep,os.path.join(outdir,"sweep.csv"))
for k in (1,2,3):
    print(f"sigma_{k} strictly decreasing in eps: {is_strictly_decreasing(sweep,k)}")

convergence = concentric_convergence([16,32,64,128,256],count=20)
write_table(convergence,os.path.join(outdir,"concentric-convergence.csv"))

deviation = quasimode_deviation(0.4,880,k_range=(50,200))
write_table(deviation,os.path.join(outdir,"quasimodes.csv"))
print(f"max relative quasimode deviation over k in [50, 200]: {deviation['deviation'].abs().max():.3e}")
