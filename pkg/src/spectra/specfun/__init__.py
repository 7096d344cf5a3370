from spectra.specfun.bessel import BesselEval, bessel_j, bessel_jp, bessel_j_zero, bessel_jp_zero, mcmahon
