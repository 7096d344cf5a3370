from spectra.reference.analytic import AnalyticSpectrum, disk_spectra, rectangle_spectra, concentric_annulus_steklov
from spectra.reference.analytic import union_spectrum, weyl_eigenvalue, faber_krahn_constant, annulus_angular_roots
from spectra.reference.analytic import annulus_radial_root, concentric_to_disk_continuity
