import spectra.utils
import spectra.geometry
import spectra.specfun
import spectra.pencil
import spectra.reference
import spectra.fem
import spectra.bie
import spectra.mps
import spectra.bounds
import spectra.files
import spectra.config
import spectra.controllers
from spectra.utils.defaults import VERSION

__version__ = VERSION
