from spectra.files.outputs import PrepareOutdir, provenance, spectrum_frame, write_spectrum, write_sweep, write_smin
from spectra.files.outputs import write_enclosures, write_bracket_report, write_table, write_modes_svg
