from spectra.bounds.estimates import cr_constant, cr_lower_bound, richardson_extrapolate
from spectra.bounds.reports import BracketReport, bracket_report
