"""Exact theta series, secrecy gains and n-8k dimension bounds for unimodular lattices."""

from .charvec_bounds import chi_count, dimension_bound, rootless_symbolic_coeffs
from .exact_arith import IsolatingInterval, UniPoly, isolate_roots, poly_eval, sturm_count
from .lattice_theta import (
    EvenLatticeTheta,
    GeneralLatticeTheta,
    even_from_counts,
    general_from_counts,
    kissing_data,
    theta_expansion,
    to_e4_basis,
)
from .modular_forms import FormName, a_coeff, check_identities, form_series
from .qseries import QSeries
from .secrecy import certify_gain, gain_at_one, secrecy_inverse_poly

__version__ = "0.1.0"
