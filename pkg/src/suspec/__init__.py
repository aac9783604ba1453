"""Exact multiplicities of integrable discrete series for SU(n, 1) over Q(sqrt(-k))."""

from .applications import cusp_cohomology_lower_bound, rationality_lhs, rationality_report, rationality_rhs
from .dirichlet import QuadraticField, hilbert_symbol, kronecker, make_field, t_ell
from .exact_arith import SymbolicReal, bernoulli, to_float
from .lfunctions import l_numeric, l_odd_exact, zeta_even_exact
from .su_spectrum import HCParam, covolume, formal_degree, multiplicity

__version__ = "0.1.0"

__all__ = [
    "QuadraticField",
    "make_field",
    "kronecker",
    "hilbert_symbol",
    "t_ell",
    "SymbolicReal",
    "bernoulli",
    "to_float",
    "zeta_even_exact",
    "l_odd_exact",
    "l_numeric",
    "HCParam",
    "formal_degree",
    "covolume",
    "multiplicity",
    "cusp_cohomology_lower_bound",
    "rationality_lhs",
    "rationality_rhs",
    "rationality_report",
]
