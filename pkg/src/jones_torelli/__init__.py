"""Exact computations with the genus-2 Jones representation, its expansion
at t = -exp(h), and the induced filtration of the Torelli group."""

from .exact import LaurentPoly, Matrix, T, TruncSeries
from .expansion import DeltaClass, NotTorelliError, delta_k, filtration_degree, phi_truncated
from .jones import F, F_INV, RHO_XI, RHO_Z1, rho_at_minus_one, rho_evaluate, rho_specialize
from .quotients import cyclic_order_degree1, cyclic_order_degree2, hnf, smith_diagonal
from .sp4 import Submodule, bracket_module, gamma02, gamma20, identify_module, weight_table
from .words import Word, parse_word, symplectic_action

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "Matrix", "T", "TruncSeries",
    "DeltaClass", "NotTorelliError", "delta_k", "filtration_degree", "phi_truncated",
    "F", "F_INV", "RHO_XI", "RHO_Z1", "rho_at_minus_one", "rho_evaluate", "rho_specialize",
    "cyclic_order_degree1", "cyclic_order_degree2", "hnf", "smith_diagonal",
    "Submodule", "bracket_module", "gamma02", "gamma20", "identify_module", "weight_table",
    "Word", "parse_word", "symplectic_action",
]
