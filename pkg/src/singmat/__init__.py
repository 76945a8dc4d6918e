"""Singular Milnor numbers of matrix singularities via free divisors."""

from .catalog import DIVISOR_NAMES, get_divisor, higher_mult
from .codim import MatrixGerm, Settings, khe_codim, kme_codim_tau, milnor_icis
from .errors import (InputError, NotFreeDivisorError, NotTransverseError, ParseError,
                     ResourceLimitError, SingmatError)
from .formulas import (InvariantReport, b3_minus_b2, chi_V_23, divisor_report, evaluate,
                       mu_cm_surface, mu_divisor)
from .germfile import load_germ, parse_germ

__all__ = [
    "DIVISOR_NAMES", "InputError", "InvariantReport", "MatrixGerm", "NotFreeDivisorError",
    "NotTransverseError", "ParseError", "ResourceLimitError", "Settings", "SingmatError",
    "b3_minus_b2", "chi_V_23", "divisor_report", "evaluate", "get_divisor", "higher_mult",
    "khe_codim", "kme_codim_tau", "load_germ", "milnor_icis", "mu_cm_surface", "mu_divisor",
    "parse_germ",
]
