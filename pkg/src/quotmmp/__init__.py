"""Exact Mori chamber decompositions of Quot schemes on P^1, with explicit
moduli points and a finite-field enumeration oracle."""

__version__ = "0.1.0"

from .exactcore import QQ, ExactMatrix, FieldMismatchError, FieldSpec, gaussian_binomial, rank, rref
from .p1forms import BinaryForm, ModuliParams, ParseError, format_form, parse_form
from .sheafpoint import (DomainError, H0InjectivityError, InvalidPointError, NotLocallyFreeError,
                         SheafMapPoint, check_star, dualize, pluecker_point)
from .quotmodel import GrassmannPoint, RmPoint, StratumError, fiber_profile, gm_point, rm_point, verify_rm
from .chamberfan import ALPHA, BETA, Cone2, DivisorClass, MMPReport, exceptional_dimensions, mmp_report
from .ffenum import CapExceededError, CensusResult, census, cross_check_pr1, enumerate_subspaces

__all__ = [
    "QQ", "ExactMatrix", "FieldMismatchError", "FieldSpec", "gaussian_binomial", "rank", "rref",
    "BinaryForm", "ModuliParams", "ParseError", "format_form", "parse_form",
    "DomainError", "H0InjectivityError", "InvalidPointError", "NotLocallyFreeError",
    "SheafMapPoint", "check_star", "dualize", "pluecker_point",
    "GrassmannPoint", "RmPoint", "StratumError", "fiber_profile", "gm_point", "rm_point", "verify_rm",
    "ALPHA", "BETA", "Cone2", "DivisorClass", "MMPReport", "exceptional_dimensions", "mmp_report",
    "CapExceededError", "CensusResult", "census", "cross_check_pr1", "enumerate_subspaces",
]
