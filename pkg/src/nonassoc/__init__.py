"""Exact nonassociative algebras, their commutator calculus and a
supersymmetric operator layer built on them."""

from .algebra import (
    Algebra,
    AlgebraError,
    AlgebraMismatchError,
    Element,
    associator,
    change_basis,
    commutator,
    conjugate,
    format_element,
    load_algebra,
    make_algebra,
    mul,
    nonassoc_commutator,
    norm,
    subalgebra,
)
from .builtins import builtin_algebra, complex_octonion
from .laws import LawReport, check_identity, check_leibniz, zero_divisor_scan
from .scalars import GaussianRational
from .weyl import ClosureError, WeylElement, format_weyl, parse_weyl, weyl_mul

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AlgebraError", "AlgebraMismatchError", "ClosureError", "Element", "GaussianRational",
    "LawReport", "WeylElement", "associator", "builtin_algebra", "change_basis", "check_identity",
    "check_leibniz", "commutator", "complex_octonion", "conjugate", "format_element", "format_weyl",
    "load_algebra", "make_algebra", "mul", "nonassoc_commutator", "norm", "parse_weyl", "subalgebra",
    "weyl_mul", "zero_divisor_scan",
]
