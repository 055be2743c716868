"""Grothendieck-Witt valued Euler characteristics, power structures and
enriched Goettsche series."""

from .gw import FieldModel, GwElement, form, hyperbolic, n_epsilon
from .k0var import eval_chi
from .parser import parse_expr, render
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "FieldModel",
    "GwElement",
    "TruncatedSeries",
    "eval_chi",
    "form",
    "hyperbolic",
    "n_epsilon",
    "parse_expr",
    "render",
]
