"""Exact q-series toolkit for admissible-level string functions, Appell functions and Hecke sums."""

from .errors import (AppellPole, DivergentProduct, InsufficientPrecision, InvalidSpec, NonGeneric,
                     NonGenericArgument, OrderExceeded, QuadratureFailure, ScaleOverflow, StrfuncError,
                     UnknownCase, ZeroLeadingTerm, ZeroLevel, ZeroThetaDenominator)
from .series import INF, PuiseuxSeries, Verdict, eq_to_order, ensure_order, eta, euler_infinite, q
from .theta import QPower, jacobi_j, qp
from .hecke import HeckeParams, StringSpec, hecke_f, pf_character, string_C, string_script_C
from .appell import AppellArgs, appell_m

__version__ = "0.1.0"
