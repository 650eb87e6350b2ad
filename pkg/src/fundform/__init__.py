"""Exact symbolic engine for homogeneous Lagrangians on bundles of m-frames."""

from ._backend import BACKEND
from .forms import ContractDegreeZero, ScalarForm, VectorField
from .multiindex import DegenerateIndex, MultiIndex, enumerate_indices
from .parser import ExprSyntaxError, IndexOutOfRange, parse_expr
from .symbolic import DivisionByZero, JetVar, RatExpr, jet
from .variational import Lagrangian, NotHomogeneous
from .vvforms import VectorValuedForm

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ContractDegreeZero",
    "DegenerateIndex",
    "DivisionByZero",
    "ExprSyntaxError",
    "IndexOutOfRange",
    "JetVar",
    "Lagrangian",
    "MultiIndex",
    "NotHomogeneous",
    "RatExpr",
    "ScalarForm",
    "VectorField",
    "VectorValuedForm",
    "enumerate_indices",
    "jet",
    "parse_expr",
]
