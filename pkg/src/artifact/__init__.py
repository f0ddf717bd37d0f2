"""P-resolutions and incidence matrices of cyclic quotient and weighted homogeneous surface singularities."""

from .cfrac import hj_dual, hj_eval, hj_expand
from .graph import DualGraph, PResolution
from .incidence import IncidenceMatrix, canonical, enumerate_all, verify
from .mmp import run_mmp

__version__ = "0.1.0"

__all__ = [
    "DualGraph",
    "IncidenceMatrix",
    "PResolution",
    "canonical",
    "enumerate_all",
    "hj_dual",
    "hj_eval",
    "hj_expand",
    "run_mmp",
    "verify",
]
