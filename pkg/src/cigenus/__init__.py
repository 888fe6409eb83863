"""Exact genus bounds for curves lying on complete intersection surfaces."""

from .exactnum import binom_trunc
from .gamma import CurveInstance, GammaProfile, SurfaceSpec
from .hilbert import IdealSpec, quotient_hf
from .optimize import genus_bound_opt
from .bounds import closed_form_bound

__all__ = [
    "CurveInstance",
    "GammaProfile",
    "IdealSpec",
    "SurfaceSpec",
    "binom_trunc",
    "closed_form_bound",
    "genus_bound_opt",
    "quotient_hf",
]

__version__ = "0.1.0"
