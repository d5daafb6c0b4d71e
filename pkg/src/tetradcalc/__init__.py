"""Tetrad calculus: Ricci rotation coefficients, their irreducible split, the
B and C vectors of the Dirac operator, Newman-Penrose spin coefficients and
their local Lorentz gauge laws, all evaluated pointwise from a tetrad given
as expressions."""

from .geometry import FrameJet, TetradField, builtin, field_from_config, frame_at
from .ricci import RicciAtPoint, ricci_at
from .newman_penrose import SpinCoefficientSet, null_frame, spin_coefficients
from .gauge import SpinorGaugeField, transform_tetrad

__version__ = "0.1.0"

__all__ = [
    "FrameJet",
    "RicciAtPoint",
    "SpinCoefficientSet",
    "SpinorGaugeField",
    "TetradField",
    "builtin",
    "field_from_config",
    "frame_at",
    "null_frame",
    "ricci_at",
    "spin_coefficients",
    "transform_tetrad",
]
