"""Exact F-signature, class group and Hilbert-Kunz computations for toric rings."""

from .exactlin import RationalInterval
from .polyvol import dual_zonotope, fsignature, volume
from .toric import Cone, class_group, cm_type, gorenstein_data, hilbert_basis, load_cone, validate_cone

__all__ = [
    "Cone",
    "RationalInterval",
    "class_group",
    "cm_type",
    "dual_zonotope",
    "fsignature",
    "gorenstein_data",
    "hilbert_basis",
    "load_cone",
    "validate_cone",
    "volume",
]

__version__ = "0.1.0"
