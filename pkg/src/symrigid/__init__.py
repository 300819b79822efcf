"""Combinatorial and numeric tools for symmetry-forced rigidity in the plane."""

from __future__ import annotations

__version__ = "0.1.0"

from .cyclotomic import CycloRat
from .errors import InputError, LimitExceeded, SymrigidError
from .gaingraph import Arc, GainGraph, alpha, frame_rank, group_alpha
from .isometry import Isometry
from .sparsity import RigidityReport, cyclic_decide, decide, f_value, gain_rank, laman_decide

__all__ = [
    "Arc",
    "CycloRat",
    "GainGraph",
    "InputError",
    "Isometry",
    "LimitExceeded",
    "RigidityReport",
    "SymrigidError",
    "alpha",
    "cyclic_decide",
    "decide",
    "f_value",
    "frame_rank",
    "gain_rank",
    "group_alpha",
    "laman_decide",
]
