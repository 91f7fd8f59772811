"""Artin-Schreier towers realizing the groups of order p^3 and p^4 as Galois groups."""

from .galois import build_equations, build_sigmas, close_group, reconstruct_sigmas, verify
from .groups import PresGroup, are_isomorphic, presentation
from .params import GroupParams, InvalidParams
from .polyring import ModPoly, parse_poly
from .tower import Endo, TowerSpec
from .wittpoly import witt_set

__all__ = [
    "Endo",
    "GroupParams",
    "InvalidParams",
    "ModPoly",
    "PresGroup",
    "TowerSpec",
    "are_isomorphic",
    "build_equations",
    "build_sigmas",
    "close_group",
    "parse_poly",
    "presentation",
    "reconstruct_sigmas",
    "verify",
    "witt_set",
]
