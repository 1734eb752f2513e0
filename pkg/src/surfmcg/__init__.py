"""Combinatorial surfaces, carried curves and Dehn-twist mapping classes."""

from .surface import CombSurface, classify, parse_scheme, standard_scheme
from .triangulation import Triangulation, square_torus, triangulate
from .normal import NormalCurve
from .curves import (are_isotopic, bigon_reduce, bounds_cylinder, carry, cut_along,
                     general_position, is_separating_by_cut)
from .homology import class_of_curve, h1_action, homology_ranks, is_separating_by_class
from .mcg import TwistWord, apply_word, filling_system, is_trivial, twist_word, verify_alignment

__version__ = "0.1.0"
