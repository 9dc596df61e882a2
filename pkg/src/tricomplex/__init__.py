"""Exact arithmetic for triangulation complexity of lens, prism, Platonic, Sol
and T^2 x I manifolds, with layered triangulations that realize the upper
bounds."""
from .exact import PeriodicCF, QuadraticSurd, cf_eval, cf_of_rational, cf_of_surd, periodic_sum
from .farey import (
    FareyLine,
    FareyTriangle,
    Slope,
    act,
    act_triangle,
    connecting_anosov,
    cutting_sequence,
    is_farey_edge,
    line_distance,
    neighbors,
    translation_length,
    tree_distance,
    triangle_map,
)
from .psl2z import (
    GroupWord,
    IntMatrix,
    classify,
    cyclic_reduce,
    fixed_slopes,
    matrix_to_word,
    primitive_root,
    word_length,
    word_to_matrix,
)

__version__ = "0.1.0"
