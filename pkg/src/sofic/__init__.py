"""Subgroup tests, pseudo-IRS bounds, and compiled tailored games over free groups."""

from .actions import FiniteAction, SignificanceFunction, edit_distance_exact, edit_distance_upper, hamming
from .compiler import compile_game, significance_audit, transfer_report
from .games import TailoredGame, lcs_game, magic_square, trivial_tailoring
from .hierarchy import build_polytope, lower_bound, sandwich, upper_bound
from .stallings import build_core, is_pseudo_subgroup
from .strategies import game_value, linear_check_exact, magic_square_strategy, validate
from .subgroup_tests import SubgroupTest, significance, value_against_action
from .words import Alphabet, Word, ball

__all__ = [
    "Alphabet", "Word", "ball", "build_core", "is_pseudo_subgroup", "FiniteAction", "SignificanceFunction",
    "hamming", "edit_distance_exact", "edit_distance_upper", "SubgroupTest", "value_against_action",
    "significance", "build_polytope", "upper_bound", "lower_bound", "sandwich", "TailoredGame", "lcs_game",
    "magic_square", "trivial_tailoring", "game_value", "validate", "linear_check_exact",
    "magic_square_strategy", "compile_game", "transfer_report", "significance_audit",
]
