"""Two-parameter differential calculi on the quantum exterior plane."""

from .algebra import Expr, Gen, QGLetter
from .ansatz import solved_branches, solve_ab, solve_f
from .covariance import QGNormalizer, check_covariance, coact
from .fock import build_rep, number_operators, verify_osc_relations
from .laurent import Laurent
from .rewrite import (CalculusType, RuleSet, apply_derivative, build_ruleset, check_confluence,
                      check_consistency, exterior_d, normalize)
from .rmatrix import check_r_form_calculus, hat, r_of, rtt_relations, ybe_check
from .syntax import format_expr, parse_expr

__all__ = [
    "Expr", "Gen", "QGLetter", "Laurent", "CalculusType", "RuleSet",
    "build_ruleset", "normalize", "exterior_d", "apply_derivative",
    "check_consistency", "check_confluence", "solve_f", "solve_ab", "solved_branches",
    "r_of", "hat", "ybe_check", "check_r_form_calculus", "rtt_relations",
    "coact", "check_covariance", "QGNormalizer",
    "build_rep", "verify_osc_relations", "number_operators",
    "parse_expr", "format_expr",
]
