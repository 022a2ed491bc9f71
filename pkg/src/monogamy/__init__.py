"""Disentangling condition, monogamy exponents, Markov and flag states."""
from .evaluators import MonogamyEvaluators, bipartite_value, standard_evaluators
from .exponent import ZERO_FLOOR, gamma_exponent, ratios
from .markov import (
    MarkovBlock,
    MarkovSpec,
    flag_state,
    markov_build,
    random_markov_spec,
    ssa_deficit,
)
from .report import (
    MonogamyReport,
    deficit_from_values,
    disentangling_check,
    evaluate_with_deficit,
    monogamy_deficit,
    open_question_candidate,
    report_from_values,
)
from .scan import ExponentScanResult, exponent_scan, special_states

__all__ = [
    'ExponentScanResult',
    'MarkovBlock',
    'MarkovSpec',
    'MonogamyEvaluators',
    'MonogamyReport',
    'ZERO_FLOOR',
    'bipartite_value',
    'deficit_from_values',
    'disentangling_check',
    'evaluate_with_deficit',
    'exponent_scan',
    'flag_state',
    'gamma_exponent',
    'markov_build',
    'monogamy_deficit',
    'open_question_candidate',
    'random_markov_spec',
    'ratios',
    'report_from_values',
    'special_states',
    'ssa_deficit',
    'standard_evaluators',
]
