"""Command handlers, state files, reports and verification suites."""
from .commands import (
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    USAGE_ERRORS,
    cmd_exponent,
    cmd_gen,
    cmd_history,
    cmd_measure,
    cmd_monogamy,
    cmd_roof,
    cmd_verify,
    parse_complex_list,
    parse_dims,
    resolve_run_config,
    roof_config,
)
from .reports import REPORT_COLUMNS, emit
from .state_io import dumps_state, load_meta, load_state, loads_state, save_state, state_to_dict
from .suites import SUITES, CheckResult, SuiteResult, run_suite

__all__ = [
    'CheckResult',
    'EXIT_NUMERIC',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_VERIFY_FAILED',
    'REPORT_COLUMNS',
    'SUITES',
    'SuiteResult',
    'USAGE_ERRORS',
    'cmd_exponent',
    'cmd_gen',
    'cmd_history',
    'cmd_measure',
    'cmd_monogamy',
    'cmd_roof',
    'cmd_verify',
    'dumps_state',
    'emit',
    'load_meta',
    'load_state',
    'loads_state',
    'parse_complex_list',
    'parse_dims',
    'resolve_run_config',
    'roof_config',
    'run_suite',
    'save_state',
    'state_to_dict',
]
