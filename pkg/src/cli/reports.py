"""Machine-readable command reports in JSON or CSV.

CSV column order per report kind is fixed by REPORT_COLUMNS. JSON reports are
a single object; non-finite floats are written as the strings "inf", "-inf"
and "nan" so the output stays valid JSON.
"""
import csv
import json
import math
from typing import Any, Dict, List, Sequence, TextIO

REPORT_COLUMNS: Dict[str, List[str]] = {
    'measure': ['measure', 'cut', 'kind', 'value', 'eof'],
    'roof': ['measure', 'cut', 'mode', 'value', 'converged', 'restarts_used', 'ensemble_size', 'reconstruction_error'],
    'monogamy': [
        'measure', 'e_abc', 'e_ab', 'e_ac', 'x1', 'x2', 'gamma',
        'disentangling_satisfied', 'monogamy_verdict', 'monotonicity_ok',
        'tolerance', 'alpha', 'deficit',
    ],
    'exponent': [
        'measure', 'dims', 'samples', 'seed', 'alpha_hat', 'worst_label',
        'worst_index', 'evaluated', 'skipped', 'witnesses',
    ],
    'gen': ['generator', 'path', 'kind', 'dims'],
    'verify': ['suite', 'check', 'passed', 'value', 'detail'],
    'history': [
        'id', 'suite', 'seed', 'started_at', 'completed_at', 'status',
        'checks_total', 'checks_failed', 'error_message',
    ],
}


def _clean(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return 'nan' if math.isnan(value) else ('inf' if value > 0 else '-inf')
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _cell(value: Any) -> Any:
    value = _clean(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ','.join(str(v) for v in value)
    return '' if value is None else value


def write_json(payload: Dict[str, Any], out: TextIO) -> None:
    json.dump(_clean(payload), out, indent=2, allow_nan=False)
    out.write('\n')


def write_csv(kind: str, rows: Sequence[Dict[str, Any]], out: TextIO) -> None:
    """Header plus one line per row in REPORT_COLUMNS[kind] order; other keys are dropped."""
    columns = REPORT_COLUMNS[kind]
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])


def emit(kind: str, rows: Sequence[Dict[str, Any]], fmt: str, out: TextIO, **extra: Any) -> None:
    """
    Write a report.

    Args:
        kind: Key of REPORT_COLUMNS
        rows: Report rows
        fmt: 'json' or 'csv'
        out: Text stream
        extra: Additional top-level JSON fields (ignored for CSV)
    """
    if fmt == 'csv':
        write_csv(kind, rows, out)
        return
    payload: Dict[str, Any] = {'report': kind}
    payload['results'] = list(rows)
    payload.update(extra)
    write_json(payload, out)
