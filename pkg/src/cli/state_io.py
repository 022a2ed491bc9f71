"""StateFile reading and writing.

A StateFile is a JSON object:

    {
      "kind": "pure" | "density",
      "dims": [2, 2],
      "data": [[re, im], ...],
      "meta": {"generator": "ghz", ...}
    }

`data` lists amplitudes for pure states and the row-major matrix for density
states. Floats are written with repr, which round-trips every double exactly.
"""
import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from src.config import DEFAULT_TOLERANCES, Tolerances
from src.core import DensityMatrix, PureState
from src.errors import InvariantViolation, NotNormalized, ParseError, ShapeError

logger = logging.getLogger(__name__)

State = Union[PureState, DensityMatrix]
KINDS = ('pure', 'density')


def _format_pair(z: complex) -> str:
    return f"[{float(z.real)!r}, {float(z.imag)!r}]"


def state_to_dict(state: State, meta: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
    """JSON-ready StateFile object."""
    if isinstance(state, PureState):
        kind, values = 'pure', state.amplitudes
    else:
        kind, values = 'density', state.matrix.reshape(-1)
    return {
        'kind': kind,
        'dims': list(state.dims),
        'data': [[float(z.real), float(z.imag)] for z in values],
        'meta': {str(k): str(v) for k, v in (meta or {}).items()},
    }


def dumps_state(state: State, meta: Optional[Dict[str, str]] = None) -> str:
    """Serialize with one [re, im] pair per line."""
    doc = state_to_dict(state, meta)
    values = state.amplitudes if isinstance(state, PureState) else state.matrix.reshape(-1)
    pairs = ',\n'.join(f"    {_format_pair(z)}" for z in values)
    return (
        "{\n"
        f'  "kind": {json.dumps(doc["kind"])},\n'
        f'  "dims": {json.dumps(doc["dims"])},\n'
        f'  "meta": {json.dumps(doc["meta"], sort_keys=True)},\n'
        '  "data": [\n'
        f"{pairs}\n"
        "  ]\n"
        "}\n"
    )


def save_state(state: State, path: Union[str, Path], meta: Optional[Dict[str, str]] = None) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_state(state, meta))
    logger.debug(f"wrote {path}")
    return path


def _line_of(text: str, key: str) -> Optional[int]:
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    if not match:
        return None
    return text.count('\n', 0, match.start()) + 1


def loads_state(text: str, source: str = '<string>', tol: Tolerances = DEFAULT_TOLERANCES) -> State:
    """
    Parse a StateFile.

    Raises:
        ParseError: malformed JSON or fields, with the line number
        InvariantViolation: the decoded state fails 'norm', 'trace',
            'hermitian' or 'psd'
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=source, line=e.lineno)
    if not isinstance(doc, dict):
        raise ParseError("state file must hold a JSON object", path=source, line=1)

    def fail(message: str, key: str) -> ParseError:
        return ParseError(message, path=source, line=_line_of(text, key) or 1)

    for key in ('kind', 'dims', 'data'):
        if key not in doc:
            raise ParseError(f"missing field {key!r}", path=source, line=1)
    kind = doc['kind']
    if kind not in KINDS:
        raise fail(f"kind must be 'pure' or 'density', got {kind!r}", 'kind')
    dims = doc['dims']
    if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d >= 1 for d in dims):
        raise fail("dims must be a non-empty list of positive integers", 'dims')
    meta = doc.get('meta', {})
    if not isinstance(meta, dict):
        raise fail("meta must be an object", 'meta')

    data = doc['data']
    if not isinstance(data, list):
        raise fail("data must be a list of [re, im] pairs", 'data')
    try:
        values = np.array([complex(float(re_), float(im_)) for re_, im_ in data], dtype=np.complex128)
    except (TypeError, ValueError):
        raise fail("data entries must be [re, im] number pairs", 'data')

    d = int(np.prod(dims))
    expected = d if kind == 'pure' else d * d
    if values.size != expected:
        raise fail(f"{kind} state with dims {dims} needs {expected} entries, got {values.size}", 'data')

    try:
        if kind == 'pure':
            try:
                return PureState(values, tuple(dims), tol=tol)
            except NotNormalized as e:
                raise InvariantViolation('norm', str(e))
        return DensityMatrix(values.reshape(d, d), tuple(dims), tol=tol)
    except ShapeError as e:
        raise fail(str(e), 'data')


def load_state(path: Union[str, Path], tol: Tolerances = DEFAULT_TOLERANCES) -> State:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read state file: {e.strerror}", path=str(path))
    return loads_state(text, str(path), tol)


def load_meta(path: Union[str, Path]) -> Dict[str, str]:
    """The meta map of a StateFile, empty when absent."""
    doc = json.loads(Path(path).read_text())
    return dict(doc.get('meta', {}))
