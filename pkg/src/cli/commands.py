"""Handlers for the CLI subcommands.

Each handler takes the parsed arguments, the resolved RunConfig and the output
stream, writes one report and returns the process exit code.
"""
import argparse
import logging
import os
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple

import numpy as np

from src.charstates import (
    gmono_state,
    random_gmono_spec,
    random_weights,
    w_class_state,
)
from src.config import Config, RunConfig, load_run_config
from src.core import Cut, DensityMatrix, PureState, regroup, sample
from src.errors import (
    BadCut,
    BadSpec,
    ConfigError,
    DimensionTooLarge,
    IndexOutOfRange,
    InvariantViolation,
    NotIsometry,
    NotNormalized,
    OutOfRange,
    ParseError,
    ShapeError,
)
from src.measures import MeasureId, eof_from_concurrence, pure_measure, resolve_cut
from src.monogamy import (
    evaluate_with_deficit,
    exponent_scan,
    markov_build,
    random_markov_spec,
    standard_evaluators,
)
from src.monogamy.evaluators import bipartite_value
from src.roof import RoofConfig, roof_optimize
from src.storage import Database

from .reports import emit
from .state_io import State, load_state, save_state, state_to_dict
from .suites import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

# errors caused by the input rather than by the numerics
USAGE_ERRORS = (
    BadCut,
    BadSpec,
    ConfigError,
    DimensionTooLarge,
    IndexOutOfRange,
    InvariantViolation,
    NotIsometry,
    NotNormalized,
    OutOfRange,
    ParseError,
    ShapeError,
)


def parse_dims(text: str) -> Tuple[int, ...]:
    try:
        dims = tuple(int(t) for t in text.split(',') if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must look like 2,2,2, got {text!r}")
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"dims must be positive integers, got {text!r}")
    return dims


def parse_complex_list(text: str) -> List[complex]:
    try:
        return [complex(t.strip().replace(' ', '')) for t in text.split(',') if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated complex numbers, got {text!r}")


def resolve_run_config(args: argparse.Namespace, config: Config) -> RunConfig:
    """
    Defaults from the environment, then --config, then QMONO_THREADS, then flags.
    """
    run_cfg = config.run_config()
    if getattr(args, 'config', None):
        run_cfg = load_run_config(Path(args.config), run_cfg)
    env_threads = os.getenv('QMONO_THREADS')
    if env_threads:
        try:
            run_cfg = run_cfg.merged({'threads': int(env_threads)})
        except ValueError:
            raise ConfigError(f"QMONO_THREADS must be an integer, got {env_threads!r}")
    overrides = {
        'seed': getattr(args, 'seed', None),
        'tolerance': getattr(args, 'tolerance', None),
        'samples': getattr(args, 'samples', None),
        'threads': getattr(args, 'threads', None),
        'output': getattr(args, 'output', None),
        'restarts': getattr(args, 'restarts', None),
        'ensemble_size': getattr(args, 'ensemble_size', None),
        'max_iterations': getattr(args, 'max_iterations', None),
    }
    return run_cfg.merged(overrides).validate()


def roof_config(run_cfg: RunConfig) -> RoofConfig:
    r = run_cfg.roof
    return RoofConfig(
        ensemble_size=r.ensemble_size,
        restarts=r.restarts,
        max_iterations=r.max_iterations,
        step_tolerance=r.step_tolerance,
        value_tolerance=r.value_tolerance,
        seed=run_cfg.seed,
        threads=run_cfg.threads,
    )


def _cut(text: Optional[str], dims) -> Optional[Cut]:
    return Cut.parse(text, len(dims)) if text else None


def _as_density(state: State) -> DensityMatrix:
    return DensityMatrix.from_pure(state) if isinstance(state, PureState) else state


def cmd_measure(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO) -> int:
    state = load_state(args.state, run_cfg.tolerances)
    bipartition = resolve_cut(state.dims, _cut(args.cut, state.dims))
    two_qubit = bipartition.dims_of(state.dims) == (2, 2)
    rows = []
    for text in args.measure:
        measure = MeasureId.parse(text)
        row: Dict = {'measure': str(measure), 'cut': str(bipartition)}
        if isinstance(state, PureState):
            row['kind'] = 'pure'
            row['value'] = pure_measure(measure, state, bipartition)
        else:
            row['kind'] = 'density'
            row['value'] = bipartite_value(
                regroup(state, bipartition), measure, roof_config(run_cfg), run_cfg.tolerances
            )
        if measure.name == 'concurrence' and two_qubit:
            row['eof'] = eof_from_concurrence(min(row['value'], 1.0))
        logger.info(f"📊 {measure} = {row['value']:.12g}")
        rows.append(row)
    emit('measure', rows, run_cfg.output, out, state=str(args.state))
    return EXIT_OK


def cmd_roof(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO) -> int:
    rho = _as_density(load_state(args.state, run_cfg.tolerances))
    cut = _cut(args.cut, rho.dims)
    measure = MeasureId.parse(args.measure)
    cfg = roof_config(run_cfg)
    result = roof_optimize(rho, measure, cut, args.mode, cfg, run_cfg.tolerances)
    row = {
        'measure': str(measure),
        'cut': str(cut) if cut else '0|1',
        'mode': result.mode,
        'value': result.value,
        'converged': result.converged,
        'restarts_used': result.restarts_used,
        'ensemble_size': result.decomposition.size,
        'reconstruction_error': result.decomposition.reconstruction_error(rho),
    }
    logger.info(f"📊 {measure} roof ({args.mode}) = {result.value:.12g}, converged={result.converged}")
    emit('roof', [row], run_cfg.output, out, weights=result.decomposition.weights().tolist())
    return EXIT_OK


def cmd_monogamy(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO) -> int:
    rho = _as_density(load_state(args.state, run_cfg.tolerances))
    evaluators = standard_evaluators(args.measure, roof_config(run_cfg), run_cfg.tolerances)
    report, deficit = evaluate_with_deficit(rho, evaluators, alpha=args.alpha, tol=run_cfg.tolerance)
    row = {'measure': str(evaluators.measure), **report.to_dict()}
    icon = "✅" if report.disentangling_satisfied else "➖"
    logger.info(f"{icon} disentangling={report.disentangling_satisfied}, verdict={report.monogamy_verdict}")
    if deficit is not None:
        logger.info(f"📊 deficit(alpha={args.alpha:g}) = {deficit:.12g}")
    emit('monogamy', [row], run_cfg.output, out)
    return EXIT_OK


def cmd_exponent(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO) -> int:
    evaluators = standard_evaluators(args.measure, roof_config(run_cfg), run_cfg.tolerances)
    samples = args.samples if args.samples is not None else run_cfg.samples
    result = exponent_scan(
        args.dims,
        evaluators,
        samples,
        run_cfg.seed,
        include_special=not args.no_special,
        threads=run_cfg.threads,
        progress=args.progress,
    )
    meta = {
        'generator': 'exponent-maximizer',
        'label': result.worst_label,
        'measure': str(evaluators.measure),
        'seed': str(run_cfg.seed),
    }
    if args.out and result.worst_state is not None:
        save_state(result.worst_state, args.out, meta)
    row = {
        'measure': str(evaluators.measure),
        'dims': list(args.dims),
        'samples': samples,
        'seed': run_cfg.seed,
        'alpha_hat': result.alpha_hat,
        'worst_label': result.worst_label,
        'worst_index': result.worst_index,
        'evaluated': result.evaluated,
        'skipped': result.skipped,
        'witnesses': result.witnesses,
    }
    emit(
        'exponent',
        [row],
        run_cfg.output,
        out,
        maximizer=state_to_dict(result.worst_state, meta) if result.worst_state is not None else None,
        histogram=result.histogram,
        bin_edges=result.bin_edges,
    )
    return EXIT_OK


def _generate(args: argparse.Namespace, run_cfg: RunConfig) -> Tuple[State, Dict[str, str]]:
    seed = run_cfg.seed
    kind = args.generator
    meta = {'generator': kind}
    if kind == 'wclass':
        lambdas = args.lambdas or [1 / np.sqrt(3)] * 3 + [0.0]
        if len(lambdas) != 4:
            raise BadSpec(f"wclass needs four amplitudes, got {len(lambdas)}")
        meta['lambdas'] = ','.join(repr(complex(z)) for z in lambdas)
        return w_class_state(*lambdas), meta
    if kind == 'ghz':
        dims = args.dims or (2, 2, 2)
        k = min(dims)
        v = np.zeros(int(np.prod(dims)), dtype=np.complex128)
        t = v.reshape(dims)
        for i in range(k):
            t[(i,) * len(dims)] = 1.0 / np.sqrt(k)
        meta['dims'] = ','.join(map(str, dims))
        return PureState(v, dims), meta
    meta['seed'] = str(seed)
    if kind == 'markov':
        spec = random_markov_spec(seed, args.blocks, args.factor_dims or (2, 2, 2, 2), pure_blocks=not args.mixed_blocks)
        meta.update(blocks=str(args.blocks), weights=','.join(repr(b.q) for b in spec.blocks))
        return markov_build(spec), meta
    if kind == 'gmono':
        spec = random_gmono_spec(args.d, args.r, seed)
        weights = random_weights(args.r, seed)
        meta.update(d=str(args.d), r=str(args.r), weights=','.join(repr(float(w)) for w in weights))
        return gmono_state(spec, weights), meta
    # random
    dims = args.dims or (2, 2)
    meta.update(kind=args.kind, dims=','.join(map(str, dims)))
    if args.kind == 'haar_pure':
        return sample('haar_pure', seed, dims=dims), meta
    if args.rank is not None:
        meta['rank'] = str(args.rank)
    return sample('hs_density', seed, dims=dims, rank=args.rank), meta


def cmd_gen(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO) -> int:
    state, meta = _generate(args, run_cfg)
    path = save_state(state, args.out, meta)
    kind = 'pure' if isinstance(state, PureState) else 'density'
    logger.info(f"✅ Wrote {args.generator} {kind} state with dims {state.dims} to {path}")
    emit('gen', [{'generator': args.generator, 'path': str(path), 'kind': kind, 'dims': list(state.dims)}],
         run_cfg.output, out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO, config: Config) -> int:
    names = list(SUITES) if args.suite == 'all' else [args.suite]
    db = Database(config.db_path)
    rows = []
    all_passed = True
    for name in names:
        run_id = db.start_run(name, run_cfg.seed)
        try:
            result = run_suite(name, run_cfg.seed, roof_config(run_cfg), scale=args.scale, progress=args.progress)
        except Exception as e:
            db.complete_run(run_id, 'error', error_message=str(e))
            raise
        db.complete_run(
            run_id,
            'passed' if result.passed else 'failed',
            checks_total=len(result.checks),
            checks_failed=result.failed,
        )
        rows.extend(result.rows())
        all_passed = all_passed and result.passed
    emit('verify', rows, run_cfg.output, out, seed=run_cfg.seed, passed=all_passed)
    return EXIT_OK if all_passed else EXIT_VERIFY_FAILED


def cmd_history(args: argparse.Namespace, run_cfg: RunConfig, out: TextIO, config: Config) -> int:
    db = Database(config.db_path)
    if args.clear:
        if not args.confirm:
            print("⚠️  Are you sure you want to clear the verification history?", file=out)
            print("Run with --confirm to proceed.", file=out)
            return EXIT_OK
        deleted = db.clear_history()
        logger.info(f"✅ Cleared {deleted} history entries")
        return EXIT_OK
    emit('history', db.get_history(limit=args.limit, suite=args.suite), run_cfg.output, out)
    return EXIT_OK
