"""
This module implements the commands of the command line interface. Every command
prints a JSON (or text) summary to stdout, writes its datasets through the record
writers and returns the process exit code:

    0   success
    1   usage or runtime error (raised as exception, converted by the caller)
    2   a violation of the formula (or a trajectory that did not end) was found
"""

__all__ = [
    'EXIT_OK',
    'EXIT_ERROR',
    'EXIT_VIOLATION',
    'cmd_alpha_table',
    'cmd_profile',
    'cmd_prohibited',
    'cmd_scatter',
    'cmd_sieve',
    'cmd_trajectory',
    'cmd_verify_random',
    'cmd_verify_range',
]
__version__ = '0.1.0'


import json
import logging
from typing import List, Optional, Sequence, Tuple

from alpha_sequences import classify_range
from formula import profile
from sieve import allowed_stopping_times, propagate_prohibited
from verifier import (
    CampaignConfig, HistogramConfig, VerificationReport, verify_random, verify_range)
from .datasets import (
    Window, curve_rows, histogram_rows, propagated_rows, scatter_rows, sieve_rows,
    trajectory_rows)
from .emitter import (
    CURVE_COLUMNS, EmitterConfig, HISTOGRAM_COLUMNS, SCATTER_COLUMNS, SIEVE_COLUMNS,
    TRAJECTORY_COLUMNS, write_records)


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

# longer start values are not spelled out in file names
_MAX_NAME_DIGITS = 64


def _print_json(data) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True))


async def cmd_profile(n: int,
                      max_iterations: Optional[int] = None,
                      output_format: str = 'json',
                      precision: int = 12) -> int:
    """
    Prints the stopping-time profile of n.

    Parameters
    ----------
        n : int
            The start value.
        max_iterations : Optional[int]
            The divergence guard.
        output_format : str
            'json' or 'text' (one 'key: value' line per field).
        precision : int
            Decimal places of the residue.

    Returns
    -------
        int
            EXIT_OK if the formula holds for n, EXIT_VIOLATION otherwise.
    """
    record = profile(n, max_iterations).to_dict(precision)
    if output_format == 'text':
        for key, value in record.items():
            print(f"{key}: {value}")
    else:
        _print_json(record)
    return EXIT_OK if record['verdict'] == 'holds' else EXIT_VIOLATION


async def _finish_campaign(report: VerificationReport,
                           emitter_config: EmitterConfig,
                           histogram_name: Optional[str]) -> int:
    summary = report.summary()
    if histogram_name:
        summary['histogram_file'] = await write_records(
            emitter_config, histogram_name, HISTOGRAM_COLUMNS,
            histogram_rows(report.histogram, emitter_config.precision))
    _print_json(summary)
    return EXIT_OK if report.holds else EXIT_VIOLATION


async def cmd_verify_range(start: int,
                           end: int,
                           campaign_config: CampaignConfig = CampaignConfig(),
                           histogram_config: HistogramConfig = HistogramConfig(),
                           emitter_config: EmitterConfig = EmitterConfig(),
                           max_iterations: Optional[int] = None,
                           checkpoint: Optional[str] = None,
                           histogram_name: Optional[str] = None) -> int:
    """
    Verifies the formula for every natural in [start, end] and prints the report.
    With histogram_name the residue histogram is written as well.

    Returns
    -------
        int
            EXIT_OK if no violation was found, EXIT_VIOLATION otherwise.
    """
    report = await verify_range(
        start, end,
        chunk=campaign_config.chunk,
        workers=campaign_config.workers,
        histogram_config=histogram_config,
        max_iterations=max_iterations,
        checkpoint=checkpoint,
        fail_fast=campaign_config.fail_fast)
    return await _finish_campaign(report, emitter_config, histogram_name)


async def cmd_verify_random(campaign_config: CampaignConfig = CampaignConfig(),
                            histogram_config: HistogramConfig = HistogramConfig(),
                            emitter_config: EmitterConfig = EmitterConfig(),
                            max_iterations: Optional[int] = None,
                            checkpoint: Optional[str] = None,
                            histogram_name: Optional[str] = None) -> int:
    """
    Verifies the formula for campaign_config.samples random naturals of up to
    campaign_config.max_bits bits, drawn from campaign_config.seed.

    Returns
    -------
        int
            EXIT_OK if no violation was found, EXIT_VIOLATION otherwise.
    """
    report = await verify_random(
        campaign_config.samples,
        campaign_config.max_bits,
        campaign_config.seed,
        workers=campaign_config.workers,
        chunk=campaign_config.random_chunk,
        histogram_config=histogram_config,
        max_iterations=max_iterations,
        checkpoint=checkpoint,
        fail_fast=campaign_config.fail_fast)
    return await _finish_campaign(report, emitter_config, histogram_name)


async def cmd_scatter(n_max: int,
                      alpha_max: int,
                      emitter_config: EmitterConfig = EmitterConfig(),
                      n_window: Window = Window(),
                      s_window: Window = Window(),
                      max_iterations: Optional[int] = None) -> int:
    """
    Writes the points (n, S(n)) for n <= n_max to 'scatter' and the curves
    alpha = 0 ... alpha_max to 'curve_alpha_<alpha>', restricted to the windows.
    """
    points = scatter_rows(n_max, n_window, s_window, max_iterations)
    files = [await write_records(emitter_config, 'scatter', SCATTER_COLUMNS, points)]
    for alpha in range(alpha_max + 1):
        rows = curve_rows(alpha, n_max, n_window, s_window)
        files.append(await write_records(
            emitter_config, f"curve_alpha_{alpha}", CURVE_COLUMNS, rows))
    _print_json({'points': len(points), 'files': files})
    return EXIT_OK


def _file_name(prefix: str, n: int, position: int = 0) -> str:
    digits = str(n)
    if len(digits) <= _MAX_NAME_DIGITS:
        return f"{prefix}_{digits}"
    return f"{prefix}_{position}_{n.bit_length()}bit"


async def cmd_trajectory(starts: Sequence[int],
                         emitter_config: EmitterConfig = EmitterConfig(),
                         max_iterations: Optional[int] = None) -> int:
    """
    Writes one path file 'trajectory_<n>' per start value.
    """
    files = []
    for position, n in enumerate(starts):
        rows = trajectory_rows(n, max_iterations)
        files.append(await write_records(
            emitter_config, _file_name('trajectory', n, position), TRAJECTORY_COLUMNS, rows))
    _print_json({'files': files})
    return EXIT_OK


async def cmd_prohibited(n: int,
                         bound: int,
                         emitter_config: Optional[EmitterConfig] = None) -> int:
    """
    Prints the allowed and prohibited stopping times of n up to bound. With an
    emitter config the table is also written to 'prohibited_<n>'.
    """
    sets = allowed_stopping_times(n, bound)
    record = sets.to_dict()
    if emitter_config is not None:
        record['file'] = await write_records(
            emitter_config, _file_name('prohibited', n),
            SIEVE_COLUMNS, sieve_rows([sets]))
    _print_json(record)
    return EXIT_OK


async def cmd_sieve(seeds: Sequence[Tuple[int, int]],
                    depth: int,
                    emitter_config: EmitterConfig = EmitterConfig(),
                    include_direct: bool = True,
                    workers: int = 1) -> int:
    """
    Propagates the prohibited stopping times of the seeds and writes the
    reached naturals to 'sieve'.
    """
    result = propagate_prohibited(seeds, depth, include_direct, workers)
    path = await write_records(emitter_config, 'sieve', SIEVE_COLUMNS, propagated_rows(result))
    _print_json({'reached': len(result), 'depth': depth, 'file': path})
    return EXIT_OK


async def cmd_alpha_table(limit: int,
                          alpha_max: int,
                          prefix: int = 17,
                          workers: int = 1,
                          max_iterations: Optional[int] = None) -> int:
    """
    Prints the first 'prefix' members of every constant-alpha class of [1, limit]
    together with the class sizes.

    Returns
    -------
        int
            EXIT_VIOLATION if a trajectory hit the divergence guard, EXIT_OK otherwise.
    """
    classification = await classify_range(
        limit, alpha_max, workers=workers, max_iterations=max_iterations)
    classes: List[dict] = [
        {'alpha': c.alpha, 'size': c.size, 'first': [str(m) for m in c.members[:prefix]]}
        for c in classification.classes]
    _print_json({
        'limit': str(limit),
        'classes': classes,
        'tail': classification.tail,
        'nonterminating': [str(n) for n in classification.nonterminating],
    })
    if classification.nonterminating:
        logging.warning("%d trajectories did not end", len(classification.nonterminating))
        return EXIT_VIOLATION
    return EXIT_OK
