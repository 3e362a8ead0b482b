"""
This module runs verification campaigns of the stopping-time formula: exhaustive
ranges and reproducible random big integers.

Work is cut into chunks that are evaluated in waves of 'workers' chunks. Chunk
results are merged strictly in ascending chunk index, so a report does not depend
on the number of workers nor on the order in which chunks finish.
"""

__all__ = [
    'run_campaign',
    'verify_random',
    'verify_range',
]
__version__ = '0.1.0'


import datetime
import logging
import time
from typing import Optional

import pytz
from opentelemetry import trace

from utils.parallel import ChunkPool
from .campaign import (
    Campaign, RandomCampaign, RangeCampaign, VerificationReport, evaluate_chunk,
    validate_campaign)
from .checkpoint import CampaignState, checkpoint_resume, checkpoint_save
from .histogram import HistogramConfig


async def run_campaign(campaign: Campaign,
                       histogram_config: HistogramConfig = HistogramConfig(),
                       workers: int = 1,
                       max_iterations: Optional[int] = None,
                       checkpoint: Optional[str] = None,
                       fail_fast: bool = False,
                       chunk_limit: Optional[int] = None) -> VerificationReport:
    """
    Runs (or continues) a campaign and returns its report.

    Parameters
    ----------
        campaign : RangeCampaign | RandomCampaign
            The campaign to run.
        histogram_config : HistogramConfig
            The binning of the residues.
        workers : int
            The number of worker processes; 1 evaluates in-process.
        max_iterations : Optional[int]
            The divergence guard, None for the per-value default.
        checkpoint : Optional[str]
            A checkpoint file to resume from and to append completed chunks to.
        fail_fast : bool
            Stop after the first wave that produced a violation.
        chunk_limit : Optional[int]
            Evaluate at most this many chunks in this call. The report is then
            interrupted and the checkpoint allows continuing later.

    Returns
    -------
        VerificationReport
            The report over all chunks completed so far, including resumed ones.

    Raises
    ------
        DomainError
            If the campaign parameters are out of range.
        CheckpointError
            If the checkpoint does not fit the campaign.
    """
    validate_campaign(campaign)
    started_at = datetime.datetime.now(pytz.UTC)
    started = time.perf_counter()
    state = CampaignState(histogram_config)
    if checkpoint:
        state = await checkpoint_resume(checkpoint, campaign, histogram_config)
        if state.next_chunk:
            logging.info("Resuming campaign at chunk %d of %d from %s",
                         state.next_chunk, campaign.chunk_count, checkpoint)

    last_chunk = campaign.chunk_count
    if chunk_limit is not None:
        last_chunk = min(last_chunk, state.next_chunk + chunk_limit)

    async with ChunkPool(workers) as pool:
        while state.next_chunk < last_chunk:
            wave = range(state.next_chunk, min(state.next_chunk + pool.workers, last_chunk))
            results = await pool.run_wave(
                evaluate_chunk,
                [(campaign, index, histogram_config, max_iterations) for index in wave])
            for result in results:
                state.absorb(result)
            if checkpoint:
                await checkpoint_save(checkpoint, campaign, histogram_config, results)
            logging.info("Checked %d of %d numbers, %d violations",
                         state.checked, campaign.size, len(state.violations))
            if fail_fast and state.violations:
                logging.warning("Stopping campaign after first violation at n=%d",
                                state.violations[0].n)
                break

    for violation in state.violations:
        logging.warning("Finding of kind '%s' for n=%d", violation.kind, violation.n)
    for n in state.above_bound:
        logging.warning("Residue of n=%d reaches the bound %s", n, histogram_config.hi)

    return VerificationReport(
        campaign=campaign,
        checked=state.checked,
        violations=tuple(state.violations),
        histogram=state.histogram,
        above_bound=tuple(state.above_bound),
        wall_time=time.perf_counter() - started,
        started_at=started_at)


async def verify_range(start: int,
                       end: int,
                       chunk: int = 65536,
                       workers: int = 1,
                       histogram_config: HistogramConfig = HistogramConfig(),
                       **options) -> VerificationReport:
    """
    Checks the formula for every natural in [start, end].

    Parameters
    ----------
        start, end : int
            The inclusive range, 1 <= start <= end.
        chunk : int
            The number of start values per chunk.
        workers : int
            The number of worker processes.
        histogram_config : HistogramConfig
            The binning of the residues.
        **options
            max_iterations, checkpoint, fail_fast and chunk_limit as for run_campaign.

    Returns
    -------
        VerificationReport
            The campaign report.
    """
    campaign = RangeCampaign(start, end, chunk)
    with trace.get_tracer(__name__).start_as_current_span("verifier.verify_range") as otel_span:
        otel_span.set_attribute("collatz.verifier.start", str(start))
        otel_span.set_attribute("collatz.verifier.end", str(end))
        report = await run_campaign(campaign, histogram_config, workers, **options)
        otel_span.set_attribute("collatz.verifier.violations", len(report.violations))
        return report


async def verify_random(sample_count: int,
                        max_bits: int,
                        seed: int,
                        workers: int = 1,
                        chunk: int = 16,
                        histogram_config: HistogramConfig = HistogramConfig(),
                        **options) -> VerificationReport:
    """
    Checks the formula for reproducible random naturals of up to max_bits bits.
    See the sampling module for the sampling law.

    Parameters
    ----------
        sample_count : int
            The number of samples.
        max_bits : int
            The maximum bit length, >= 1.
        seed : int
            The 64 bit seed.
        workers : int
            The number of worker processes.
        chunk : int
            The number of samples per chunk.
        histogram_config : HistogramConfig
            The binning of the residues.
        **options
            max_iterations, checkpoint, fail_fast and chunk_limit as for run_campaign.

    Returns
    -------
        VerificationReport
            The campaign report.
    """
    campaign = RandomCampaign(sample_count, max_bits, seed, chunk)
    with trace.get_tracer(__name__).start_as_current_span("verifier.verify_random") as otel_span:
        otel_span.set_attribute("collatz.verifier.sample_count", sample_count)
        otel_span.set_attribute("collatz.verifier.max_bits", max_bits)
        otel_span.set_attribute("collatz.verifier.seed", str(seed))
        report = await run_campaign(campaign, histogram_config, workers, **options)
        otel_span.set_attribute("collatz.verifier.violations", len(report.violations))
        return report
