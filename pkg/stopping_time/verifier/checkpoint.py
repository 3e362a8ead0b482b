"""
This module saves and resumes verification campaigns.

A checkpoint is a UTF-8 file of JSON lines. The first line is a header

    {"format_version": 1, "campaign": {...}, "histogram_config": {...}}

and every following line records one completed chunk, in ascending chunk order:

    {"chunk_index": k, "checked": c, "counts_delta": {...}, "min_eps": ..., "argmin_n": "...",
     "max_eps": ..., "argmax_n": "...", "total": t, "sum_fixed": "...", "sumsq_fixed": "...",
     "violations": [...], "above_bound": [...]}

Unbounded integers are decimal strings. Floats are written with repr precision, so a
resumed campaign reproduces the uninterrupted report bit for bit.
"""

__all__ = [
    'CHECKPOINT_FORMAT_VERSION',
    'CampaignState',
    'CheckpointError',
    'checkpoint_resume',
    'checkpoint_save',
]
__version__ = '0.1.0'


import json
import os
from typing import List, Optional, Sequence

import aiofiles

from .campaign import Campaign, ChunkResult, Violation, campaign_from_dict
from .histogram import HistogramConfig, ResidueHistogram


CHECKPOINT_FORMAT_VERSION = 1


class CheckpointError(RuntimeError):
    """
    An exception of this type is raised if a checkpoint is corrupt, written by
    another format version or belongs to another campaign.
    """

    def __init__(self, message: str, inner_exception: Optional[Exception] = None) -> None:
        if inner_exception is not None:
            message = f"{message}: {inner_exception}"
        super().__init__(message)
        self.inner_exception = inner_exception


class CampaignState:
    """
    The merged state of the chunks completed so far.
    """

    def __init__(self, histogram_config: HistogramConfig) -> None:
        self.next_chunk = 0
        self.checked = 0
        self.histogram = ResidueHistogram(histogram_config)
        self.violations: List[Violation] = []
        self.above_bound: List[int] = []

    def absorb(self, result: ChunkResult) -> None:
        """
        Merges the next chunk result.

        Raises
        ------
            ValueError
                If the result is not the next chunk in order.
        """
        if result.chunk_index != self.next_chunk:
            raise ValueError(
                f"Expected chunk {self.next_chunk}, got chunk {result.chunk_index}")
        self.histogram.merge(result.histogram)
        self.checked += result.checked
        self.violations.extend(result.violations)
        self.above_bound.extend(result.above_bound)
        self.next_chunk += 1


def _header(campaign: Campaign, histogram_config: HistogramConfig) -> dict:
    return {
        'format_version': CHECKPOINT_FORMAT_VERSION,
        'campaign': campaign.to_dict(),
        'histogram_config': histogram_config.to_dict(),
    }


def _chunk_record(result: ChunkResult) -> dict:
    return {
        'chunk_index': result.chunk_index,
        'checked': result.checked,
        **result.histogram.to_state(),
        'violations': [v.to_dict() for v in result.violations],
        'above_bound': [str(n) for n in result.above_bound],
    }


def _chunk_from_record(record: dict, histogram_config: HistogramConfig) -> ChunkResult:
    return ChunkResult(
        chunk_index=int(record['chunk_index']),
        checked=int(record['checked']),
        histogram=ResidueHistogram.from_state(histogram_config, record),
        violations=tuple(Violation.from_dict(v) for v in record['violations']),
        above_bound=tuple(int(n) for n in record['above_bound']))


async def checkpoint_save(path: str,
                          campaign: Campaign,
                          histogram_config: HistogramConfig,
                          results: Sequence[ChunkResult]) -> None:
    """
    Appends completed chunks to a checkpoint, writing the header first if the
    file does not exist yet.

    Parameters
    ----------
        path : str
            The checkpoint file.
        campaign : RangeCampaign | RandomCampaign
            The campaign being run.
        histogram_config : HistogramConfig
            The binning of the campaign.
        results : Sequence[ChunkResult]
            The chunks completed since the last save, in ascending order.
    """
    lines = []
    if not os.path.exists(path):
        lines.append(json.dumps(_header(campaign, histogram_config), sort_keys=True))
    lines.extend(json.dumps(_chunk_record(r), sort_keys=True) for r in results)
    async with aiofiles.open(path, 'a', encoding='utf-8') as f:
        await f.write(''.join(line + '\n' for line in lines))


async def checkpoint_resume(path: str,
                            campaign: Campaign,
                            histogram_config: HistogramConfig) -> CampaignState:
    """
    Rebuilds the campaign state from a checkpoint. A missing file yields a
    fresh state.

    Parameters
    ----------
        path : str
            The checkpoint file.
        campaign : RangeCampaign | RandomCampaign
            The campaign to continue; it must match the checkpoint header.
        histogram_config : HistogramConfig
            The binning; it must match the checkpoint header.

    Returns
    -------
        CampaignState
            The merged state of all recorded chunks.

    Raises
    ------
        CheckpointError
            If the checkpoint is corrupt, has another format version or
            describes another campaign.
    """
    state = CampaignState(histogram_config)
    if not os.path.exists(path):
        return state
    async with aiofiles.open(path, 'r', encoding='utf-8') as f:
        content = await f.read()
    lines = [line for line in content.splitlines() if line.strip()]
    if not lines:
        raise CheckpointError(f"Checkpoint {path} is empty")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise CheckpointError(f"Checkpoint {path} has a corrupt header", e) from e
    if not isinstance(header, dict) or header.get('format_version') != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointError(
            f"Checkpoint {path} has an unsupported format version "
            f"{header.get('format_version') if isinstance(header, dict) else None}")
    try:
        recorded_campaign = campaign_from_dict(header['campaign'])
        recorded_config = HistogramConfig(**header['histogram_config'])
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f"Checkpoint {path} has an invalid header", e) from e
    if recorded_campaign != campaign:
        raise CheckpointError(
            f"Checkpoint {path} belongs to campaign {recorded_campaign}, not {campaign}")
    if recorded_config != histogram_config:
        raise CheckpointError(
            f"Checkpoint {path} uses histogram {recorded_config}, not {histogram_config}")
    for number, line in enumerate(lines[1:], start=2):
        try:
            result = _chunk_from_record(json.loads(line), histogram_config)
            state.absorb(result)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError, IndexError) as e:
            raise CheckpointError(f"Checkpoint {path} is corrupt in line {number}", e) from e
    if state.next_chunk > campaign.chunk_count:
        raise CheckpointError(f"Checkpoint {path} records more chunks than the campaign has")
    return state
