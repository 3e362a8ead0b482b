"""
This module defines the campaign descriptors, the per-chunk evaluation and the
'VerificationReport' of a verification campaign.

Classes
-------
    RangeCampaign
        Every natural of [start, end], split into chunks of consecutive numbers.
    RandomCampaign
        sample_count random naturals of up to max_bits bits, drawn per chunk.
    Violation
        A start value for which the formula failed or the trajectory did not end.
    ChunkResult
        The outcome of a single chunk.
    VerificationReport
        The summary of a complete (or interrupted) campaign.
"""

__all__ = [
    'CampaignConfig',
    'ChunkResult',
    'RandomCampaign',
    'RangeCampaign',
    'VerificationReport',
    'Violation',
    'campaign_from_dict',
    'evaluate_chunk',
    'merge_reports',
    'validate_campaign',
]
__version__ = '0.1.0'


import datetime
from typing import Annotated, Iterable, List, NamedTuple, Optional, Tuple, Union

from opentelemetry import trace

from core_trajectory import DomainError, NonTerminationError, trajectory_stats
from formula import check_formula, residue, residue_exceeds
from .histogram import HistogramConfig, ResidueHistogram
from .sampling import draw_samples


FORMULA = 'formula'
NONTERMINATION = 'nontermination'


class CampaignConfig(NamedTuple):
    """
    A simple configuration class for verification campaigns.
    """

    chunk: Annotated[int, "numbers per chunk of a range campaign"] = 65536
    random_chunk: Annotated[int, "samples per chunk of a random campaign"] = 16
    workers: Annotated[int, "number of worker processes"] = 1
    seed: Annotated[int, "64 bit seed of random campaigns"] = 42
    max_bits: Annotated[int, "maximum bit length of random samples"] = 16384
    samples: Annotated[int, "number of samples of a random campaign"] = 100
    fail_fast: Annotated[bool, "stop after the first wave with a violation"] = False


class RangeCampaign(NamedTuple):
    """
    Describes an exhaustive campaign over [start, end].
    """

    start: int
    end: int
    chunk: int = 65536

    @property
    def size(self) -> int:
        """
        The number of start values to check.
        """
        return self.end - self.start + 1

    @property
    def chunk_count(self) -> int:
        """
        The number of chunks.
        """
        return -(-self.size // self.chunk)

    def numbers(self, chunk_index: int) -> Iterable[int]:
        """
        The start values of a chunk, ascending.
        """
        first = self.start + chunk_index * self.chunk
        return range(first, min(first + self.chunk - 1, self.end) + 1)

    def to_dict(self) -> dict:
        """
        Returns the descriptor with decimal-string bounds.
        """
        return {'kind': 'range', 'start': str(self.start), 'end': str(self.end),
                'chunk': self.chunk}


class RandomCampaign(NamedTuple):
    """
    Describes a campaign over reproducible random naturals.
    """

    sample_count: int
    max_bits: int
    seed: int
    chunk: int = 16

    @property
    def size(self) -> int:
        """
        The number of start values to check.
        """
        return self.sample_count

    @property
    def chunk_count(self) -> int:
        """
        The number of chunks.
        """
        return -(-self.sample_count // self.chunk)

    def numbers(self, chunk_index: int) -> Iterable[int]:
        """
        The samples of a chunk, in drawing order.
        """
        count = min(self.chunk, self.sample_count - chunk_index * self.chunk)
        return draw_samples(self.seed, self.max_bits, chunk_index, count)

    def to_dict(self) -> dict:
        """
        Returns the descriptor as a JSON-friendly dict.
        """
        return {'kind': 'random', 'sample_count': self.sample_count,
                'max_bits': self.max_bits, 'seed': str(self.seed), 'chunk': self.chunk}


Campaign = Union[RangeCampaign, RandomCampaign]


def campaign_from_dict(descriptor: dict) -> Campaign:
    """
    Restores a campaign descriptor written by 'to_dict'.

    Raises
    ------
        KeyError, ValueError
            If the descriptor is malformed.
    """
    if descriptor['kind'] == 'range':
        return RangeCampaign(int(descriptor['start']), int(descriptor['end']),
                             int(descriptor['chunk']))
    if descriptor['kind'] == 'random':
        return RandomCampaign(int(descriptor['sample_count']), int(descriptor['max_bits']),
                              int(descriptor['seed']), int(descriptor['chunk']))
    raise ValueError(f"Unknown campaign kind '{descriptor['kind']}'")


def validate_campaign(campaign: Campaign) -> None:
    """
    Checks the preconditions of a campaign.

    Raises
    ------
        DomainError
            If a bound, the chunk size or the sample count is out of range.
    """
    if campaign.chunk < 1:
        raise DomainError(f"chunk must be positive, got {campaign.chunk}")
    if isinstance(campaign, RangeCampaign):
        if not 1 <= campaign.start <= campaign.end:
            raise DomainError(
                f"A range campaign needs 1 <= start <= end, got [{campaign.start}, {campaign.end}]")
    else:
        if campaign.sample_count < 1:
            raise DomainError(f"sample_count must be positive, got {campaign.sample_count}")
        if campaign.max_bits < 1:
            raise DomainError(f"max_bits must be positive, got {campaign.max_bits}")


class Violation(NamedTuple):
    """
    A finding of a campaign. For kind 'nontermination' the stopping time,
    the prediction and alpha are unknown and stay None.
    """

    n: int
    true_s: Optional[int]
    predicted_s: Optional[int]
    alpha: Optional[int]
    kind: str = FORMULA

    def to_dict(self) -> dict:
        """
        Returns the finding as a JSON-friendly dict.
        """
        return {'n': str(self.n), 'true_s': self.true_s, 'predicted_s': self.predicted_s,
                'alpha': self.alpha, 'kind': self.kind}

    @classmethod
    def from_dict(cls, record: dict) -> "Violation":
        """
        Restores a finding written by 'to_dict'.
        """
        return cls(int(record['n']), record['true_s'], record['predicted_s'],
                   record['alpha'], record['kind'])


class ChunkResult(NamedTuple):
    """
    The outcome of evaluating one chunk of a campaign.
    """

    chunk_index: int
    checked: int
    histogram: ResidueHistogram
    violations: Tuple[Violation, ...]
    above_bound: Tuple[int, ...] = ()


def evaluate_chunk(campaign: Campaign,
                   chunk_index: int,
                   histogram_config: HistogramConfig,
                   max_iterations: Optional[int] = None) -> ChunkResult:
    """
    Checks every start value of a chunk against the formula and bins the residues.
    This is the unit of work shipped to worker processes.

    Parameters
    ----------
        campaign : RangeCampaign | RandomCampaign
            The campaign the chunk belongs to.
        chunk_index : int
            The index of the chunk.
        histogram_config : HistogramConfig
            The binning of the residues.
        max_iterations : Optional[int]
            The divergence guard, None for the per-value default.

    Returns
    -------
        ChunkResult
            Counts, histogram and findings of the chunk.
    """
    with trace.get_tracer(__name__).start_as_current_span("verifier.chunk") as otel_span:
        otel_span.set_attribute("collatz.verifier.chunk_index", chunk_index)
        histogram = ResidueHistogram(histogram_config)
        violations: List[Violation] = []
        above_bound: List[int] = []
        checked = 0
        for n in campaign.numbers(chunk_index):
            checked += 1
            try:
                stats = trajectory_stats(n, max_iterations, keep_terms=False)
            except NonTerminationError as e:
                violations.append(Violation(n, None, None, None, NONTERMINATION))
                otel_span.record_exception(e)
                continue
            verdict = check_formula(n, stats)
            if not verdict.holds:
                violations.append(Violation(n, verdict.true_s, verdict.predicted_s, stats.alpha))
            eps = residue(n, stats)
            histogram.add(n, eps)
            if eps >= histogram_config.hi - 1e-6 and residue_exceeds(n, stats, histogram_config.hi):
                above_bound.append(n)
        otel_span.set_attribute("collatz.verifier.checked", checked)
        return ChunkResult(chunk_index, checked, histogram, tuple(violations), tuple(above_bound))


class VerificationReport(NamedTuple):
    """
    The summary of a verification campaign. 'checked' falls short of the
    campaign size only if the campaign was interrupted.
    """

    campaign: Campaign
    checked: int
    violations: Tuple[Violation, ...]
    histogram: ResidueHistogram
    above_bound: Tuple[int, ...]
    wall_time: float
    started_at: datetime.datetime

    @property
    def interrupted(self) -> bool:
        """
        Whether the campaign stopped before checking every start value.
        """
        return self.checked < self.campaign.size

    @property
    def holds(self) -> bool:
        """
        Whether every checked start value satisfied the formula.
        """
        return not self.violations

    @property
    def throughput(self) -> float:
        """
        Checked start values per second of wall time.
        """
        return self.checked / self.wall_time if self.wall_time > 0 else 0.0

    def equivalent(self, other: "VerificationReport") -> bool:
        """
        Compares two reports, ignoring timing.
        """
        return (self.campaign == other.campaign
                and self.checked == other.checked
                and self.violations == other.violations
                and self.histogram == other.histogram
                and self.above_bound == other.above_bound)

    def summary(self) -> dict:
        """
        Returns the report as a JSON-friendly dict.
        """
        histogram = self.histogram
        return {
            'campaign': self.campaign.to_dict(),
            'checked': self.checked,
            'interrupted': self.interrupted,
            'violations': [v.to_dict() for v in self.violations],
            'residue': {
                'min': None if histogram.min_eps is None else f"{histogram.min_eps:.6f}",
                'argmin_n': None if histogram.argmin_n is None else str(histogram.argmin_n),
                'max': None if histogram.max_eps is None else f"{histogram.max_eps:.6f}",
                'argmax_n': None if histogram.argmax_n is None else str(histogram.argmax_n),
                'mean': f"{histogram.mean():.6f}",
                'variance': f"{histogram.variance():.6f}",
                'overflow': histogram.overflow,
                'bound': histogram.config.hi,
                'at_or_above_bound': [str(n) for n in self.above_bound],
            },
            'started_at': self.started_at.isoformat(),
            'wall_time': round(self.wall_time, 3),
            'throughput': round(self.throughput, 1),
        }


def merge_reports(first: VerificationReport, second: VerificationReport) -> VerificationReport:
    """
    Merges the reports of two adjacent range campaigns [a, m] and [m + 1, b]
    into the report of [a, b].

    Raises
    ------
        ValueError
            If the campaigns are not adjacent ranges with the same chunk size.
    """
    if not (isinstance(first.campaign, RangeCampaign)
            and isinstance(second.campaign, RangeCampaign)
            and first.campaign.end + 1 == second.campaign.start
            and first.campaign.chunk == second.campaign.chunk):
        raise ValueError("Only adjacent range campaigns can be merged")
    return VerificationReport(
        campaign=RangeCampaign(first.campaign.start, second.campaign.end, first.campaign.chunk),
        checked=first.checked + second.checked,
        violations=first.violations + second.violations,
        histogram=first.histogram.copy().merge(second.histogram),
        above_bound=first.above_bound + second.above_bound,
        wall_time=first.wall_time + second.wall_time,
        started_at=min(first.started_at, second.started_at))
