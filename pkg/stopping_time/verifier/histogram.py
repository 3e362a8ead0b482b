"""
This module defines the mergeable residue histogram 'ResidueHistogram' and its
configuration 'HistogramConfig'.
"""

__all__ = [
    'HistogramConfig',
    'ResidueHistogram',
]
__version__ = '0.1.0'


from typing import Annotated, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from formula import RESIDUE_BOUND


# sums are kept in fixed point so merging is exact and order independent
_FIXED_SCALE = 1 << 52


class HistogramConfig(NamedTuple):
    """
    A simple configuration class for the ResidueHistogram class.
    """

    bin_count: Annotated[int, "number of regular bins over [lo, hi)"] = 652
    lo: Annotated[float, "lower bound of the binned interval"] = 0.0
    hi: Annotated[float, "upper bound of the binned interval"] = RESIDUE_BOUND

    def to_dict(self) -> dict:
        """
        Returns the configuration as a JSON-friendly dict.
        """
        return self._asdict()


class ResidueHistogram:
    """
    A binned distribution of residues with exact extremal tracking.

    There are bin_count regular bins over [lo, hi) plus one last bin that
    counts every residue outside that interval. Ties of the extremes resolve
    to the smaller start value, so merging is commutative and associative.
    """

    def __init__(self, config: HistogramConfig = HistogramConfig()) -> None:
        if config.bin_count < 1:
            raise ValueError(f"bin_count must be positive, got {config.bin_count}")
        if not config.lo < config.hi:
            raise ValueError(f"Empty histogram interval [{config.lo}, {config.hi})")
        self._config = config
        self._scale = config.bin_count / (config.hi - config.lo)
        self.counts = np.zeros(config.bin_count + 1, dtype=np.int64)
        self.total = 0
        self.min_eps: Optional[float] = None
        self.max_eps: Optional[float] = None
        self.argmin_n: Optional[int] = None
        self.argmax_n: Optional[int] = None
        self.sum_fixed = 0
        self.sumsq_fixed = 0

    @property
    def config(self) -> HistogramConfig:
        """
        Returns the binning configuration.
        """
        return self._config

    @property
    def overflow(self) -> int:
        """
        The number of residues outside [lo, hi).
        """
        return int(self.counts[-1])

    def bin_index(self, eps: float) -> int:
        """
        Returns the index of the bin eps falls into.
        """
        if eps < self._config.lo or eps >= self._config.hi:
            return self._config.bin_count
        return min(int((eps - self._config.lo) * self._scale), self._config.bin_count - 1)

    def add(self, n: int, eps: float) -> None:
        """
        Records the residue eps of the start value n.
        """
        self.counts[self.bin_index(eps)] += 1
        self.total += 1
        self.sum_fixed += round(eps * _FIXED_SCALE)
        self.sumsq_fixed += round(eps * eps * _FIXED_SCALE)
        self._update_extremes(eps, n, eps, n)

    def _update_extremes(self, min_eps, argmin_n, max_eps, argmax_n) -> None:
        if min_eps is not None and (
                self.min_eps is None or (min_eps, argmin_n) < (self.min_eps, self.argmin_n)):
            self.min_eps, self.argmin_n = min_eps, argmin_n
        if max_eps is not None and (
                self.max_eps is None or (max_eps, -argmax_n) > (self.max_eps, -self.argmax_n)):
            self.max_eps, self.argmax_n = max_eps, argmax_n

    def merge(self, other: "ResidueHistogram") -> "ResidueHistogram":
        """
        Adds the contents of another histogram with the same configuration.

        Returns
        -------
            ResidueHistogram
                self, to allow chaining.

        Raises
        ------
            ValueError
                If the configurations differ.
        """
        if other.config != self._config:
            raise ValueError(f"Cannot merge histograms {self._config} and {other.config}")
        self.counts += other.counts
        self.total += other.total
        self.sum_fixed += other.sum_fixed
        self.sumsq_fixed += other.sumsq_fixed
        self._update_extremes(other.min_eps, other.argmin_n, other.max_eps, other.argmax_n)
        return self

    def copy(self) -> "ResidueHistogram":
        """
        Returns an independent copy.
        """
        return ResidueHistogram(self._config).merge(self)

    def mean(self) -> float:
        """
        The mean residue, 0.0 for an empty histogram.
        """
        if not self.total:
            return 0.0
        return self.sum_fixed / _FIXED_SCALE / self.total

    def variance(self) -> float:
        """
        The population variance of the residues.
        """
        if not self.total:
            return 0.0
        mean = self.mean()
        return max(self.sumsq_fixed / _FIXED_SCALE / self.total - mean * mean, 0.0)

    def rows(self) -> List[Tuple[float, float, int]]:
        """
        Returns (bin_lo, bin_hi, count) for every bin, the out-of-range bin
        last as (hi, inf).
        """
        edges = np.linspace(self._config.lo, self._config.hi, self._config.bin_count + 1)
        rows = [(float(edges[i]), float(edges[i + 1]), int(self.counts[i]))
                for i in range(self._config.bin_count)]
        rows.append((self._config.hi, float('inf'), self.overflow))
        return rows

    def to_state(self) -> Dict:
        """
        Serializes the histogram with sparse counts. Start values are decimal
        strings so values of any size survive JSON.
        """
        nonzero = np.flatnonzero(self.counts)
        return {
            'counts_delta': {str(int(i)): int(self.counts[i]) for i in nonzero},
            'total': self.total,
            'min_eps': self.min_eps,
            'argmin_n': None if self.argmin_n is None else str(self.argmin_n),
            'max_eps': self.max_eps,
            'argmax_n': None if self.argmax_n is None else str(self.argmax_n),
            'sum_fixed': str(self.sum_fixed),
            'sumsq_fixed': str(self.sumsq_fixed),
        }

    @classmethod
    def from_state(cls, config: HistogramConfig, state: Dict) -> "ResidueHistogram":
        """
        Restores a histogram serialized by 'to_state'.

        Raises
        ------
            KeyError, ValueError, IndexError
                If the state is malformed.
        """
        histogram = cls(config)
        for index, count in state['counts_delta'].items():
            position = int(index)
            if not 0 <= position <= config.bin_count:
                raise IndexError(f"Bin index {position} out of range")
            histogram.counts[position] = int(count)
        histogram.total = int(state['total'])
        if int(histogram.counts.sum()) != histogram.total:
            raise ValueError("Histogram counts do not add up to the total")
        histogram.min_eps = state['min_eps']
        histogram.max_eps = state['max_eps']
        histogram.argmin_n = None if state['argmin_n'] is None else int(state['argmin_n'])
        histogram.argmax_n = None if state['argmax_n'] is None else int(state['argmax_n'])
        histogram.sum_fixed = int(state['sum_fixed'])
        histogram.sumsq_fixed = int(state['sumsq_fixed'])
        return histogram

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidueHistogram):
            return NotImplemented
        return (self._config == other.config
                and np.array_equal(self.counts, other.counts)
                and self.total == other.total
                and (self.min_eps, self.argmin_n) == (other.min_eps, other.argmin_n)
                and (self.max_eps, self.argmax_n) == (other.max_eps, other.argmax_n)
                and (self.sum_fixed, self.sumsq_fixed) == (other.sum_fixed, other.sumsq_fixed))

    def __repr__(self) -> str:
        return (f"ResidueHistogram(total={self.total}, min_eps={self.min_eps}, "
                f"max_eps={self.max_eps}, overflow={self.overflow})")
