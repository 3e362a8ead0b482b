"""
This module builds the rows of the emitted datasets: residue histograms, the
S(n) scatter with its constant-alpha curves, trajectory paths and sieve tables.
All builders return plain rows matching the column schemas of the emitter module.
"""

__all__ = [
    'Window',
    'curve_rows',
    'format_residue',
    'histogram_rows',
    'propagated_rows',
    'scatter_rows',
    'sieve_rows',
    'trajectory_rows',
]
__version__ = '0.1.0'


import math
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from alpha_sequences import alpha_curve
from core_trajectory import DomainError, trajectory_stats, trajectory_terms
from formula import ceil_log2
from sieve import StoppingTimeSets
from verifier import ResidueHistogram


class Window(NamedTuple):
    """
    An inclusive range lo <= x <= hi, unbounded where None.
    """

    lo: Optional[int] = None
    hi: Optional[int] = None

    def contains(self, x: int) -> bool:
        """
        Tests whether x lies in the window.
        """
        return (self.lo is None or x >= self.lo) and (self.hi is None or x <= self.hi)


def format_residue(value: float, precision: int) -> str:
    """
    Formats a residue or bin edge with a fixed number of decimal places;
    the open end of the out-of-range bin is written as 'inf'.
    """
    if math.isinf(value):
        return 'inf'
    return f"{value:.{precision}f}"


def histogram_rows(histogram: ResidueHistogram, precision: int = 12) -> List[Tuple[str, str, int]]:
    """
    Returns the rows (bin_lo, bin_hi, count), the out-of-range bin last.
    """
    return [(format_residue(lo, precision), format_residue(hi, precision), count)
            for lo, hi, count in histogram.rows()]


def _n_bounds(n_max: int, n_window: Window) -> Tuple[int, int]:
    if n_max < 1:
        raise DomainError(f"n_max must be positive, got {n_max}")
    lo = max(1, n_window.lo or 1)
    hi = n_max if n_window.hi is None else min(n_max, n_window.hi)
    if n_window.lo is not None and n_window.hi is not None and n_window.lo > n_window.hi:
        raise DomainError(f"Empty n-range [{n_window.lo}, {n_window.hi}]")
    return lo, hi


def scatter_rows(n_max: int,
                 n_window: Window = Window(),
                 s_window: Window = Window(),
                 max_iterations: Optional[int] = None) -> List[Tuple[int, int]]:
    """
    Returns the points (n, S(n)) for 1 <= n <= n_max inside the windows.

    Raises
    ------
        DomainError
            If n_max < 1 or the n-window is empty.
        NonTerminationError
            If a trajectory exceeds max_iterations.
    """
    lo, hi = _n_bounds(n_max, n_window)
    points = []
    for n in range(lo, hi + 1):
        s = trajectory_stats(n, max_iterations, keep_terms=False).s
        if s_window.contains(s):
            points.append((n, s))
    return points


def curve_rows(alpha: int,
               n_max: int,
               n_window: Window = Window(),
               s_window: Window = Window()) -> List[Tuple[int, int, int]]:
    """
    Returns the rows (n, s_pred, alpha) of one constant-alpha curve inside the windows.
    """
    lo, hi = _n_bounds(n_max, n_window)
    if lo > hi:
        return []
    return [(n, s, alpha) for n, s in alpha_curve(alpha, hi, lo) if s_window.contains(s)]


def trajectory_rows(n: int, max_iterations: Optional[int] = None) -> List[Tuple[int, str, int, int]]:
    """
    Returns the path of n through the S(n) plane as rows (step, term, S(term), alpha(term)).
    Terms are decimal strings. S drops by one per row; alpha stays constant
    across a halving step and drops by one across a 3n + 1 step.

    Raises
    ------
        DomainError
            If n < 1.
        NonTerminationError
            If the trajectory exceeds max_iterations.
    """
    terms = trajectory_terms(n, max_iterations)
    remaining_odd = [0] * len(terms)
    count = 0
    # the terminal 1 is not an odd term of the trajectory
    for index in range(len(terms) - 2, -1, -1):
        if terms[index] & 1:
            count += 1
        remaining_odd[index] = count
    last = len(terms) - 1
    return [(step, str(term), last - step, remaining_odd[step])
            for step, term in enumerate(terms)]


def _join(values: Iterable[int]) -> str:
    return ';'.join(str(v) for v in values)


def sieve_rows(sets: Iterable[StoppingTimeSets]) -> List[Tuple[str, int, int, str, str]]:
    """
    Returns the rows (n, window_lo, window_hi, allowed, prohibited) of direct
    sieve results, with the sets joined by ';'.
    """
    rows = []
    for entry in sets:
        lo, hi = entry.window
        rows.append((str(entry.n), lo, hi, _join(entry.allowed), _join(entry.prohibited)))
    return rows


def propagated_rows(prohibited: Dict[int, FrozenSet[int]]) -> List[Tuple[str, int, int, str, str]]:
    """
    Returns sieve rows for a propagation result. The window of n runs from
    ceil(log2 n) to its largest prohibited value; 'allowed' lists the values
    of that window the sieve did not rule out.
    """
    rows = []
    for n, values in sorted(prohibited.items()):
        lo = ceil_log2(n)
        hi = max(values, default=lo)
        remaining = [v for v in range(lo, hi + 1) if v not in values]
        rows.append((str(n), lo, hi, _join(remaining), _join(sorted(values))))
    return rows
