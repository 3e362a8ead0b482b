"""
This module evaluates the stopping-time formula S = ceil(log2(6^alpha * N)) exactly in
integer arithmetic and computes the residue eps(N) = S - log2(6^alpha * N).

The verdict never touches floating point: ceil(log2(m)) of an integer m >= 2 is the bit
length of m - 1, and the factor 2^alpha of 6^alpha only shifts the logarithm by alpha.
The residue is a float, good to about 1e-14, and only feeds histograms and bound checks.
"""

__all__ = [
    'FormulaPrediction',
    'FormulaVerdict',
    'RESIDUE_BOUND',
    'StoppingProfile',
    'ceil_log2',
    'check_formula',
    'power_of_three',
    'predict',
    'predicted_stopping_time',
    'profile',
    'residue',
    'residue_exceeds',
]
__version__ = '0.1.0'


import math
from functools import lru_cache
from typing import NamedTuple, Optional

import mpmath

from core_trajectory import DomainError, TrajectoryStats, trajectory_stats


# the empirical upper bound of the residue reported for N < 10^7
RESIDUE_BOUND = 0.326

_MANTISSA_BITS = 96
_FALLBACK_PRECISION = 256
_FALLBACK_MARGIN = 1e-6


class FormulaPrediction(NamedTuple):
    """
    The formula evaluated for a start value and a given alpha. The residue is
    only meaningful if alpha is the true odd-term count of n.
    """

    n: int
    alpha: int
    predicted_s: int
    residue: Optional[float] = None


class FormulaVerdict(NamedTuple):
    """
    The result of comparing a simulated stopping time with the formula.
    """

    n: int
    alpha: int
    true_s: int
    predicted_s: int

    @property
    def holds(self) -> bool:
        """
        Whether the simulated and the predicted stopping time agree.
        """
        return self.true_s == self.predicted_s


class StoppingProfile(NamedTuple):
    """
    Everything known about the stopping time of a single start value.
    """

    n: int
    s: int
    alpha: int
    even_steps: int
    predicted_s: int
    residue: float
    holds: bool

    def to_dict(self, precision: int = 12) -> dict:
        """
        Returns a JSON-friendly dict; the start value is a decimal string.
        """
        return {
            'n': str(self.n),
            's': self.s,
            'alpha': self.alpha,
            'even_steps': self.even_steps,
            'predicted_s': self.predicted_s,
            'residue': round(self.residue, precision),
            'verdict': 'holds' if self.holds else 'violated',
        }


def ceil_log2(m: int) -> int:
    """
    Exact ceil(log2(m)) of a positive integer.

    Raises
    ------
        DomainError
            If m < 1.
    """
    if m < 1:
        raise DomainError(f"ceil_log2 is defined for m >= 1, got {m}")
    if m == 1:
        return 0
    return (m - 1).bit_length()


# larger exponents are recomputed on every call
_CACHED_EXPONENTS = 2048


@lru_cache(maxsize=None)
def _small_power_of_three(alpha: int) -> int:
    return 3 ** alpha


def power_of_three(alpha: int) -> int:
    """
    3^alpha. Exponents below 2048 are cached per process.
    """
    if alpha < _CACHED_EXPONENTS:
        return _small_power_of_three(alpha)
    return 3 ** alpha


def predicted_stopping_time(n: int, alpha: int) -> int:
    """
    Evaluates ceil(log2(6^alpha * n)) as alpha + ceil_log2(3^alpha * n).

    Parameters
    ----------
        n : int
            The start value, n >= 1.
        alpha : int
            The odd-term count, alpha >= 0.

    Returns
    -------
        int
            The predicted stopping time.
    """
    if n < 1:
        raise DomainError(f"The formula is defined for n >= 1, got {n}")
    if alpha < 0:
        raise DomainError(f"alpha must not be negative, got {alpha}")
    return alpha + ceil_log2(power_of_three(alpha) * n)


def _log2_fraction(m: int) -> float:
    # log2(m) - (bitlen(m) - 1), from the top bits of m; lies in [0, 1)
    bits = m.bit_length()
    kept = min(bits, _MANTISSA_BITS)
    top = m >> (bits - kept)
    return math.log2(top) - (kept - 1)


def residue(n: int, stats: TrajectoryStats) -> float:
    """
    Computes eps(n) = S - log2(6^alpha * n) for a simulated trajectory.

    The integer part S - alpha - (bitlen(3^alpha n) - 1) is exact, only the
    fractional part of log2(3^alpha * n) is rounded.

    Parameters
    ----------
        n : int
            The start value.
        stats : TrajectoryStats
            The statistics of the trajectory of n.

    Returns
    -------
        float
            The residue.
    """
    m = power_of_three(stats.alpha) * n
    whole = stats.s - stats.alpha - (m.bit_length() - 1)
    return whole - _log2_fraction(m)


def residue_exceeds(n: int, stats: TrajectoryStats, bound: float = RESIDUE_BOUND) -> bool:
    """
    Decides eps(n) >= bound. Values within 1e-6 of the bound are re-evaluated
    with a 256 bit mantissa.
    """
    eps = residue(n, stats)
    if abs(eps - bound) >= _FALLBACK_MARGIN:
        return eps >= bound
    m = power_of_three(stats.alpha) * n
    with mpmath.workprec(_FALLBACK_PRECISION):
        exact = mpmath.mpf(stats.s - stats.alpha) - mpmath.log(mpmath.mpf(m), 2)
        return exact >= mpmath.mpf(bound)


def check_formula(n: int, stats: TrajectoryStats) -> FormulaVerdict:
    """
    Compares the simulated stopping time with the formula, in integers only.
    """
    return FormulaVerdict(n, stats.alpha, stats.s, predicted_stopping_time(n, stats.alpha))


def predict(n: int, stats: TrajectoryStats) -> FormulaPrediction:
    """
    Returns the prediction for the true alpha of n, including the residue.
    """
    return FormulaPrediction(
        n, stats.alpha, predicted_stopping_time(n, stats.alpha), residue(n, stats))


def profile(n: int, max_iterations: Optional[int] = None) -> StoppingProfile:
    """
    Simulates the trajectory of n and evaluates the formula against it.

    Raises
    ------
        DomainError
            If n < 1.
        NonTerminationError
            If the trajectory exceeds max_iterations.
    """
    stats = trajectory_stats(n, max_iterations, keep_terms=False)
    verdict = check_formula(n, stats)
    return StoppingProfile(
        n=n,
        s=stats.s,
        alpha=stats.alpha,
        even_steps=stats.even_steps,
        predicted_s=verdict.predicted_s,
        residue=residue(n, stats),
        holds=verdict.holds)
