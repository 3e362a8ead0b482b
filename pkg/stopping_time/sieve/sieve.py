"""
This module implements the sieve of prohibited stopping times.

If the formula S = ceil(log2(6^alpha * N)) holds, S(N) can only take the values
alpha + ceil_log2(3^alpha * N) for alpha = 0, 1, 2, ...; all other values in the
window [ceil(log2 N), bound] are prohibited. The exact relations

    S(N / 2)        = S(N) - 1   for even N
    S(3N + 1)       = S(N) - 1   for odd N >= 3
    S(2N)           = S(N) + 1   for all N
    S((N - 1) / 3)  = S(N) + 1   if (N - 1) / 3 is an odd natural >= 3

carry prohibited values from N to its neighbours, shifted by -1 or +1. All of
this assumes that the trajectories involved reach 1.
"""

__all__ = [
    'DOUBLE',
    'HALVE',
    'INVERSE_ODD',
    'PropagationEdge',
    'StoppingTimeSets',
    'TRIPLE_PLUS_ONE',
    'allowed_stopping_times',
    'neighbors',
    'propagate_prohibited',
]
__version__ = '0.1.0'


import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Set, Tuple

from opentelemetry import trace

from core_trajectory import DomainError
from formula import ceil_log2, predicted_stopping_time


HALVE = 'halve'
TRIPLE_PLUS_ONE = 'triple_plus_one'
DOUBLE = 'double'
INVERSE_ODD = 'inverse_odd'


class StoppingTimeSets(NamedTuple):
    """
    Allowed and prohibited stopping times of n within the window
    [ceil(log2 n), bound]. Both sets are sorted tuples and partition the window.
    """

    n: int
    bound: int
    allowed: Tuple[int, ...]
    prohibited: Tuple[int, ...]

    @property
    def window(self) -> Tuple[int, int]:
        """
        The inclusive window (lo, hi) both sets live in.
        """
        return ceil_log2(self.n), self.bound

    def to_dict(self) -> dict:
        """
        Returns the sets as a JSON-friendly dict; n is a decimal string.
        """
        lo, hi = self.window
        return {'n': str(self.n), 'window': [lo, hi],
                'allowed': list(self.allowed), 'prohibited': list(self.prohibited)}


class PropagationEdge(NamedTuple):
    """
    A relation S(to_n) = S(from_n) + s_shift.
    """

    from_n: int
    to_n: int
    s_shift: int
    rule: str


def allowed_stopping_times(n: int, bound: int) -> StoppingTimeSets:
    """
    Enumerates the stopping times the formula allows for n, up to bound.

    Parameters
    ----------
        n : int
            The start value, n >= 1.
        bound : int
            The largest stopping time considered, bound >= ceil(log2 n).

    Returns
    -------
        StoppingTimeSets
            The allowed values and their complement in the window.

    Raises
    ------
        DomainError
            If n < 1 or the bound lies below the window.
    """
    if n < 1:
        raise DomainError(f"Stopping times are defined for n >= 1, got {n}")
    lo = ceil_log2(n)
    if bound < lo:
        raise DomainError(f"bound {bound} lies below ceil(log2 {n}) = {lo}")
    allowed = []
    alpha = 0
    s = predicted_stopping_time(n, alpha)
    while s <= bound:
        allowed.append(s)
        alpha += 1
        s = predicted_stopping_time(n, alpha)
    allowed_set = set(allowed)
    prohibited = tuple(v for v in range(lo, bound + 1) if v not in allowed_set)
    return StoppingTimeSets(n, bound, tuple(allowed), prohibited)


def neighbors(n: int) -> List[PropagationEdge]:
    """
    Returns the edges of n along which stopping times are related: one of
    halve / triple_plus_one (by parity; none for 1), always double, and
    inverse_odd if (n - 1) / 3 is an odd natural >= 3.

    Raises
    ------
        DomainError
            If n < 1.
    """
    if n < 1:
        raise DomainError(f"Stopping times are defined for n >= 1, got {n}")
    edges = []
    if n % 2 == 0:
        edges.append(PropagationEdge(n, n // 2, -1, HALVE))
    elif n >= 3:
        edges.append(PropagationEdge(n, 3 * n + 1, -1, TRIPLE_PLUS_ONE))
    edges.append(PropagationEdge(n, 2 * n, +1, DOUBLE))
    # 1 is terminal, so 4 -> 1 is no step of any trajectory and carries no relation
    if n % 3 == 1 and (n - 1) // 3 % 2 == 1 and (n - 1) // 3 >= 3:
        edges.append(PropagationEdge(n, (n - 1) // 3, +1, INVERSE_ODD))
    return edges


def _expand(n: int, bound: int, prohibited: FrozenSet[int],
            include_direct: bool) -> List[Tuple[int, int, FrozenSet[int]]]:
    # the targets of n with their bounds and the prohibitions they receive
    expansions = []
    for edge in neighbors(n):
        target_bound = bound + edge.s_shift
        lo = ceil_log2(edge.to_n)
        if target_bound < lo:
            continue
        inherited = {p + edge.s_shift for p in prohibited if lo <= p + edge.s_shift <= target_bound}
        if include_direct:
            inherited.update(allowed_stopping_times(edge.to_n, target_bound).prohibited)
        expansions.append((edge.to_n, target_bound, frozenset(inherited)))
    return expansions


def _expand_all(items: Iterable[Tuple[int, int, FrozenSet[int], bool]]):
    return [_expand(*item) for item in items]


def propagate_prohibited(seeds: Iterable[Tuple[int, int]],
                         depth: int,
                         include_direct: bool = True,
                         workers: int = 1) -> Dict[int, FrozenSet[int]]:
    """
    Propagates prohibited stopping times breadth-first along the step relations.

    Every seed (n, bound) starts with its own prohibited set. Along an edge
    with shift d a prohibited value p of the source becomes p + d at the
    target, restricted to the target window [ceil(log2 target), bound + d].
    States are deduplicated on (target, target bound): repeated arrivals
    union their sets without being expanded again.

    Parameters
    ----------
        seeds : Iterable[Tuple[int, int]]
            Start values with their bounds.
        depth : int
            The number of breadth-first levels, 0 returns the seeds' own sets.
        include_direct : bool
            Whether each target also gets its directly computed prohibitions.
            Switch off to inspect the inherited values alone.
        workers : int
            Worker processes used to expand a level. Set union is commutative,
            so the result does not depend on it.

    Returns
    -------
        Dict[int, FrozenSet[int]]
            The prohibited stopping times per reached natural.

    Raises
    ------
        DomainError
            If depth is negative or a seed is invalid.
    """
    if depth < 0:
        raise DomainError(f"depth must not be negative, got {depth}")
    with trace.get_tracer(__name__).start_as_current_span(
            "sieve.propagate_prohibited") as otel_span:
        otel_span.set_attribute("collatz.sieve.depth", depth)
        result: Dict[int, Set[int]] = {}
        states: Dict[Tuple[int, int], Set[int]] = {}
        frontier = deque()
        for n, bound in seeds:
            own = set(allowed_stopping_times(n, bound).prohibited)
            result.setdefault(n, set()).update(own)
            if (n, bound) not in states:
                states[(n, bound)] = own
                frontier.append((n, bound))
            else:
                states[(n, bound)].update(own)

        executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
        try:
            for level in range(depth):
                if not frontier:
                    break
                level_items = sorted(frontier)
                frontier.clear()
                arguments = [(n, bound, frozenset(states[(n, bound)]), include_direct)
                             for n, bound in level_items]
                if executor is None:
                    expansions = _expand_all(arguments)
                else:
                    batch = max(1, len(arguments) // (4 * workers))
                    batches = [arguments[i:i + batch] for i in range(0, len(arguments), batch)]
                    expansions = [e for part in executor.map(_expand_all, batches) for e in part]
                for targets in expansions:
                    for target, target_bound, inherited in targets:
                        result.setdefault(target, set()).update(inherited)
                        key = (target, target_bound)
                        if key in states:
                            states[key].update(inherited)
                        else:
                            states[key] = set(inherited)
                            frontier.append(key)
                logging.debug("Sieve level %d reached %d numbers", level + 1, len(result))
        finally:
            if executor is not None:
                executor.shutdown()

        otel_span.set_attribute("collatz.sieve.reached", len(result))
        return {n: frozenset(values) for n, values in sorted(result.items())}
