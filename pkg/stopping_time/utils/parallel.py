"""
This module defines 'ChunkPool', a small wrapper around a process pool that evaluates
independent chunks of work in waves and hands back the results in submission order.
"""

__all__ = [
    'ChunkPool',
]
__version__ = '0.1.0'


import asyncio
from concurrent.futures import ProcessPoolExecutor
from types import TracebackType
from typing import Any, Callable, Iterable, List, Optional, Type


class ChunkPool:
    """
    Evaluates a picklable function on chunk arguments. With a single worker
    everything runs in the calling process; otherwise a ProcessPoolExecutor
    is used and the wave is awaited with asyncio.gather, which keeps the
    order of the arguments no matter which chunk finishes first.
    """

    def __init__(self, workers: int) -> None:
        if workers < 1:
            raise ValueError(f"workers must be positive, got {workers}")
        self._workers = workers
        self._executor: Optional[ProcessPoolExecutor] = None

    @property
    def workers(self) -> int:
        """
        Returns the number of worker processes.
        """
        return self._workers

    async def __aenter__(self) -> "ChunkPool":
        if self._workers > 1:
            self._executor = ProcessPoolExecutor(max_workers=self._workers)
        return self

    async def __aexit__(
        self,
        exc_type: Optional[Type[BaseException]],
        exc_val: Optional[BaseException],
        exc_tb: Optional[TracebackType]
    ) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=exc_type is not None)
            self._executor = None

    async def run_wave(self, func: Callable[..., Any], argument_tuples: Iterable[tuple]) -> List[Any]:
        """
        Evaluates func(*arguments) for every tuple of the wave.

        Parameters
        ----------
            func : Callable
                A module-level (thus picklable) function.
            argument_tuples : Iterable[tuple]
                The positional arguments per chunk.

        Returns
        -------
            List[Any]
                The results, in the order of argument_tuples.
        """
        if self._executor is None:
            return [func(*arguments) for arguments in argument_tuples]
        loop = asyncio.get_running_loop()
        futures = [loop.run_in_executor(self._executor, func, *arguments)
                   for arguments in argument_tuples]
        return list(await asyncio.gather(*futures))
