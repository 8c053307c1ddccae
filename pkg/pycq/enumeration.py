''' Subset enumeration in colexicographic order, partitioned by rank ranges.

k-subsets of {0, ..., N-1} are handled as bitmasks. Colex order on subsets is
plain numeric order on their masks, so Gosper's hack walks it, and the colex
rank lets a sweep be cut into disjoint ranges that workers process
independently and a checkpoint can record.
'''
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .pycq_exceptions import BudgetError, PycqError

logger = logging.getLogger(__name__)

RankRange = Tuple[int, int]

SWEEP_CHUNK = 200_000
SWEEP_PARTS = 64


def colex_rank(mask: int) -> int:
    ''' Rank of the subset `mask` among all subsets of the same size, in colex order. '''
    rank = 0
    i = 1
    while mask:
        low = mask & -mask
        rank += comb(low.bit_length() - 1, i)
        mask ^= low
        i += 1
    return rank


def colex_unrank(rank: int, k: int) -> int:
    ''' The k-subset (as a mask) whose colex rank is `rank`. '''
    if rank < 0:
        raise PycqError(f"Rank must be non-negative, given {rank}.")
    mask = 0
    for i in range(k, 0, -1):
        # largest c with comb(c, i) <= rank
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        mask |= 1 << c
    return mask


def next_subset(mask: int) -> int:
    ''' Next mask with the same popcount (Gosper's hack). '''
    low = mask & -mask
    ripple = mask + low
    return (((ripple ^ mask) >> 2) // low) | ripple


def iter_subsets(universe: int, k: int, start: int = 0,
                 stop: Optional[int] = None) -> Iterator[int]:
    ''' Yield the k-subsets of {0, ..., universe-1} with colex ranks in [start, stop). '''
    total = comb(universe, k)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    if k == 0:
        yield 0
        return
    mask = colex_unrank(start, k)
    for _ in range(stop - start):
        yield mask
        mask = next_subset(mask)


def rank_ranges(total: int, chunk_size: int) -> List[RankRange]:
    if chunk_size < 1:
        raise PycqError(f"Chunk size must be positive, given {chunk_size}.")
    return [(s, min(s + chunk_size, total)) for s in range(0, total, chunk_size)]


def sweep_ranges(total: int, chunk_size: int = SWEEP_CHUNK,
                 parts: int = SWEEP_PARTS) -> List[RankRange]:
    ''' Rank ranges for a sweep over `total` subsets: about `parts` of them, none
    longer than `chunk_size`. The cut depends on `total` only, never on the
    worker count, so a checkpoint can be resumed with any number of workers.
    '''
    return rank_ranges(total, max(1, min(chunk_size, -(-total // parts))))


def check_budget(required: int, budget: int, what: str, lower=None, upper=None):
    if required > budget:
        raise BudgetError(
            f"{what} needs {required} subsets, which exceeds the budget of {budget}.",
            lower=lower, upper=upper, required=required
        )


@dataclass
class Checkpoint:
    ''' Completed rank ranges of a sweep plus their merged partial result.

    Stored as JSON next to the report so that an interrupted sweep can resume.
    The `params` must match exactly for a checkpoint to be reused.
    '''
    path: str
    params: Dict[str, Any]
    completed: List[RankRange] = field(default_factory=list)
    partial: Any = None

    @classmethod
    def load(cls, path: str, params: Dict[str, Any]) -> 'Checkpoint':
        if not os.path.exists(path):
            return cls(path, params)
        with open(path) as f:
            data = json.load(f)
        if data.get('params') != params:
            raise PycqError(
                f"Checkpoint '{path}' was written for {data.get('params')}, "
                f"not for {params}."
            )
        completed = [tuple(r) for r in data.get('completed', [])]
        logger.info("Resuming from %s: %d ranges already done", path, len(completed))
        return cls(path, params, completed, data.get('partial'))

    def record(self, rank_range: RankRange, partial):
        self.completed.append(tuple(rank_range))
        self.partial = partial
        tmp = self.path + '.tmp'
        with open(tmp, 'w') as f:
            json.dump({'params': self.params, 'completed': sorted(self.completed),
                       'partial': partial}, f, sort_keys=True)
        os.replace(tmp, self.path)


def run_ranges(kernel: Callable, task: Any, ranges: Sequence[RankRange],
               merge: Callable[[Any, Any], Any], initial: Any, workers: int = 1,
               checkpoint: Optional[Checkpoint] = None, progress: bool = False,
               encode: Callable[[Any], Any] = lambda x: x,
               decode: Callable[[Any], Any] = lambda x: x):
    ''' Apply `kernel(task, start, stop)` to every rank range and merge the results.

    :param kernel: module-level function (so it can be sent to worker processes)
    :param task: picklable description of the sweep, passed to every call
    :param ranges: disjoint rank ranges to process
    :param merge: commutative, associative merge of two partial results
    :param initial: identity element for `merge`
    :param int workers: number of processes; 1 runs in this process
    :param checkpoint: optional Checkpoint; completed ranges are skipped and
        every finished range is recorded
    :param encode: turns a partial result into JSON-able data for the checkpoint
    :param decode: inverse of `encode`
    :return: the merged result, independent of the order ranges finish in
    '''
    result = initial
    todo = list(ranges)
    if checkpoint is not None:
        done = set(checkpoint.completed)
        foreign = done - {tuple(r) for r in todo}
        if foreign:
            raise PycqError(f"Checkpoint '{checkpoint.path}' records rank range "
                            f"{min(foreign)}, which is not part of this sweep.")
        if checkpoint.partial is not None:
            result = decode(checkpoint.partial)
        todo = [r for r in todo if tuple(r) not in done]

    bar = tqdm(total=len(todo), disable=not progress, unit='range')

    def finish(rank_range, partial):
        nonlocal result
        result = merge(result, partial)
        if checkpoint is not None:
            checkpoint.record(rank_range, encode(result))
        bar.update()

    try:
        if workers <= 1 or len(todo) <= 1:
            for start, stop in todo:
                finish((start, stop), kernel(task, start, stop))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = {pool.submit(kernel, task, start, stop): (start, stop)
                           for start, stop in todo}
                for future in as_completed(futures):
                    finish(futures[future], future.result())
    finally:
        bar.close()
    logger.info("Finished %d rank ranges", len(todo))
    return result
