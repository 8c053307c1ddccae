''' Fault diagnosis of CQ_n under the PMC and MM* models.

Two fault sets are distinguishable when no syndrome is compatible with both.
The closed-form predicates `pmc_distinguishable` and `mm_distinguishable`
decide this directly from the graph; `oracle_distinguishable` decides it from
the syndrome semantics and serves as their cross-check.

Diagnosability searches run in two steps. A pair built from the structure of
the cube (a small connected set S with its neighborhood) is tried first. On
cubes small enough for per-mask lookup tables (n <= MASK_TABLE_MAX_DIMENSION)
the g-extra faulty sets are then enumerated by size and colex rank and every
pair is checked with numpy.
'''
import hashlib
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .core import VertexSet, popcount, DEFAULT_BUDGET, DEFAULT_PAIR_BUDGET, MASK_TABLE_MAX_DIMENSION
from .enumeration import iter_subsets, rank_ranges, run_ranges, check_budget
from .extremal import extra_cut_upper_bound, witness_bundle
from .pycq_exceptions import BudgetError, PycqError, WitnessError
from .structure import _all_components_at_least, _masks_for, is_g_extra_faulty_set
from .topology import CrossedCube

logger = logging.getLogger(__name__)

Test = Tuple[int, ...]

DEFAULT_PAIR_CHUNK = 512


class DiagnosisModel(Enum):
    PMC = 'pmc'
    MMSTAR = 'mm'


def tests_of(cube: CrossedCube, model: DiagnosisModel) -> List[Test]:
    ''' Every test of the model on `cube`, in ascending order.

    PMC: ordered pairs (u, v) of adjacent vertices, u tests v.
    MM*: triples (w, u, v) with u < v both adjacent to w; w compares u and v.
    '''
    tests = []
    for w in range(cube.vertex_count):
        nbrs = cube.neighbor_list(w)
        if model is DiagnosisModel.PMC:
            tests.extend((w, v) for v in nbrs)
        else:
            tests.extend((w, u, v) for i, u in enumerate(nbrs) for v in nbrs[i + 1:])
    return tests


def _forced_outcome(test: Test, faults: int) -> Optional[int]:
    ''' Outcome a fault-free tester must report; None when the tester is faulty. '''
    if faults >> test[0] & 1:
        return None
    return int(any(faults >> v & 1 for v in test[1:]))


def _adversary_bit(seed: int, test: Test) -> int:
    digest = hashlib.blake2b(f"{seed}:{','.join(map(str, test))}".encode(), digest_size=1)
    return digest.digest()[0] & 1


@dataclass(frozen=True)
class Syndrome:
    ''' The outcome of every test of `model` on CQ_n. '''
    n: int
    model: DiagnosisModel
    outcomes: Tuple[Tuple[Test, int], ...]

    def as_dict(self) -> Dict[Test, int]:
        return dict(self.outcomes)

    def __getitem__(self, test: Test) -> int:
        return self.as_dict()[test]

    def ones(self) -> List[Test]:
        return [t for t, bit in self.outcomes if bit]


@dataclass(frozen=True)
class FaultPair:
    F1: VertexSet
    F2: VertexSet
    g: int
    model: DiagnosisModel

    def __post_init__(self):
        if self.F1 == self.F2:
            raise PycqError("A fault pair needs two different fault sets.")

    @property
    def size(self) -> int:
        return max(len(self.F1), len(self.F2))


def generate_syndrome(cube: CrossedCube, f: VertexSet, model: DiagnosisModel,
                      adversary_seed: int = 0) -> Syndrome:
    ''' A syndrome the fault set F could produce.

    Fault-free testers report what the model forces. Outcomes of faulty testers
    come from a fixed pseudorandom function of (seed, test); any fixed choice is
    as good as another, since compatibility is decided per test.
    '''
    outcomes = []
    for test in tests_of(cube, model):
        bit = _forced_outcome(test, f.bits)
        if bit is None:
            bit = _adversary_bit(adversary_seed, test)
        outcomes.append((test, bit))
    return Syndrome(cube.n, model, tuple(outcomes))


def syndrome_compatible(cube: CrossedCube, f: VertexSet, s: Syndrome,
                        model: DiagnosisModel) -> bool:
    if s.model is not model or s.n != cube.n:
        raise PycqError(f"Syndrome of the {s.model.value} model on CQ_{s.n} checked against "
                        f"the {model.value} model on CQ_{cube.n}.")
    outcomes = s.as_dict()
    for test in tests_of(cube, model):
        if test not in outcomes:
            raise PycqError(f"Syndrome has no outcome for test {test}.")
        forced = _forced_outcome(test, f.bits)
        if forced is not None and outcomes[test] != forced:
            return False
    return True


def _check_pair(f1: VertexSet, f2: VertexSet):
    if f1 == f2:
        raise PycqError(f"Distinguishability is only defined for F1 != F2, given {f1} twice.")


def pmc_distinguishable(cube: CrossedCube, f1: VertexSet, f2: VertexSet) -> bool:
    ''' Some edge uv has u outside F1 + F2 and v in F1 ^ F2. '''
    _check_pair(f1, f2)
    outside = ~(f1 | f2).bits
    masks = cube.neighbor_masks()
    return any(masks[v] & outside for v in f1 ^ f2)


def mm_distinguishable(cube: CrossedCube, f1: VertexSet, f2: VertexSet) -> bool:
    ''' Some fault-free w sees a difference the MM* model cannot hide.

    Either w has a fault-free neighbor and a neighbor in F1 ^ F2, or w has two
    neighbors in F1 - F2, or two neighbors in F2 - F1.
    '''
    _check_pair(f1, f2)
    masks = cube.neighbor_masks()
    alive = (f1 | f2).complement().bits
    diff = (f1 ^ f2).bits
    only1 = (f1 - f2).bits
    only2 = (f2 - f1).bits
    for w in VertexSet(cube.n, alive):
        m = masks[w]
        if m & alive and m & diff:
            return True
        if popcount(m & only1) >= 2 or popcount(m & only2) >= 2:
            return True
    return False


def distinguishable(cube: CrossedCube, f1: VertexSet, f2: VertexSet,
                    model: DiagnosisModel) -> bool:
    if model is DiagnosisModel.PMC:
        return pmc_distinguishable(cube, f1, f2)
    return mm_distinguishable(cube, f1, f2)


def oracle_distinguishable(cube: CrossedCube, f1: VertexSet, f2: VertexSet,
                           model: DiagnosisModel, method: str = 'propagation',
                           budget: int = DEFAULT_BUDGET) -> bool:
    ''' Distinguishability decided from the syndrome semantics alone.

    :param method: 'propagation' compares the forced outcomes of every test
        whose tester is fault-free under both sets (any disagreement means no
        common syndrome); 'search' enumerates every syndrome F1 can produce that
        could also suit F2 and checks each against F2
    :param budget: maximum number of syndromes the search may try
    '''
    _check_pair(f1, f2)
    tests = tests_of(cube, model)
    if method == 'propagation':
        for test in tests:
            a = _forced_outcome(test, f1.bits)
            b = _forced_outcome(test, f2.bits)
            if a is not None and b is not None and a != b:
                return True
        return False
    if method != 'search':
        raise PycqError(f"Unknown oracle method '{method}', expected 'propagation' or 'search'.")

    # Only tests with a tester in F1 - F2 are both free under F1 and forced under F2;
    # outcomes of the remaining free tests never affect compatibility with F2.
    free = [t for t in tests if t[0] in f1 and t[0] not in f2]
    check_budget(2 ** len(free), budget, f"Syndrome search over {len(free)} free tests",
                 lower=None, upper=None)
    base = {}
    for test in tests:
        forced = _forced_outcome(test, f1.bits)
        base[test] = 0 if forced is None else forced
    for bits in product((0, 1), repeat=len(free)):
        outcomes = dict(base)
        outcomes.update(zip(free, bits))
        if all(_forced_outcome(t, f2.bits) in (None, outcomes[t]) for t in tests):
            return False
    return True


def common_syndrome(cube: CrossedCube, f1: VertexSet, f2: VertexSet, model: DiagnosisModel,
                    adversary_seed: int = 0) -> Optional[Syndrome]:
    ''' A syndrome compatible with both F1 and F2, or None if they are distinguishable.

    Each outcome is the one forced by whichever set has a fault-free tester;
    tests with a faulty tester under both sets take the adversary's bit.
    '''
    _check_pair(f1, f2)
    outcomes = []
    for test in tests_of(cube, model):
        a = _forced_outcome(test, f1.bits)
        b = _forced_outcome(test, f2.bits)
        if a is not None and b is not None and a != b:
            return None
        bit = a if a is not None else b
        if bit is None:
            bit = _adversary_bit(adversary_seed, test)
        outcomes.append((test, bit))
    return Syndrome(cube.n, model, tuple(outcomes))


@dataclass
class DiagnosabilityVerdict:
    ''' Whether CQ_n is g-extra t-diagnosable, with a counterexample when it is not.

    `method` names what settled the question: 'structure' (a constructed
    indistinguishable pair), 'lower-bound' (the PMC bound from extra
    connectivity) or 'exhaustive' (a full pair sweep).
    '''
    n: int
    g: int
    t: int
    model: DiagnosisModel
    diagnosable: bool
    witness: Optional[FaultPair]
    pairs_checked: int
    method: str

    def __bool__(self):
        return self.diagnosable


@dataclass
class DiagnosabilityBracket:
    ''' lower <= t~_g(CQ_n) <= upper; `upper` is None when no witness pair was found. '''
    n: int
    g: int
    model: DiagnosisModel
    lower: int
    upper: Optional[int]
    witness: Optional[FaultPair]
    pairs_checked: int
    method: str

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None


def structural_lower_bound(cube: CrossedCube, g: int, model: DiagnosisModel = DiagnosisModel.PMC,
                           extra_connectivity: Optional[int] = None) -> int:
    ''' A lower bound on t~_g(CQ_n) that needs no search.

    Under PMC the common part F1 & F2 of an indistinguishable pair is a g-extra
    cut and one of F1 - F2, F2 - F1 has at least g+1 vertices, so t~_g is at
    least the g-extra connectivity plus g. When the g-extra connectivity is not
    supplied the connectivity n stands in for it. MM* gets the trivial bound 0.
    '''
    if g < 0:
        raise PycqError(f"g must be non-negative, given {g}.")
    if model is DiagnosisModel.MMSTAR or cube.n < 2:
        return 0
    kappa = cube.n if extra_connectivity is None else extra_connectivity
    if kappa < cube.n:
        raise PycqError(f"A {g}-extra connectivity of {kappa} is below the connectivity "
                        f"{cube.n} of CQ_{cube.n}.")
    return kappa + g


def _structured_candidates(cube: CrossedCube, g: int) -> Iterator[Tuple[VertexSet, VertexSet]]:
    if g == 3 and cube.n >= 4:
        bundle = witness_bundle(cube.n)
        yield bundle.F1, bundle.F2
    bound = extra_cut_upper_bound(cube, g)
    if bound is not None:
        yield bound.cut, bound.cut | bound.seed


def structured_witness(cube: CrossedCube, g: int,
                       model: DiagnosisModel) -> Optional[FaultPair]:
    ''' The smallest indistinguishable pair (N(S), S + N(S)) over the constructed seeds S.

    Every candidate is re-checked: both sets must be g-extra faulty sets and
    the model's predicate must fail to tell them apart.
    '''
    best = None
    for f1, f2 in _structured_candidates(cube, g):
        if not (is_g_extra_faulty_set(cube, f1, g) and is_g_extra_faulty_set(cube, f2, g)):
            raise WitnessError(f"Constructed pair {f1}, {f2} is not a pair of {g}-extra "
                               f"faulty sets of CQ_{cube.n}.")
        if distinguishable(cube, f1, f2, model):
            raise WitnessError(f"Constructed pair {f1}, {f2} is distinguishable under "
                               f"{model.value} in CQ_{cube.n}.")
        pair = FaultPair(f1, f2, g, model)
        if best is None or pair.size < best.size:
            best = pair
    return best


@lru_cache(maxsize=None)
def _mask_tables(n: int) -> Tuple[np.ndarray, np.ndarray]:
    ''' For every vertex mask m of CQ_n: the union of neighborhoods of m, and the
    set of vertices with at least two neighbors in m. '''
    if n > MASK_TABLE_MAX_DIMENSION:
        raise PycqError(f"Mask tables are only built for n <= {MASK_TABLE_MAX_DIMENSION}, "
                        f"given {n}.")
    masks = _masks_for(n)
    size = 1 << (1 << n)
    nbr = np.zeros(size, dtype=np.int64)
    nbr2 = np.zeros(size, dtype=np.int64)
    for v, m in enumerate(masks):
        lo, hi = 1 << v, 1 << (v + 1)
        nbr2[lo:hi] = nbr2[:lo] | (nbr[:lo] & m)
        nbr[lo:hi] = nbr[:lo] | m
    return nbr, nbr2


@lru_cache(maxsize=4)
def _faulty_sets(n: int, g: int, t: int) -> Tuple[np.ndarray, Tuple[int, ...]]:
    ''' The g-extra faulty sets of size <= t ordered by (size, colex rank), with level starts.

    starts[s] is the index of the first set of size s; starts[t+1] is the total.
    '''
    masks = _masks_for(n)
    universe = 1 << n
    full = (1 << universe) - 1
    sets: List[int] = []
    starts = []
    for s in range(t + 1):
        starts.append(len(sets))
        sets.extend(m for m in iter_subsets(universe, s)
                    if _all_components_at_least(masks, full & ~m, g + 1))
    starts.append(len(sets))
    return np.array(sets, dtype=np.int64), tuple(starts)


def _indistinguishable(f2: int, f1s: np.ndarray, model: DiagnosisModel, n: int) -> np.ndarray:
    ''' Boolean array: which of the sets f1s cannot be told apart from f2 (unions = V skipped). '''
    nbr, nbr2 = _mask_tables(n)
    full = (1 << (1 << n)) - 1
    alive = full & ~(f1s | f2)
    diff = f1s ^ f2
    if model is DiagnosisModel.PMC:
        told = (nbr[diff] & alive) != 0
    else:
        told = ((nbr[diff] & alive & nbr[alive]) != 0) \
            | ((nbr2[f1s & ~f2] & alive) != 0) \
            | ((nbr2[f2 & ~f1s] & alive) != 0)
    return (alive != 0) & ~told


def _pair_chunk(task, start, stop):
    n, g, t, model_value = task
    model = DiagnosisModel(model_value)
    sets, _ = _faulty_sets(n, g, t)
    pairs = 0
    for i in range(start, stop):
        hits = np.flatnonzero(_indistinguishable(int(sets[i]), sets[:i], model, n))
        if hits.size:
            j = int(hits[0])
            return {'first': (i, j), 'pairs': pairs + j + 1}
        pairs += i
    return {'first': None, 'pairs': pairs}


def _merge_pairs(a, b):
    firsts = [p for p in (a['first'], b['first']) if p is not None]
    return {'first': min(firsts) if firsts else None, 'pairs': a['pairs'] + b['pairs']}


@dataclass
class _SweepOutcome:
    witness: Optional[Tuple[int, int]]
    verified: int
    pairs_checked: int
    required: Optional[int] = None


def _sweep(cube: CrossedCube, g: int, t: int, model: DiagnosisModel, budget: int,
           workers: int, progress: bool) -> _SweepOutcome:
    ''' Check all pairs of g-extra faulty sets of size <= t, one size level at a time.

    A level s pairs every set of size s with every set before it in (size, rank)
    order. The sweep stops at the first level holding an indistinguishable pair
    or at the first level the budget cannot pay for. `verified` is the largest
    size through which every pair has been checked.
    '''
    n = cube.n
    universe = cube.vertex_count
    t = min(t, universe)
    sets, starts = _faulty_sets(n, g, t)
    logger.info("CQ_%d: %d %d-extra faulty sets of size <= %d", n, len(sets), g, t)
    spent = 0
    for s in range(t + 1):
        lo, hi = starts[s], starts[s + 1]
        level = (lo + hi - 1) * (hi - lo) // 2
        if spent + level > budget:
            return _SweepOutcome(None, s - 1, spent, spent + level)
        chunk = max(1, min(DEFAULT_PAIR_CHUNK, (hi - lo) // max(1, workers)))
        ranges = [(lo + a, lo + b) for a, b in rank_ranges(hi - lo, chunk)]
        found = run_ranges(_pair_chunk, (n, g, t, model.value), ranges, _merge_pairs,
                           {'first': None, 'pairs': 0}, workers=workers, progress=progress)
        spent += found['pairs']
        if found['first'] is not None:
            logger.info("CQ_%d: indistinguishable pair at size %d after %d pairs", n, s, spent)
            return _SweepOutcome(found['first'], s - 1, spent)
    return _SweepOutcome(None, t, spent)


def _pair_from(sets: np.ndarray, first: Tuple[int, int], n: int, g: int,
               model: DiagnosisModel) -> FaultPair:
    i, j = first
    return FaultPair(VertexSet(n, int(sets[j])), VertexSet(n, int(sets[i])), g, model)


def is_g_extra_t_diagnosable(cube: CrossedCube, g: int, t: int, model: DiagnosisModel,
                             budget: int = DEFAULT_PAIR_BUDGET, workers: int = 1,
                             progress: bool = False,
                             extra_connectivity: Optional[int] = None) -> DiagnosabilityVerdict:
    ''' Decide whether every pair of distinct g-extra faulty sets of size <= t is distinguishable.

    :param cube: the crossed cube
    :param g: extra-ness of the fault sets
    :param t: maximum fault set size
    :param model: PMC or MM*
    :param budget: maximum number of pairs the exhaustive sweep may check
    :param extra_connectivity: known g-extra connectivity, sharpens the PMC lower bound
    :return: DiagnosabilityVerdict; a negative verdict carries the witness pair
    :raises BudgetError: when neither construction nor bound settles the question and
        the sweep does not fit the budget (or the cube is too large for it)
    '''
    if t < 0:
        raise PycqError(f"t must be non-negative, given {t}.")
    n = cube.n
    witness = structured_witness(cube, g, model)
    if witness is not None and witness.size <= t:
        return DiagnosabilityVerdict(n, g, t, model, False, witness, 1, 'structure')
    lower = structural_lower_bound(cube, g, model, extra_connectivity)
    if t <= lower:
        return DiagnosabilityVerdict(n, g, t, model, True, None, 0, 'lower-bound')
    upper = witness.size - 1 if witness is not None else None
    if n > MASK_TABLE_MAX_DIMENSION:
        raise BudgetError(f"Deciding {g}-extra {t}-diagnosability of CQ_{n} needs a pair sweep, "
                          f"which is only run for n <= {MASK_TABLE_MAX_DIMENSION}.",
                          lower=lower, upper=upper)
    outcome = _sweep(cube, g, t, model, budget, workers, progress)
    if outcome.required is not None:
        raise BudgetError(f"Deciding {g}-extra {t}-diagnosability of CQ_{n} needs "
                          f"{outcome.required} pairs, exceeding the budget of {budget}.",
                          lower=max(lower, outcome.verified), upper=upper,
                          required=outcome.required)
    if outcome.witness is None:
        return DiagnosabilityVerdict(n, g, t, model, True, None, outcome.pairs_checked,
                                     'exhaustive')
    sets, _ = _faulty_sets(n, g, min(t, cube.vertex_count))
    pair = _pair_from(sets, outcome.witness, n, g, model)
    return DiagnosabilityVerdict(n, g, t, model, False, pair, outcome.pairs_checked, 'exhaustive')


def extra_diagnosability(cube: CrossedCube, g: int, model: DiagnosisModel,
                         budget: int = DEFAULT_PAIR_BUDGET, workers: int = 1,
                         progress: bool = False, exhaustive: bool = True,
                         extra_connectivity: Optional[int] = None) -> DiagnosabilityBracket:
    ''' t~_g(CQ_n) exactly when it can be settled, else the tightest bracket found.

    The upper end comes from the constructed witness pair, the lower end from
    structural_lower_bound and from the largest size the sweep fully checked.
    Never raises BudgetError.
    '''
    n = cube.n
    witness = structured_witness(cube, g, model)
    upper = witness.size - 1 if witness is not None else None
    lower = structural_lower_bound(cube, g, model, extra_connectivity)
    if upper is not None and lower > upper:
        raise WitnessError(f"Lower bound {lower} on t~_{g}(CQ_{n}) exceeds the {upper} "
                           f"shown by the witness pair {witness.F1}, {witness.F2}.")
    if upper is not None and lower == upper:
        return DiagnosabilityBracket(n, g, model, upper, upper, witness, 0, 'lower-bound')
    if not exhaustive or n > MASK_TABLE_MAX_DIMENSION:
        return DiagnosabilityBracket(n, g, model, lower, upper, witness, 0, 'structure')

    limit = upper + 1 if upper is not None else cube.vertex_count
    outcome = _sweep(cube, g, limit, model, budget, workers, progress)
    if outcome.required is not None:
        return DiagnosabilityBracket(n, g, model, max(lower, outcome.verified), upper, witness,
                                     outcome.pairs_checked, 'bracket')
    if outcome.witness is None:
        return DiagnosabilityBracket(n, g, model, outcome.verified, outcome.verified, None,
                                     outcome.pairs_checked, 'exhaustive')
    sets, _ = _faulty_sets(n, g, min(limit, cube.vertex_count))
    pair = _pair_from(sets, outcome.witness, n, g, model)
    return DiagnosabilityBracket(n, g, model, pair.size - 1, pair.size - 1, pair,
                                 outcome.pairs_checked, 'exhaustive')
