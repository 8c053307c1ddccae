import logging
import warnings
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .core import (VertexSet, iter_bits, popcount, DEFAULT_BUDGET, CONNECTIVITY_MAX_DIMENSION)
from .enumeration import (iter_subsets, sweep_ranges, run_ranges, check_budget, colex_rank,
                          Checkpoint)
from .lemmas import Lemma, Condition, applicable_lemma, get_lemma
from .pycq_exceptions import PycqError, BudgetError
from .topology import CrossedCube

logger = logging.getLogger(__name__)

MAX_RECORDED_VIOLATIONS = 100


class ShapeKind(Enum):
    ISOLATED_VERTEX = 'IsolatedVertex'
    K2 = 'K2'
    PATH2 = 'Path2'  # path with 3 vertices
    PATH3 = 'Path3'  # path with 4 vertices
    STAR13 = 'Star13'
    OTHER = 'Other'


@dataclass(frozen=True)
class ComponentShape:
    order: int
    kind: ShapeKind

    def sort_key(self):
        return (self.order, self.kind.value)

    def __str__(self):
        if self.kind is ShapeKind.OTHER:
            return f"Other({self.order})"
        return self.kind.value


ISOLATED_VERTEX = ComponentShape(1, ShapeKind.ISOLATED_VERTEX)
K2 = ComponentShape(2, ShapeKind.K2)
PATH2 = ComponentShape(3, ShapeKind.PATH2)
PATH3 = ComponentShape(4, ShapeKind.PATH3)
STAR13 = ComponentShape(4, ShapeKind.STAR13)


def other(order: int) -> ComponentShape:
    return ComponentShape(order, ShapeKind.OTHER)


@dataclass(frozen=True)
class ComponentProfile:
    ''' Multiset of the component shapes of CQ_n - F, smallest first. '''
    shapes: Tuple[ComponentShape, ...]

    @property
    def component_count(self) -> int:
        return len(self.shapes)

    @property
    def max_order(self) -> int:
        return max((s.order for s in self.shapes), default=0)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(s.order for s in self.shapes)

    @property
    def vertex_count(self) -> int:
        return sum(self.orders)

    def describe(self) -> str:
        return '+'.join(str(s) for s in self.shapes) or 'empty'


@dataclass(frozen=True)
class LemmaVerdict:
    ''' Which condition of a component-structure result CQ_n - F satisfies.

    `condition_index` is VIOLATION when no condition matches, in which case
    `witness` holds the offending fault set and profile.
    '''
    lemma_id: str
    condition_index: Union[int, str]
    witness: Optional[Tuple[VertexSet, ComponentProfile]] = None

    @property
    def is_violation(self) -> bool:
        return self.condition_index == VIOLATION


VIOLATION = 'violation'


@dataclass
class ExtraCutResult:
    g: int
    value: int
    witness: VertexSet
    profile: ComponentProfile
    lower: int
    upper: Optional[int]
    subsets_checked: int


@dataclass
class SweepReport:
    n: int
    size: int
    lemma_id: str
    total_subsets: int
    condition_histogram: Counter
    violations: List[Tuple[int, str]]
    violation_count: int


@lru_cache(maxsize=None)
def _masks_for(n: int) -> Tuple[int, ...]:
    return CrossedCube(n).neighbor_masks()


def _component_masks(masks, alive: int) -> List[int]:
    ''' Components of the subgraph induced by `alive`, in order of their minimum label. '''
    comps = []
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= masks[low.bit_length() - 1]
                f ^= low
            frontier = grow & alive & ~comp
            comp |= frontier
        comps.append(comp)
        alive &= ~comp
    return comps


def _all_components_at_least(masks, alive: int, size: int, min_count: int = 0) -> bool:
    ''' True iff every component of `alive` has >= size vertices and there are >= min_count. '''
    count = 0
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= masks[low.bit_length() - 1]
                f ^= low
            frontier = grow & alive & ~comp
            comp |= frontier
        if popcount(comp) < size:
            return False
        count += 1
        alive &= ~comp
    return count >= min_count


def _shape_of_mask(masks, comp: int) -> ComponentShape:
    order = popcount(comp)
    if order == 1:
        return ISOLATED_VERTEX
    if order == 2:
        return K2
    if order > 4:
        return other(order)
    degrees = sorted(popcount(masks[v] & comp) for v in iter_bits(comp))
    edges = sum(degrees) // 2
    if order == 3:
        if edges == 2:
            return PATH2
        warnings.warn(f"Component {sorted(iter_bits(comp))} is a triangle.")
        return other(3)
    if edges == 3:
        return STAR13 if degrees[-1] == 3 else PATH3
    return other(4)


def _profile_of_masks(masks, comps: List[int]) -> ComponentProfile:
    return ComponentProfile(tuple(sorted((_shape_of_mask(masks, c) for c in comps),
                                         key=ComponentShape.sort_key)))


def _alive(cube: CrossedCube, f: VertexSet) -> int:
    if f.n != cube.n:
        raise PycqError(f"Fault set of CQ_{f.n} used with CQ_{cube.n}.")
    return ((1 << cube.vertex_count) - 1) & ~f.bits


def components(cube: CrossedCube, f: VertexSet) -> List[VertexSet]:
    ''' Components of CQ_n - F, ordered by minimum label. '''
    masks = cube.neighbor_masks()
    return [VertexSet(cube.n, c) for c in _component_masks(masks, _alive(cube, f))]


def classify_shape(cube: CrossedCube, comp: VertexSet) -> ComponentShape:
    ''' Exact shape of a connected vertex set of order <= 4; Other(order) above that.

    :param cube: the crossed cube containing comp
    :param comp: a non-empty vertex set inducing a connected subgraph
    '''
    masks = cube.neighbor_masks()
    if not comp:
        raise PycqError("Cannot classify the shape of an empty vertex set.")
    if len(_component_masks(masks, comp.bits)) != 1:
        raise PycqError(f"{comp} does not induce a connected subgraph of CQ_{cube.n}.")
    return _shape_of_mask(masks, comp.bits)


def profile(cube: CrossedCube, f: VertexSet) -> ComponentProfile:
    masks = cube.neighbor_masks()
    return _profile_of_masks(masks, _component_masks(masks, _alive(cube, f)))


def _check_g(g: int):
    if g < 0:
        raise PycqError(f"g must be non-negative, given {g}.")


def is_g_extra_faulty_set(cube: CrossedCube, f: VertexSet, g: int) -> bool:
    ''' Every component of CQ_n - F has at least g+1 vertices (vacuous for F = V). '''
    _check_g(g)
    return _all_components_at_least(cube.neighbor_masks(), _alive(cube, f), g + 1)


def is_g_extra_cut(cube: CrossedCube, f: VertexSet, g: int) -> bool:
    ''' CQ_n - F is disconnected and every component has at least g+1 vertices. '''
    _check_g(g)
    return _all_components_at_least(cube.neighbor_masks(), _alive(cube, f), g + 1, 2)


def odd_components(cube: CrossedCube, s: VertexSet) -> int:
    masks = cube.neighbor_masks()
    return sum(1 for c in _component_masks(masks, _alive(cube, s)) if popcount(c) % 2)


def is_triangle_free(cube: CrossedCube) -> bool:
    masks = cube.neighbor_masks()
    return all(masks[u] & masks[v] == 0 for u, v in cube.edges())


def connectivity(cube: CrossedCube, max_n: int = CONNECTIVITY_MAX_DIMENSION) -> int:
    ''' Vertex connectivity of CQ_n by a flow-based minimum vertex cut.

    For n = 1 (K_2) the convention is the number of vertices whose removal
    leaves a single vertex, i.e. 1.
    '''
    if cube.n == 1:
        return 1
    if cube.n > max_n:
        raise BudgetError(f"Minimum vertex cut of CQ_{cube.n} is beyond the "
                          f"configured ceiling of n = {max_n}.", lower=None, upper=cube.n)
    import networkx as nx
    return nx.node_connectivity(cube.to_networkx())


def minimum_vertex_cut(cube: CrossedCube, max_n: int = CONNECTIVITY_MAX_DIMENSION) -> VertexSet:
    if cube.n < 2:
        raise PycqError("CQ_1 is complete and has no vertex cut.")
    if cube.n > max_n:
        raise BudgetError(f"Minimum vertex cut of CQ_{cube.n} is beyond the "
                          f"configured ceiling of n = {max_n}.", upper=cube.n)
    import networkx as nx
    return VertexSet.from_labels(cube.n, nx.minimum_node_cut(cube.to_networkx()))


def connectivity_exhaustive(cube: CrossedCube, budget: int = DEFAULT_BUDGET) -> int:
    ''' Connectivity by trying every vertex subset smaller than the minimum degree.

    Returns the size of the smallest cut found, or the minimum degree if no
    smaller set disconnects the cube (a vertex neighborhood always does for n >= 2).
    '''
    if cube.n == 1:
        return 1
    masks = cube.neighbor_masks()
    universe = cube.vertex_count
    full = (1 << universe) - 1
    degree = min(popcount(m) for m in masks)
    check_budget(sum(comb(universe, k) for k in range(1, degree)), budget,
                 f"Exhaustive connectivity of CQ_{cube.n}", lower=1, upper=degree)
    for k in range(1, degree):
        for mask in iter_subsets(universe, k):
            if len(_component_masks(masks, full & ~mask)) > 1:
                return k
    return degree


def _extra_cut_chunk(task, start, stop):
    n, g, k = task
    masks = _masks_for(n)
    full = (1 << (1 << n)) - 1
    for rank, mask in enumerate(iter_subsets(1 << n, k, start, stop), start=start):
        if _all_components_at_least(masks, full & ~mask, g + 1, 2):
            return rank
    return None


def _min_rank(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def extra_connectivity(cube: CrossedCube, g: int, budget: int = DEFAULT_BUDGET,
                       workers: int = 1, progress: bool = False) -> ExtraCutResult:
    ''' Exact g-extra connectivity by enumerating cuts of increasing size.

    Sizes below the connectivity are skipped, and sizes at or above the best
    known upper bound (see extremal.extra_cut_upper_bound) are never searched.
    If the remaining search would exceed `budget` subsets, a BudgetError is
    raised carrying the tightest (lower, upper) bracket established.
    '''
    from .extremal import extra_cut_upper_bound
    _check_g(g)
    universe = cube.vertex_count
    if cube.n <= CONNECTIVITY_MAX_DIMENSION:
        lower = connectivity(cube)
    else:
        lower = 1
    bound = extra_cut_upper_bound(cube, g)
    upper = bound.size if bound is not None else None
    last = (upper - 1) if upper is not None else universe - 2 * (g + 1)
    sizes = range(lower, last + 1)
    check_budget(sum(comb(universe, k) for k in sizes), budget,
                 f"{g}-extra connectivity of CQ_{cube.n} (cut sizes {lower}..{last})",
                 lower=lower, upper=upper)
    spent = 0
    for k in sizes:
        required = comb(universe, k)
        logger.info("CQ_%d: searching %d-extra cuts of size %d (%d subsets)",
                    cube.n, g, k, required)
        ranges = sweep_ranges(required)
        found = run_ranges(_extra_cut_chunk, (cube.n, g, k), ranges, _min_rank, None,
                           workers=workers, progress=progress)
        if found is not None:
            spent += found + 1
            witness = VertexSet(cube.n, next(iter_subsets(universe, k, found)))
            return ExtraCutResult(g, k, witness, profile(cube, witness), k, k, spent)
        spent += required
    if bound is None:
        raise PycqError(f"CQ_{cube.n} has no {g}-extra cut.")
    return ExtraCutResult(g, bound.size, bound.cut, profile(cube, bound.cut),
                          bound.size, bound.size, spent)


def enumerate_min_extra_cuts(cube: CrossedCube, g: int, cut_size: int,
                             budget: int = DEFAULT_BUDGET
                             ) -> Iterator[Tuple[VertexSet, ComponentProfile]]:
    ''' Yield every g-extra cut of exactly `cut_size` vertices with its profile. '''
    _check_g(g)
    universe = cube.vertex_count
    if cut_size < 0 or cut_size > universe:
        raise PycqError(f"Cut size must be between 0 and {universe}, given {cut_size}.")
    check_budget(comb(universe, cut_size), budget,
                 f"Enumerating {g}-extra cuts of size {cut_size} in CQ_{cube.n}")
    if cube.n <= CONNECTIVITY_MAX_DIMENSION and cut_size < connectivity(cube):
        return
    masks = cube.neighbor_masks()
    full = (1 << universe) - 1
    for mask in iter_subsets(universe, cut_size):
        alive = full & ~mask
        if _all_components_at_least(masks, alive, g + 1, 2):
            yield VertexSet(cube.n, mask), _profile_of_masks(masks, _component_masks(masks, alive))


def _min_cut_profile_chunk(task, start, stop):
    n, g, k = task
    masks = _masks_for(n)
    full = (1 << (1 << n)) - 1
    histogram = Counter()
    for mask in iter_subsets(1 << n, k, start, stop):
        alive = full & ~mask
        if _all_components_at_least(masks, alive, g + 1, 2):
            histogram[_profile_of_masks(masks, _component_masks(masks, alive)).describe()] += 1
    return histogram


def min_cut_profile_sweep(cube: CrossedCube, g: int, cut_size: int,
                          budget: int = DEFAULT_BUDGET, workers: int = 1,
                          checkpoint: Optional[Checkpoint] = None,
                          progress: bool = False) -> Counter:
    ''' Histogram of the profiles of all g-extra cuts of size `cut_size` (parallel). '''
    _check_g(g)
    total = comb(cube.vertex_count, cut_size)
    check_budget(total, budget, f"Enumerating {g}-extra cuts of size {cut_size} in CQ_{cube.n}")
    ranges = sweep_ranges(total)
    return run_ranges(_min_cut_profile_chunk, (cube.n, g, cut_size), ranges,
                      lambda a, b: a + b, Counter(), workers=workers,
                      checkpoint=checkpoint, progress=progress,
                      encode=dict, decode=Counter)


def _matches(condition: Condition, prof: ComponentProfile) -> bool:
    if prof.component_count != condition.count:
        return False
    if condition.orders is not None:
        return prof.orders == condition.orders
    names = [s.kind.value for s in prof.shapes]
    for ix in range(len(names)):
        if tuple(sorted(names[:ix] + names[ix + 1:])) == condition.small:
            return True
    return False


def match_condition(lemma: Lemma, prof: ComponentProfile) -> Union[int, str]:
    matched = [c.index for c in lemma.conditions if _matches(c, prof)]
    if len(matched) > 1:
        raise PycqError(f"Profile {prof.describe()} matches conditions {matched} "
                        f"of '{lemma.lemma_id}' at once.")
    return matched[0] if matched else VIOLATION


def classify_lemma(cube: CrossedCube, f: VertexSet,
                   lemma_id: Optional[str] = None) -> LemmaVerdict:
    ''' Which condition of the applicable component-structure result CQ_n - F meets.

    :param cube: the crossed cube
    :param f: the fault set
    :param lemma_id: force a specific result; by default the first one in
        `lemmas.LEMMAS` whose hypothesis covers (n, |F|)
    :return: LemmaVerdict; a violation carries (F, profile) as witness
    '''
    lemma = get_lemma(lemma_id) if lemma_id else applicable_lemma(cube.n, len(f))
    if not lemma.applies(cube.n, len(f)):
        raise PycqError(f"'{lemma.lemma_id}' does not apply to CQ_{cube.n} with |F| = {len(f)}.")
    prof = profile(cube, f)
    index = match_condition(lemma, prof)
    if index == VIOLATION:
        return LemmaVerdict(lemma.lemma_id, VIOLATION, (f, prof))
    return LemmaVerdict(lemma.lemma_id, index)


def _lemma_chunk(task, start, stop):
    n, k, lemma_id = task
    lemma = get_lemma(lemma_id)
    masks = _masks_for(n)
    full = (1 << (1 << n)) - 1
    histogram = Counter()
    violations = []
    violation_count = 0
    # Profiles repeat a lot; cache the condition per profile.
    seen: Dict[ComponentProfile, Union[int, str]] = {}
    for rank, mask in enumerate(iter_subsets(1 << n, k, start, stop), start=start):
        prof = _profile_of_masks(masks, _component_masks(masks, full & ~mask))
        index = seen.get(prof)
        if index is None:
            index = seen[prof] = match_condition(lemma, prof)
        histogram[str(index)] += 1
        if index == VIOLATION:
            violation_count += 1
            if len(violations) < MAX_RECORDED_VIOLATIONS:
                violations.append((rank, prof.describe()))
    return {'histogram': histogram, 'violations': violations, 'violation_count': violation_count}


def _merge_lemma(a, b):
    violations = sorted(a['violations'] + b['violations'])[:MAX_RECORDED_VIOLATIONS]
    return {'histogram': Counter(a['histogram']) + Counter(b['histogram']),
            'violations': violations,
            'violation_count': a['violation_count'] + b['violation_count']}


def lemma_sweep(cube: CrossedCube, size: int, budget: int = DEFAULT_BUDGET, workers: int = 1,
                lemma_id: Optional[str] = None, checkpoint: Optional[Checkpoint] = None,
                progress: bool = False) -> SweepReport:
    ''' Classify every fault set of `size` vertices and histogram the matched conditions. '''
    lemma = get_lemma(lemma_id) if lemma_id else applicable_lemma(cube.n, size)
    total = comb(cube.vertex_count, size)
    check_budget(total, budget, f"Classifying all {size}-subsets of CQ_{cube.n}")
    ranges = sweep_ranges(total)
    initial = {'histogram': Counter(), 'violations': [], 'violation_count': 0}
    merged = run_ranges(_lemma_chunk, (cube.n, size, lemma.lemma_id), ranges, _merge_lemma,
                        initial, workers=workers, checkpoint=checkpoint, progress=progress,
                        encode=lambda r: {**r, 'histogram': dict(r['histogram'])},
                        decode=lambda r: {**r, 'histogram': Counter(r['histogram']),
                                          'violations': [tuple(v) for v in r['violations']]})
    return SweepReport(cube.n, size, lemma.lemma_id, total, Counter(merged['histogram']),
                       [tuple(v) for v in merged['violations']], merged['violation_count'])


def fault_set_rank(f: VertexSet) -> int:
    ''' Colex rank of F among fault sets of the same size (for reports and resumption). '''
    return colex_rank(f.bits)
