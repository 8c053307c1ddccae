import logging
import warnings
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterator, List, Optional, Tuple, Union

from .core import VertexSet, check_dimension, iter_bits, NEIGHBOR_TABLE_MAX_DIMENSION
from .pycq_exceptions import PycqError, WitnessError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# The pair relation R on two-bit blocks, written as integers (u1u0 -> 2*u1 + u0).
PAIR_RELATION = frozenset({(0b00, 0b00), (0b10, 0b10), (0b01, 0b11), (0b11, 0b01)})

# R is functional: every block is related to exactly one block.
_PARTNER_BLOCK = {a: b for a, b in PAIR_RELATION}


class Construction(Enum):
    FLAT_RULE = 'flat'
    RECURSIVE = 'recursive'


def _block(x) -> int:
    if isinstance(x, str):
        if len(x) != 2 or any(c not in '01' for c in x):
            raise PycqError(f"'{x}' is not a two-bit string.")
        return int(x, 2)
    if not 0 <= x <= 3:
        raise PycqError(f"{x} is not a two-bit block.")
    return x


def pair_related(a: Union[str, int], b: Union[str, int]) -> bool:
    ''' Whether two-bit blocks a and b are pair related (a ~ b).

    Blocks may be given as strings ('01') or as integers 0..3.
    '''
    return (_block(a), _block(b)) in PAIR_RELATION


def _check_label(u: int, n: int):
    if not isinstance(u, int) or not 0 <= u < (1 << n):
        raise PycqError(f"Vertex {u!r} is not a label of CQ_{n} (must be in [0, {1 << n})).")


def _split_clause(u: int, v: int, l: int) -> bool:
    ''' Clause of the flat rule at split position l (l == n is the cross-edge clause). '''
    if (u >> l) != (v >> l):
        return False
    if not (u ^ v) >> (l - 1) & 1:
        return False
    if l % 2 == 0 and (u ^ v) >> (l - 2) & 1:
        return False
    for i in range((l - 1) // 2):
        if ((u >> 2 * i) & 3, (v >> 2 * i) & 3) not in PAIR_RELATION:
            return False
    return True


def is_adjacent_flat(u: int, v: int, n: int) -> bool:
    ''' Adjacency in CQ_n by the flat (non-recursive) rule.

    :param int u: first label, 0 <= u < 2^n
    :param int v: second label, 0 <= v < 2^n
    :param int n: dimension
    :return: True iff u and v are adjacent

    Clause 1 ranges over 1 <= l <= n-1; clause 2 is the same test with l = n
    (no prefix above it). Only l = 1 + (highest differing bit) can satisfy the
    "equal prefix, differing bit l-1" conditions, so that is the only one tried.
    '''
    check_dimension(n)
    _check_label(u, n)
    _check_label(v, n)
    if u == v:
        return False
    l = (u ^ v).bit_length()
    return _split_clause(u, v, l)


def _twist(u: int, l: int) -> int:
    ''' The unique neighbor of u whose split position is l. '''
    v = u ^ (1 << (l - 1))
    for i in range((l - 1) // 2):
        block = (u >> 2 * i) & 3
        v = (v & ~(3 << 2 * i)) | (_PARTNER_BLOCK[block] << 2 * i)
    return v


def cross_partner(u: int, n: int) -> int:
    ''' The endpoint of the cross edge at u (the neighbor across dimension n-1). '''
    check_dimension(n, minimum=2)
    _check_label(u, n)
    return _twist(u, n)


@dataclass(frozen=True)
class CrossEdgeMatching:
    n: int
    pairs: Tuple[Edge, ...]

    def validate(self, cube: 'CrossedCube'):
        ''' Check that the pairs form a perfect matching made of edges of `cube`. '''
        top = 1 << (self.n - 1)
        seen = set()
        for u0, u1 in self.pairs:
            if u0 & top or not u1 & top:
                raise WitnessError(f"Cross pair ({u0}, {u1}) does not join CQ_n^0 to CQ_n^1.")
            if not cube.is_adjacent(u0, u1):
                raise WitnessError(f"Cross pair ({u0}, {u1}) is not an edge of CQ_{self.n}.")
            seen.update((u0, u1))
        if len(seen) != 2 * len(self.pairs) or len(seen) != (1 << self.n):
            raise WitnessError(f"Cross edges of CQ_{self.n} are not a perfect matching.")


@dataclass(frozen=True)
class CrossedCube:
    ''' The crossed cube CQ_n.

    Immutable after construction. The flat rule is the canonical adjacency
    oracle; a cube built recursively answers adjacency from its own edge set,
    which is what makes cross-validating the two constructions meaningful.
    '''
    n: int
    construction: Construction = Construction.FLAT_RULE
    _edges: Optional[FrozenSet[Edge]] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        check_dimension(self.n)
        if self.construction is Construction.RECURSIVE and self._edges is None:
            object.__setattr__(self, '_edges', _recursive_edges(self.n))

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    @property
    def all_vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def is_adjacent(self, u: int, v: int) -> bool:
        if self._edges is None:
            return is_adjacent_flat(u, v, self.n)
        _check_label(u, self.n)
        _check_label(v, self.n)
        return (min(u, v), max(u, v)) in self._edges

    def neighbor_list(self, u: int) -> Tuple[int, ...]:
        _check_label(u, self.n)
        if self._edges is None:
            return tuple(sorted(_twist(u, l) for l in range(1, self.n + 1)))
        return tuple(sorted(self._adjacency[u]))

    def neighbors(self, u: int) -> VertexSet:
        return VertexSet.from_labels(self.n, self.neighbor_list(u))

    @cached_property
    def _adjacency(self):
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    @cached_property
    def _neighbor_masks(self) -> Tuple[int, ...]:
        masks = []
        for u in range(self.vertex_count):
            m = 0
            for v in self.neighbor_list(u):
                m |= 1 << v
            masks.append(m)
        return tuple(masks)

    def neighbor_masks(self) -> Tuple[int, ...]:
        ''' Table mapping each vertex to the bitmask of its neighbors. Cached. '''
        if self.n > NEIGHBOR_TABLE_MAX_DIMENSION:
            warnings.warn(f"Building a neighbor table for CQ_{self.n} "
                          f"(above the cache ceiling of {NEIGHBOR_TABLE_MAX_DIMENSION}).")
        return self._neighbor_masks

    def neighborhood(self, s: VertexSet) -> VertexSet:
        ''' Open neighborhood N(S): vertices outside S adjacent to some vertex of S. '''
        masks = self.neighbor_masks()
        nb = 0
        for v in iter_bits(s.bits):
            nb |= masks[v]
        return VertexSet(self.n, nb & ~s.bits)

    def induced_edges(self, s: VertexSet) -> List[Edge]:
        masks = self.neighbor_masks()
        return [(u, v) for u in s for v in iter_bits(masks[u] & s.bits) if u < v]

    def cross_partner(self, u: int) -> int:
        if self.n < 2:
            raise PycqError("CQ_1 has no cross edges.")
        if self._edges is None:
            return cross_partner(u, self.n)
        top = 1 << (self.n - 1)
        partners = [v for v in self.neighbor_list(u) if (u ^ v) & top]
        if len(partners) != 1:
            raise WitnessError(f"Vertex {u} has {len(partners)} cross edges in CQ_{self.n}.")
        return partners[0]

    def edges(self) -> Iterator[Edge]:
        ''' All edges (u, v) with u < v, in ascending order. '''
        if self._edges is not None:
            yield from sorted(self._edges)
            return
        for u in range(self.vertex_count):
            for v in self.neighbor_list(u):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> FrozenSet[Edge]:
        if self._edges is not None:
            return self._edges
        return frozenset(self.edges())

    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges())
        return g

    def verify(self):
        ''' Cross-validate the flat rule against the recursive construction.

        Any disagreement is fatal: the two definitions of CQ_n must coincide.
        '''
        flat = frozenset(CrossedCube(self.n).edges())
        recursive = _recursive_edges(self.n)
        if flat != recursive:
            only_flat = sorted(flat - recursive)[:5]
            only_rec = sorted(recursive - flat)[:5]
            raise WitnessError(
                f"Flat rule and recursive construction of CQ_{self.n} disagree: "
                f"flat-only edges {only_flat}, recursive-only edges {only_rec}."
            )
        logger.debug("CQ_%d: %d edges agree between both constructions", self.n, len(flat))


def neighbors(cube: CrossedCube, u: int) -> VertexSet:
    return cube.neighbors(u)


def _cross_edges_by_rule(n: int) -> List[Edge]:
    ''' Cross edges of CQ_n found by scanning every (CQ_n^0, CQ_n^1) pair against the rule. '''
    top = 1 << (n - 1)
    pairs = []
    for u in range(top):
        for w in range(top):
            if n % 2 == 0 and (u ^ w) >> (n - 2) & 1:
                continue
            if all(((u >> 2 * i) & 3, (w >> 2 * i) & 3) in PAIR_RELATION
                   for i in range((n - 1) // 2)):
                pairs.append((u, w | top))
    return pairs


def _recursive_edges(n: int) -> FrozenSet[Edge]:
    edges = {(0, 1)}
    for k in range(2, n + 1):
        top = 1 << (k - 1)
        edges = edges | {(u | top, v | top) for u, v in edges} | set(_cross_edges_by_rule(k))
    return frozenset(edges)


def build_recursive(n: int) -> CrossedCube:
    ''' CQ_1 is K_2; CQ_n is two copies of CQ_{n-1} joined by the cross-edge matching. '''
    check_dimension(n)
    return CrossedCube(n, Construction.RECURSIVE)


def decompose(cube: CrossedCube) -> Tuple[CrossedCube, CrossedCube, CrossEdgeMatching]:
    ''' Split CQ_n on bit n-1 into CQ_n^0, CQ_n^1 (top bit dropped) and the cross edges. '''
    n = cube.n
    if n < 2:
        raise PycqError("Only CQ_n with n >= 2 can be decomposed.")
    top = 1 << (n - 1)
    halves = (set(), set())
    cross = []
    for u, v in cube.edges():
        if (u ^ v) & top:
            cross.append((u, v) if v & top else (v, u))
        else:
            halves[u >> (n - 1)].add((u & ~top, v & ~top))
    half0, half1 = (CrossedCube(n - 1, Construction.RECURSIVE, frozenset(h)) for h in halves)
    return half0, half1, CrossEdgeMatching(n, tuple(sorted(cross)))


def reassemble(half0: CrossedCube, half1: CrossedCube,
               matching: CrossEdgeMatching) -> FrozenSet[Edge]:
    ''' Inverse of decompose, as an edge set of CQ_n. '''
    top = 1 << half0.n
    edges = set(half0.edges())
    edges.update((u | top, v | top) for u, v in half1.edges())
    edges.update(matching.pairs)
    return frozenset(edges)
