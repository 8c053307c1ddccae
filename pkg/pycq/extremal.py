''' Explicit extremal constructions in CQ_n.

Everything here validates itself on construction: a returned object has
already been checked against the property it is supposed to have, and a
failed check raises WitnessError.
'''
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from .core import VertexSet, iter_bits, popcount, check_dimension
from .pycq_exceptions import PycqError, WitnessError
from .structure import (ComponentProfile, PATH3, classify_shape, components, profile,
                        is_g_extra_cut, is_g_extra_faulty_set, _all_components_at_least,
                        _component_masks)
from .topology import CrossedCube

logger = logging.getLogger(__name__)

# 0...0000, 0...0100, 0...0110, 0...0111: the 3-path 0000-0100-0110-0111.
PATH_SET_LABELS = (0b0000, 0b0100, 0b0110, 0b0111)

CQ4_CUT = ('0100', '0111', '0011', '1000', '1110', '1011')
CQ4_CUT_SIDES = (
    ('0001', '0000', '0010', '0110', '1010'),
    ('0101', '1111', '1001', '1101', '1100'),
)

# Largest order of connected sets searched when looking for an upper bound.
MAX_SEED_ORDER = 6
# Cubes up to this many vertices also try seeds one vertex larger than g+1.
SMALL_CUBE_VERTICES = 64


@dataclass(frozen=True)
class WitnessBundle:
    ''' The 3-path set A, its neighborhood and the indistinguishable pair built from them.

    :param n: dimension
    :param A: the four vertices of the 3-path
    :param NA: open neighborhood of A, 4n-9 vertices
    :param F1: equal to NA
    :param F2: A together with NA
    '''
    n: int
    A: VertexSet
    NA: VertexSet
    F1: VertexSet
    F2: VertexSet


def build_A(n: int) -> VertexSet:
    check_dimension(n)
    if n < 4:
        raise PycqError(f"The 3-path set needs n >= 4, given {n}.")
    a = VertexSet.from_labels(n, PATH_SET_LABELS)
    shape = classify_shape(CrossedCube(n), a)
    if shape != PATH3:
        raise WitnessError(f"{a} induces {shape} in CQ_{n}, not a 3-path.")
    return a


def witness_bundle(n: int) -> WitnessBundle:
    ''' Build A, N(A), F1 = N(A), F2 = A + N(A) and check |N(A)| = 4n-9 and connectivity. '''
    cube = CrossedCube(n)
    a = build_A(n)
    na = cube.neighborhood(a)
    if len(na) != 4 * n - 9:
        raise WitnessError(f"|N(A)| = {len(na)} in CQ_{n}, expected {4 * n - 9}.")
    rest = components(cube, a | na)
    if len(rest) != 1:
        raise WitnessError(f"CQ_{n} - (A + N(A)) has {len(rest)} components, expected 1.")
    bundle = WitnessBundle(n, a, na, na, a | na)
    logger.debug("Witness bundle for CQ_%d: |F1| = %d, |F2| = %d", n, len(na), len(a | na))
    return bundle


def cq4_exceptional_cut() -> Tuple[VertexSet, ComponentProfile]:
    ''' The six-vertex cut of CQ_4 leaving two components of order 5. '''
    cube = CrossedCube(4)
    cut = VertexSet.from_binary(4, CQ4_CUT)
    expected = {VertexSet.from_binary(4, side) for side in CQ4_CUT_SIDES}
    found = set(components(cube, cut))
    if found != expected:
        raise WitnessError(f"CQ_4 - {cut} has components {found}, expected {expected}.")
    return cut, profile(cube, cut)


def connected_subsets(cube: CrossedCube, order: int) -> Iterator[VertexSet]:
    ''' Every vertex set of the given order inducing a connected subgraph, each exactly once.

    Enumeration follows the ESU scheme: a set is grown from its smallest vertex
    and only ever extended by vertices exclusive to the newest member.
    '''
    if order < 1:
        raise PycqError(f"Order must be positive, given {order}.")
    masks = cube.neighbor_masks()
    n = cube.n

    def closed(sub):
        nb = sub
        for v in iter_bits(sub):
            nb |= masks[v]
        return nb

    def extend(sub, ext, root_above):
        if popcount(sub) == order:
            yield sub
            return
        while ext:
            w = ext & -ext
            ext ^= w
            exclusive = masks[w.bit_length() - 1] & ~closed(sub) & root_above
            yield from extend(sub | w, ext | exclusive, root_above)

    for v in range(cube.vertex_count):
        above = ~((1 << (v + 1)) - 1)
        for sub in extend(1 << v, masks[v] & above, above):
            yield VertexSet(n, sub)


@dataclass(frozen=True)
class UpperBound:
    size: int
    cut: VertexSet
    seed: Optional[VertexSet] = None


def extra_cut_upper_bound(cube: CrossedCube, g: int) -> Optional[UpperBound]:
    ''' Smallest g-extra cut of the form N(S) for a small connected set S.

    S ranges over connected sets of order g+1 (and g+2 on cubes with at most
    SMALL_CUBE_VERTICES vertices). Returns None when no such cut exists or
    g+1 exceeds MAX_SEED_ORDER.
    '''
    if g + 1 > MAX_SEED_ORDER:
        return None
    orders = [g + 1]
    if cube.vertex_count <= SMALL_CUBE_VERTICES and g + 2 <= MAX_SEED_ORDER:
        orders.append(g + 2)
    masks = cube.neighbor_masks()
    full = (1 << cube.vertex_count) - 1
    best = None
    for order in orders:
        for s in connected_subsets(cube, order):
            nb = cube.neighborhood(s)
            if best is not None and len(nb) >= best.size:
                continue
            rest = full & ~(s.bits | nb.bits)
            if rest and _all_components_at_least(masks, rest, g + 1):
                best = UpperBound(len(nb), nb, s)
    return best


@dataclass
class TightlySuperReport:
    ''' Outcome of checking every connected 4-set against the minimum 3-extra cut size.

    tight: N(S) has 4n-9 vertices and CQ_n - N(S) is S plus one other component
    not_extra_cut: |N(S)| = 4n-9 but some component of CQ_n - (S + N(S)) has < 4 vertices
    violations: sets whose N(S) is a 3-extra cut that is smaller than 4n-9, or of
        size 4n-9 leaving three or more components
    '''
    n: int
    cut_size: int
    sets_checked: int = 0
    minimum_neighborhood: Optional[int] = None
    tight: int = 0
    not_extra_cut: int = 0
    violations: List[Tuple[VertexSet, VertexSet]] = field(default_factory=list)


def tightly_super_check(cube: CrossedCube) -> TightlySuperReport:
    n = cube.n
    if n < 4:
        raise PycqError(f"Tightly super 3-extra connectivity needs n >= 4, given {n}.")
    report = TightlySuperReport(n, 4 * n - 9)
    masks = cube.neighbor_masks()
    full = (1 << cube.vertex_count) - 1
    for s in connected_subsets(cube, 4):
        report.sets_checked += 1
        nb = cube.neighborhood(s)
        size = len(nb)
        if report.minimum_neighborhood is None or size < report.minimum_neighborhood:
            report.minimum_neighborhood = size
        if size > report.cut_size:
            continue
        rest = full & ~(s.bits | nb.bits)
        if not rest:
            continue
        comps = _component_masks(masks, rest)
        if any(popcount(c) < 4 for c in comps):
            if size == report.cut_size:
                report.not_extra_cut += 1
        elif size < report.cut_size or len(comps) > 1:
            report.violations.append((s, nb))
        else:
            report.tight += 1
    logger.info("CQ_%d: %d connected 4-sets, %d tight, %d violations", n,
                report.sets_checked, report.tight, len(report.violations))
    return report


def validate_bundle(cube: CrossedCube, bundle: WitnessBundle):
    ''' Re-check the diagnosability-relevant facts about a bundle on `cube`. '''
    if not is_g_extra_cut(cube, bundle.F1, 3):
        raise WitnessError(f"F1 is not a 3-extra cut of CQ_{cube.n}.")
    if not is_g_extra_faulty_set(cube, bundle.F2, 3):
        raise WitnessError(f"F2 is not a 3-extra faulty set of CQ_{cube.n}.")
    outside = cube.all_vertices - (bundle.F1 | bundle.F2)
    if not cube.neighborhood(bundle.F1 ^ bundle.F2).isdisjoint(outside):
        raise WitnessError(f"An edge joins F1 ^ F2 to the fault-free part of CQ_{cube.n}.")
