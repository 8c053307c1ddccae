import os
from dataclasses import dataclass
from typing import Iterable, Iterator, List

from .pycq_exceptions import PycqError

MAX_DIMENSION = 30
NEIGHBOR_TABLE_MAX_DIMENSION = 16
MASK_TABLE_MAX_DIMENSION = 4
CONNECTIVITY_MAX_DIMENSION = 6
DEFAULT_BUDGET = 10**8
DEFAULT_PAIR_BUDGET = 10**10

WORKERS_ENV_VAR = 'PYCQ_WORKERS'


def default_workers() -> int:
    ''' Number of worker processes to use when a campaign doesn't say.

    Read from the PYCQ_WORKERS environment variable, falling back to the CPU count.
    '''
    value = os.environ.get(WORKERS_ENV_VAR)
    if value is None:
        return os.cpu_count() or 1
    try:
        workers = int(value)
    except ValueError:
        raise PycqError(f"{WORKERS_ENV_VAR} must be a positive integer, given '{value}'.")
    if workers < 1:
        raise PycqError(f"{WORKERS_ENV_VAR} must be a positive integer, given '{value}'.")
    return workers


def check_dimension(n: int, minimum: int = 1):
    if not isinstance(n, int) or isinstance(n, bool):
        raise PycqError(f"Dimension must be an integer, given {n!r}.")
    if n < minimum or n > MAX_DIMENSION:
        raise PycqError(f"Dimension must be between {minimum} and {MAX_DIMENSION}, given {n}.")


def popcount(x: int) -> int:
    return bin(x).count('1')


def iter_bits(x: int) -> Iterator[int]:
    ''' Yield the positions of the set bits of x in ascending order. '''
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def format_label(v: int, n: int) -> str:
    ''' Render a vertex label MSB-first, e.g. format_label(4, 4) == '0100'. '''
    return format(v, f'0{n}b')


def parse_label(s: str) -> int:
    if not s or any(c not in '01' for c in s):
        raise PycqError(f"'{s}' is not a binary vertex label.")
    return int(s, 2)


@dataclass(frozen=True)
class VertexSet:
    ''' A set of vertices of CQ_n stored as a bit vector of length 2^n.

    Bit v of `bits` is set iff vertex v is a member. Set algebra is exact and
    only defined between sets of the same dimension.
    '''
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise PycqError(f"Bits {self.bits:#x} do not fit a vertex set of CQ_{self.n}.")

    @classmethod
    def from_labels(cls, n: int, labels: Iterable[int]) -> 'VertexSet':
        bits = 0
        for v in labels:
            if not 0 <= v < (1 << n):
                raise PycqError(f"Vertex {v} is out of range for CQ_{n}.")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_binary(cls, n: int, labels: Iterable[str]) -> 'VertexSet':
        parsed = []
        for s in labels:
            if len(s) != n:
                raise PycqError(f"Label '{s}' does not have {n} bits.")
            parsed.append(parse_label(s))
        return cls.from_labels(n, parsed)

    @classmethod
    def full(cls, n: int) -> 'VertexSet':
        return cls(n, (1 << (1 << n)) - 1)

    def _check(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        if other.n != self.n:
            raise PycqError(f"Cannot combine vertex sets of CQ_{self.n} and CQ_{other.n}.")
        return None

    def __or__(self, other):
        return self._check(other) or VertexSet(self.n, self.bits | other.bits)

    def __and__(self, other):
        return self._check(other) or VertexSet(self.n, self.bits & other.bits)

    def __sub__(self, other):
        return self._check(other) or VertexSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other):
        return self._check(other) or VertexSet(self.n, self.bits ^ other.bits)

    def complement(self) -> 'VertexSet':
        return VertexSet.full(self.n) - self

    def issubset(self, other: 'VertexSet') -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: 'VertexSet') -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def __len__(self):
        return popcount(self.bits)

    def __bool__(self):
        return self.bits != 0

    def __contains__(self, v):
        return 0 <= v < (1 << self.n) and bool(self.bits >> v & 1)

    def __iter__(self):
        return iter_bits(self.bits)

    def min(self) -> int:
        if not self.bits:
            raise PycqError("Empty vertex set has no minimum.")
        return (self.bits & -self.bits).bit_length() - 1

    def to_binary(self) -> List[str]:
        return [format_label(v, self.n) for v in self]

    def __repr__(self):
        return f"VertexSet(n={self.n}, {{{', '.join(self.to_binary())}}})"
