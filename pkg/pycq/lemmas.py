''' Tables of the component-structure results for CQ_n - F.

Each result says: for n and |F| in some range, the components of CQ_n - F
look like one of a short list of conditions. A condition is written as a
dict, much like a transition of a finite state machine, and normalized into a
`Condition` when the table is loaded:

    {'count': 2, 'small': ['K2']}        two components, one of them a K2
    {'count': 1}                         connected
    {'count': 2, 'orders': [5, 5]}       two components, both of order 5

'small' lists the shapes of all components but one (the remaining, "large"
component may be anything). The index of a condition is its position in the
list, starting at 1; results that only speak about disconnected CQ_n - F get
an extra condition 0 for "connected".
'''
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from .pycq_exceptions import PycqError


class Condition(NamedTuple):
    index: int
    count: int
    small: Tuple[str, ...] = ()
    orders: Optional[Tuple[int, ...]] = None

    def describe(self) -> str:
        if self.count == 1:
            return 'connected'
        if self.orders is not None:
            return f"{self.count} components of orders {', '.join(map(str, self.orders))}"
        return f"{self.count} components, small ones: {', '.join(self.small)}"


class Lemma(NamedTuple):
    lemma_id: str
    description: str
    applies: Callable[[int, int], bool]
    conditions: Tuple[Condition, ...]

    def condition(self, index: int) -> Condition:
        for c in self.conditions:
            if c.index == index:
                return c
        raise PycqError(f"Result '{self.lemma_id}' has no condition {index}.")


SHAPE_NAMES = ('IsolatedVertex', 'K2', 'Path2', 'Path3', 'Star13')


def _normalize(conditions: List[Dict], with_connected: bool) -> Tuple[Condition, ...]:
    normalized = []
    if with_connected:
        normalized.append(Condition(0, 1))
    for ix, c in enumerate(conditions, start=1):
        unknown = set(c) - {'count', 'small', 'orders'}
        if unknown:
            raise PycqError(f"Unknown condition keys {sorted(unknown)} in {c}.")
        small = tuple(sorted(c.get('small', [])))
        for s in small:
            if s not in SHAPE_NAMES:
                raise PycqError(f"Unknown component shape '{s}' in condition {c}.")
        orders = c.get('orders')
        if orders is None and c['count'] != 1 and len(small) != c['count'] - 1:
            raise PycqError(f"Condition {c} must list {c['count'] - 1} small components.")
        normalized.append(Condition(ix, c['count'], small,
                                    tuple(sorted(orders)) if orders else None))
    return tuple(normalized)


_CONNECTED = {'count': 1}

LEMMAS: Tuple[Lemma, ...] = (
    Lemma(
        'cq4-six-faults',
        'CQ_4 minus six vertices',
        lambda n, f: n == 4 and f == 6,
        _normalize([
            _CONNECTED,
            {'count': 2, 'small': ['K2']},
            {'count': 2, 'small': ['IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'IsolatedVertex']},
            {'count': 2, 'orders': [5, 5]},
        ], with_connected=False),
    ),
    Lemma(
        'cq5-ten-faults',
        'CQ_5 minus ten vertices',
        lambda n, f: n == 5 and f == 10,
        _normalize([
            _CONNECTED,
            {'count': 2, 'small': ['K2']},
            {'count': 2, 'small': ['Path2']},
            {'count': 2, 'small': ['IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'IsolatedVertex']},
            {'count': 4, 'small': ['IsolatedVertex', 'IsolatedVertex', 'IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'K2']},
        ], with_connected=False),
    ),
    Lemma(
        'below-connectivity',
        'fewer than n faults never disconnect CQ_n',
        lambda n, f: f <= n - 1,
        _normalize([_CONNECTED], with_connected=False),
    ),
    Lemma(
        'up-to-2n-3',
        'n <= |F| <= 2n-3, n >= 3',
        lambda n, f: n >= 3 and n <= f <= 2 * n - 3,
        _normalize([
            {'count': 2, 'small': ['IsolatedVertex']},
        ], with_connected=True),
    ),
    Lemma(
        'up-to-3n-6',
        '2n-2 <= |F| <= 3n-6, n >= 5',
        lambda n, f: n >= 5 and 2 * n - 2 <= f <= 3 * n - 6,
        _normalize([
            {'count': 2, 'small': ['K2']},
            {'count': 2, 'small': ['IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'IsolatedVertex']},
        ], with_connected=True),
    ),
    Lemma(
        'up-to-4n-10',
        '3n-5 <= |F| <= 4n-10, n >= 5',
        lambda n, f: n >= 5 and 3 * n - 5 <= f <= 4 * n - 10,
        _normalize([
            _CONNECTED,
            {'count': 2, 'small': ['K2']},
            {'count': 2, 'small': ['Path2']},
            {'count': 2, 'small': ['IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'IsolatedVertex']},
            {'count': 4, 'small': ['IsolatedVertex', 'IsolatedVertex', 'IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'K2']},
        ], with_connected=False),
    ),
    Lemma(
        'up-to-4n-9',
        '3n-4 <= |F| <= 4n-9, n >= 6',
        lambda n, f: n >= 6 and 3 * n - 4 <= f <= 4 * n - 9,
        _normalize([
            _CONNECTED,
            {'count': 2, 'small': ['K2']},
            {'count': 2, 'small': ['Star13']},
            {'count': 2, 'small': ['Path2']},
            {'count': 2, 'small': ['Path3']},
            {'count': 2, 'small': ['IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'IsolatedVertex']},
            {'count': 4, 'small': ['IsolatedVertex', 'IsolatedVertex', 'IsolatedVertex']},
            {'count': 3, 'small': ['IsolatedVertex', 'K2']},
            {'count': 3, 'small': ['IsolatedVertex', 'Path2']},
        ], with_connected=False),
    ),
)


def get_lemma(lemma_id: str) -> Lemma:
    for lemma in LEMMAS:
        if lemma.lemma_id == lemma_id:
            return lemma
    raise PycqError(f"No result named '{lemma_id}'; known: "
                    f"{', '.join(l.lemma_id for l in LEMMAS)}.")


def applicable_lemma(n: int, fault_count: int) -> Lemma:
    ''' The first result (in table order) whose hypothesis covers (n, |F|). '''
    for lemma in LEMMAS:
        if lemma.applies(n, fault_count):
            return lemma
    raise PycqError(f"No component-structure result applies to CQ_{n} with |F| = {fault_count}.")
