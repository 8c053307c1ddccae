import csv
import json
import logging
from datetime import datetime, timezone
from typing import Any, Dict, Iterable, Optional, Sequence, TextIO, Union

from .core import VertexSet, format_label
from .topology import CrossedCube

logger = logging.getLogger(__name__)


def vertex_set_record(s: VertexSet) -> Dict[str, Any]:
    ''' A vertex set as it appears in reports: labels in decimal and MSB-first binary. '''
    return {'decimal': list(s), 'binary': s.to_binary()}


def export_edge_list(file: TextIO, cube: CrossedCube, binary: bool = False):
    ''' Write one edge per line, "u v" with u < v, in ascending order.

    :param file: open text file to write to
    :param cube: the crossed cube to export
    :param bool binary: render labels as MSB-first n-bit strings instead of decimals
    '''
    def label(v):
        return format_label(v, cube.n) if binary else str(v)

    for u, v in cube.edges():
        print(f'{label(u)} {label(v)}', file=file)


def export_dot(file: TextIO, cube: CrossedCube, faults: Optional[VertexSet] = None):
    ''' Write CQ_n as an undirected DOT graph; faulty vertices are filled red. '''
    faults = faults if faults is not None else VertexSet(cube.n)

    def _print(s):
        print(s, file=file)

    _print('// Generated automatically via pycq')
    _print(f'graph CQ_{cube.n} {{')
    _print('    node [shape=circle, fontsize=10];')
    for v in range(cube.vertex_count):
        attrs = f'label="{format_label(v, cube.n)}"'
        if v in faults:
            attrs += ', style=filled, fillcolor=red'
        _print(f'    {v} [{attrs}];')
    for u, v in cube.edges():
        _print(f'    {u} -- {v};')
    _print('}')


def export_json(file: TextIO, cube: CrossedCube):
    data = {
        'n': cube.n,
        'construction': cube.construction.value,
        'vertices': [format_label(v, cube.n) for v in range(cube.vertex_count)],
        'edges': [[format_label(u, cube.n), format_label(v, cube.n)] for u, v in cube.edges()],
    }
    json.dump(data, file, indent=2, sort_keys=True)
    file.write('\n')


def write_report(path: str, report: Dict[str, Any], timestamp: bool = False):
    ''' Write a campaign report as JSON with sorted keys.

    Two runs with the same parameters produce identical files unless
    `timestamp` is set, which adds a 'timestamp' field (UTC, ISO 8601).
    '''
    report = dict(report)
    if timestamp:
        report['timestamp'] = datetime.now(timezone.utc).isoformat(timespec='seconds')
    if path == '-':
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    with open(path, 'w') as f:
        json.dump(report, f, indent=2, sort_keys=True)
        f.write('\n')
    logger.info("Wrote report to %s", path)


def write_witness_csv(path: str, rows: Iterable[Sequence[Union[VertexSet, str]]],
                      header: Sequence[str] = ('F1', 'F2')):
    ''' One witness per row; vertex sets become space-separated binary labels,
    any other cell (a profile, say) is written as is. '''
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([' '.join(c.to_binary()) if isinstance(c, VertexSet) else c
                             for c in row])
            count += 1
    logger.info("Wrote %d witnesses to %s", count, path)
