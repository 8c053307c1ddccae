import json
import os
import tempfile
from io import StringIO
import unittest

from pycq.core import VertexSet
from pycq.io import (export_dot, export_edge_list, export_json, vertex_set_record, write_report,
                     write_witness_csv)
from pycq.topology import CrossedCube

edge_list_example = '''\
0 1
0 2
1 3
2 3
'''

binary_edge_list_example = '''\
00 01
00 10
01 11
10 11
'''

dot_example = '''\
// Generated automatically via pycq
graph CQ_2 {
    node [shape=circle, fontsize=10];
    0 [label="00"];
    1 [label="01", style=filled, fillcolor=red];
    2 [label="10"];
    3 [label="11"];
    0 -- 1;
    0 -- 2;
    1 -- 3;
    2 -- 3;
}
'''


class TestExport(unittest.TestCase):
    def test_edge_list(self):
        buffer = StringIO()
        with buffer as f:
            export_edge_list(f, CrossedCube(2))
            self.assertEqual(buffer.getvalue(), edge_list_example)

    def test_edge_list_binary(self):
        buffer = StringIO()
        export_edge_list(buffer, CrossedCube(2), binary=True)
        self.assertEqual(buffer.getvalue(), binary_edge_list_example)

    def test_edge_list_is_ordered_pairs(self):
        buffer = StringIO()
        export_edge_list(buffer, CrossedCube(3))
        edges = [tuple(map(int, line.split())) for line in buffer.getvalue().splitlines()]
        self.assertEqual(len(edges), 12)
        self.assertEqual(edges[:3], [(0, 1), (0, 2), (0, 4)])
        self.assertEqual(edges[-1], (6, 7))
        self.assertTrue(all(u < v for u, v in edges))
        self.assertEqual(edges, sorted(edges))

    def test_dot(self):
        buffer = StringIO()
        export_dot(buffer, CrossedCube(2), VertexSet.from_labels(2, [1]))
        self.assertEqual(buffer.getvalue(), dot_example)

    def test_json(self):
        buffer = StringIO()
        export_json(buffer, CrossedCube(3))
        data = json.loads(buffer.getvalue())
        self.assertEqual(data['n'], 3)
        self.assertEqual(data['construction'], 'flat')
        self.assertEqual(len(data['edges']), 12)
        self.assertEqual(data['edges'][0], ['000', '001'])
        self.assertEqual(list(data), sorted(data))


class TestReports(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def test_vertex_set_record(self):
        self.assertEqual(vertex_set_record(VertexSet.from_labels(4, [7, 0])),
                         {'decimal': [0, 7], 'binary': ['0000', '0111']})

    def test_report_is_stable(self):
        path = os.path.join(self.dir.name, 'report.json')
        report = {'status': 'ok', 'command': 'classify', 'params': {'size': 6, 'n': 4}}
        write_report(path, report)
        with open(path) as f:
            first = f.read()
        write_report(path, dict(reversed(list(report.items()))))
        with open(path) as f:
            self.assertEqual(f.read(), first)
        self.assertLess(first.index('"command"'), first.index('"status"'))
        self.assertNotIn('timestamp', first)

    def test_report_timestamp(self):
        path = os.path.join(self.dir.name, 'report.json')
        write_report(path, {'status': 'ok'}, timestamp=True)
        with open(path) as f:
            self.assertIn('timestamp', json.load(f))

    def test_witness_csv(self):
        path = os.path.join(self.dir.name, 'witnesses.csv')
        pair = (VertexSet.from_labels(3, [1, 2]), VertexSet.from_labels(3, [0, 1, 2]))
        write_witness_csv(path, [pair])
        with open(path) as f:
            self.assertEqual(f.read().splitlines(), ['F1,F2', '001 010,000 001 010'])


if __name__ == "__main__":
    unittest.main()
