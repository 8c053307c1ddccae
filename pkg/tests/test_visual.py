import os
import tempfile
import unittest
from collections import Counter

import pycq
from pycq.core import VertexSet
from pycq.topology import CrossedCube
from pycq.visual import _graph_elements, component_sizes, plot_histogram

CQ4_CUT = ['0100', '0111', '0011', '1000', '1110', '1011']


class TestPlot(unittest.TestCase):
    def test_needs_somewhere_to_go(self):
        with self.assertRaises(pycq.PycqError) as ex:
            plot_histogram({'1': 3}, display=False)
        self.assertEqual(str(ex.exception), "Must specify either a filename or display=True")

    def test_empty_histogram(self):
        with self.assertRaises(pycq.PycqError):
            plot_histogram({}, display=False, filename='unused.png')

    def test_save(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'histogram.png')
            plot_histogram(Counter({'1': 7120, '2': 32, '5': 8}), 'CQ_4', display=False,
                           filename=path)
            self.assertTrue(os.path.getsize(path) > 0)


class TestGraphElements(unittest.TestCase):
    def test_fault_free(self):
        elements = _graph_elements(CrossedCube(3))
        nodes = [e for e in elements if 'source' not in e['data']]
        edges = [e for e in elements if 'source' in e['data']]
        self.assertEqual(len(nodes), 8)
        self.assertEqual(len(edges), 12)
        self.assertEqual({e['classes'] for e in nodes}, {'component0'})
        self.assertEqual(nodes[5]['data'], {'id': '5', 'label': '101'})

    def test_exceptional_cut(self):
        cube = CrossedCube(4)
        cut = VertexSet.from_binary(4, CQ4_CUT)
        elements = _graph_elements(cube, cut)
        classes = Counter(e['classes'] for e in elements if 'source' not in e['data'])
        self.assertEqual(classes, Counter({'faulty': 6, 'component0': 5, 'component1': 5}))
        cut_edges = [e for e in elements if e['classes'] == 'cut']
        # every edge of the 4-regular cube with an endpoint in the cut, minus
        # the edges inside the cut
        inside = len(cube.induced_edges(cut))
        self.assertEqual(len(cut_edges), 6 * 4 - inside)
        self.assertEqual(component_sizes(cube, cut), Counter({5: 2}))


if __name__ == '__main__':
    unittest.main()
