import os
import unittest
from unittest import mock

from hypothesis import given, settings
from hypothesis import strategies as st

import pycq
from pycq.core import (VertexSet, check_dimension, default_workers, format_label, iter_bits,
                       parse_label, popcount, WORKERS_ENV_VAR)


class TestLabels(unittest.TestCase):
    def test_format_label_msb_first(self):
        self.assertEqual(format_label(4, 4), '0100')
        self.assertEqual(format_label(7, 4), '0111')
        self.assertEqual(format_label(1, 6), '000001')

    def test_parse_label(self):
        self.assertEqual(parse_label('1011'), 11)

    def test_parse_label_rejects_non_binary(self):
        with self.assertRaises(pycq.PycqError) as ex:
            parse_label('01a1')
        self.assertEqual(str(ex.exception), "'01a1' is not a binary vertex label.")

    def test_iter_bits_ascending(self):
        self.assertEqual(list(iter_bits(0b101100)), [2, 3, 5])
        self.assertEqual(popcount(0b101100), 3)


class TestDimension(unittest.TestCase):
    def test_dimension_out_of_range(self):
        with self.assertRaises(pycq.PycqError) as ex:
            check_dimension(31)
        self.assertEqual(str(ex.exception), "Dimension must be between 1 and 30, given 31.")

    def test_dimension_not_integer(self):
        with self.assertRaises(pycq.PycqError):
            check_dimension(3.0)
        with self.assertRaises(pycq.PycqError):
            check_dimension(True)


class TestVertexSet(unittest.TestCase):
    def test_from_binary_and_back(self):
        s = VertexSet.from_binary(4, ['0100', '0000', '0111'])
        self.assertEqual(list(s), [0, 4, 7])
        self.assertEqual(s.to_binary(), ['0000', '0100', '0111'])
        self.assertEqual(len(s), 3)
        self.assertEqual(s.min(), 0)

    def test_label_out_of_range(self):
        with self.assertRaises(pycq.PycqError) as ex:
            VertexSet.from_labels(3, [8])
        self.assertEqual(str(ex.exception), "Vertex 8 is out of range for CQ_3.")

    def test_wrong_label_width(self):
        with self.assertRaises(pycq.PycqError):
            VertexSet.from_binary(4, ['010'])

    def test_algebra(self):
        a = VertexSet.from_labels(3, [0, 1, 2])
        b = VertexSet.from_labels(3, [2, 3])
        self.assertEqual(list(a | b), [0, 1, 2, 3])
        self.assertEqual(list(a & b), [2])
        self.assertEqual(list(a - b), [0, 1])
        self.assertEqual(list(a ^ b), [0, 1, 3])
        self.assertEqual(list(b.complement()), [0, 1, 4, 5, 6, 7])
        self.assertTrue((a & b).issubset(a))
        self.assertFalse(a.isdisjoint(b))
        self.assertIn(2, a)
        self.assertNotIn(7, a)

    def test_mixed_dimensions_refused(self):
        with self.assertRaises(pycq.PycqError) as ex:
            _ = VertexSet(3, 1) | VertexSet(4, 1)
        self.assertEqual(str(ex.exception), "Cannot combine vertex sets of CQ_3 and CQ_4.")

    def test_empty_set_has_no_min(self):
        self.assertFalse(VertexSet(3))
        with self.assertRaises(pycq.PycqError):
            VertexSet(3).min()

    def test_bits_must_fit(self):
        with self.assertRaises(pycq.PycqError):
            VertexSet(2, 1 << 4)

    @settings(max_examples=100)
    @given(st.sets(st.integers(0, 15)), st.sets(st.integers(0, 15)))
    def test_algebra_matches_python_sets(self, x, y):
        a, b = VertexSet.from_labels(4, x), VertexSet.from_labels(4, y)
        self.assertEqual(set(a | b), x | y)
        self.assertEqual(set(a & b), x & y)
        self.assertEqual(set(a - b), x - y)
        self.assertEqual(set(a ^ b), x ^ y)
        self.assertEqual(len(a), len(x))


class TestWorkers(unittest.TestCase):
    def test_workers_from_environment(self):
        with mock.patch.dict(os.environ, {WORKERS_ENV_VAR: '3'}):
            self.assertEqual(default_workers(), 3)

    def test_workers_invalid(self):
        with mock.patch.dict(os.environ, {WORKERS_ENV_VAR: 'zero'}):
            with self.assertRaises(pycq.PycqError) as ex:
                default_workers()
        self.assertEqual(str(ex.exception),
                         "PYCQ_WORKERS must be a positive integer, given 'zero'.")

    def test_workers_default(self):
        env = {k: v for k, v in os.environ.items() if k != WORKERS_ENV_VAR}
        with mock.patch.dict(os.environ, env, clear=True):
            self.assertGreaterEqual(default_workers(), 1)


if __name__ == '__main__':
    unittest.main()
