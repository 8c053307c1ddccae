import unittest

import pycq
from pycq.lemmas import LEMMAS, SHAPE_NAMES, _normalize, applicable_lemma, get_lemma


class TestLemmaTables(unittest.TestCase):
    def test_priority_order(self):
        self.assertEqual(applicable_lemma(4, 6).lemma_id, 'cq4-six-faults')
        self.assertEqual(applicable_lemma(5, 10).lemma_id, 'cq5-ten-faults')
        self.assertEqual(applicable_lemma(5, 4).lemma_id, 'below-connectivity')
        self.assertEqual(applicable_lemma(6, 9).lemma_id, 'up-to-2n-3')
        self.assertEqual(applicable_lemma(6, 10).lemma_id, 'up-to-3n-6')
        self.assertEqual(applicable_lemma(6, 13).lemma_id, 'up-to-4n-10')
        self.assertEqual(applicable_lemma(6, 14).lemma_id, 'up-to-4n-10')
        self.assertEqual(applicable_lemma(6, 15).lemma_id, 'up-to-4n-9')
        self.assertEqual(applicable_lemma(7, 19).lemma_id, 'up-to-4n-9')

    def test_nothing_applies(self):
        with self.assertRaises(pycq.PycqError) as ex:
            applicable_lemma(5, 12)
        self.assertEqual(str(ex.exception),
                         "No component-structure result applies to CQ_5 with |F| = 12.")

    def test_unknown_id(self):
        with self.assertRaises(pycq.PycqError) as ex:
            get_lemma('up-to-5n')
        self.assertTrue(str(ex.exception).startswith("No result named 'up-to-5n'; known: "))

    def test_connected_condition_added(self):
        lemma = get_lemma('up-to-2n-3')
        self.assertEqual([c.index for c in lemma.conditions], [0, 1])
        self.assertEqual(lemma.condition(0).describe(), 'connected')
        self.assertEqual(lemma.condition(1).describe(), '2 components, small ones: IsolatedVertex')

    def test_orders_condition(self):
        condition = get_lemma('cq4-six-faults').condition(5)
        self.assertEqual(condition.orders, (5, 5))
        self.assertEqual(condition.describe(), '2 components of orders 5, 5')

    def test_missing_condition(self):
        with self.assertRaises(pycq.PycqError):
            get_lemma('below-connectivity').condition(2)

    def test_small_shapes_are_known(self):
        for lemma in LEMMAS:
            for c in lemma.conditions:
                self.assertTrue(set(c.small) <= set(SHAPE_NAMES))


class TestNormalize(unittest.TestCase):
    def test_unknown_key(self):
        with self.assertRaises(pycq.PycqError):
            _normalize([{'count': 2, 'large': ['K2']}], with_connected=False)

    def test_unknown_shape(self):
        with self.assertRaises(pycq.PycqError) as ex:
            _normalize([{'count': 2, 'small': ['Cycle4']}], with_connected=False)
        self.assertEqual(str(ex.exception),
                         "Unknown component shape 'Cycle4' in condition "
                         "{'count': 2, 'small': ['Cycle4']}.")

    def test_wrong_number_of_small_components(self):
        with self.assertRaises(pycq.PycqError):
            _normalize([{'count': 3, 'small': ['K2']}], with_connected=False)

    def test_small_sorted(self):
        (c,) = _normalize([{'count': 3, 'small': ['K2', 'IsolatedVertex']}],
                          with_connected=False)
        self.assertEqual(c.small, ('IsolatedVertex', 'K2'))
        self.assertEqual(c.index, 1)


if __name__ == '__main__':
    unittest.main()
