import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

import pycq
from pycq.topology import (Construction, CrossedCube, build_recursive, cross_partner, decompose,
                           is_adjacent_flat, pair_related, reassemble)

CQ3_EDGES = [(0, 1), (0, 2), (0, 4), (1, 3), (1, 7), (2, 3), (2, 6), (3, 5), (4, 5), (4, 6),
             (5, 7), (6, 7)]


class TestPairRelation(unittest.TestCase):
    def test_related_blocks(self):
        self.assertTrue(pair_related('00', '00'))
        self.assertTrue(pair_related('10', '10'))
        self.assertTrue(pair_related('01', '11'))
        self.assertTrue(pair_related('11', '01'))

    def test_unrelated_blocks(self):
        self.assertFalse(pair_related('01', '01'))
        self.assertFalse(pair_related('00', '10'))
        self.assertFalse(pair_related(0b11, 0b11))

    def test_bad_block(self):
        with self.assertRaises(pycq.PycqError) as ex:
            pair_related('012', '00')
        self.assertEqual(str(ex.exception), "'012' is not a two-bit string.")


class TestAdjacency(unittest.TestCase):
    def test_cq1_is_k2(self):
        self.assertTrue(is_adjacent_flat(0, 1, 1))
        self.assertEqual(list(CrossedCube(1).edges()), [(0, 1)])

    def test_cq3_edges(self):
        self.assertEqual(list(CrossedCube(3).edges()), CQ3_EDGES)

    def test_cq4_neighbors(self):
        cube = CrossedCube(4)
        self.assertEqual(cube.neighbor_list(0), (1, 2, 4, 8))
        self.assertEqual(cube.neighbor_list(4), (0, 5, 6, 12))
        self.assertEqual(cube.neighbor_list(6), (2, 4, 7, 14))
        self.assertEqual(cube.neighbor_list(7), (1, 5, 6, 13))
        self.assertEqual(pycq.neighbors(cube, 0).to_binary(), ['0001', '0010', '0100', '1000'])

    def test_no_self_loops(self):
        for u in range(16):
            self.assertFalse(is_adjacent_flat(u, u, 4))

    def test_label_out_of_range(self):
        with self.assertRaises(pycq.PycqError) as ex:
            is_adjacent_flat(0, 16, 4)
        self.assertEqual(str(ex.exception),
                         "Vertex 16 is not a label of CQ_4 (must be in [0, 16)).")

    @settings(max_examples=200)
    @given(st.integers(2, 12).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1),
                            st.integers(0, (1 << n) - 1))))
    def test_symmetric(self, case):
        n, u, v = case
        self.assertEqual(is_adjacent_flat(u, v, n), is_adjacent_flat(v, u, n))

    @settings(max_examples=50)
    @given(st.integers(1, 16).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
    def test_regular(self, case):
        n, u = case
        nbrs = CrossedCube(n).neighbor_list(u)
        self.assertEqual(len(nbrs), n)
        self.assertTrue(all(is_adjacent_flat(u, v, n) for v in nbrs))

    def test_edge_counts(self):
        for n in range(1, 11):
            self.assertEqual(CrossedCube(n).edge_count(), n * (1 << (n - 1)))


class TestCrossEdges(unittest.TestCase):
    def test_cq3_cross_partners(self):
        self.assertEqual([cross_partner(u, 3) for u in range(4)], [4, 7, 6, 5])

    def test_cross_partner_is_involution(self):
        for n in range(2, 9):
            for u in range(1 << n):
                self.assertEqual(cross_partner(cross_partner(u, n), n), u)

    def test_cross_edges_are_perfect_matching(self):
        for n in range(2, 8):
            cube = CrossedCube(n)
            _, _, matching = decompose(cube)
            self.assertEqual(len(matching.pairs), 1 << (n - 1))
            matching.validate(cube)

    def test_cq1_has_no_cross_edges(self):
        with self.assertRaises(pycq.PycqError):
            cross_partner(0, 1)


class TestConstructions(unittest.TestCase):
    def test_flat_equals_recursive(self):
        for n in range(1, 11):
            self.assertEqual(CrossedCube(n).edge_set(), build_recursive(n).edge_set())

    def test_verify(self):
        for n in range(1, 11):
            CrossedCube(n).verify()

    def test_recursive_cube_answers_from_edges(self):
        cube = build_recursive(4)
        self.assertIs(cube.construction, Construction.RECURSIVE)
        self.assertEqual(cube.neighbor_list(7), (1, 5, 6, 13))
        self.assertEqual(cube.cross_partner(7), 13)

    def test_decompose_halves_are_smaller_cubes(self):
        cube = CrossedCube(5)
        half0, half1, _ = decompose(cube)
        self.assertEqual(half0.edge_set(), CrossedCube(4).edge_set())
        self.assertEqual(half1.edge_set(), CrossedCube(4).edge_set())

    def test_decompose_then_reassemble(self):
        for n in range(2, 8):
            cube = CrossedCube(n)
            self.assertEqual(reassemble(*decompose(cube)), cube.edge_set())

    def test_neighborhood(self):
        cube = CrossedCube(4)
        a = pycq.VertexSet.from_labels(4, [0, 4, 6, 7])
        self.assertEqual(cube.neighborhood(a).to_binary(),
                         ['0001', '0010', '0101', '1000', '1100', '1101', '1110'])
        self.assertEqual(cube.induced_edges(a), [(0, 4), (4, 6), (6, 7)])

    def test_to_networkx(self):
        g = CrossedCube(4).to_networkx()
        self.assertEqual(g.number_of_nodes(), 16)
        self.assertEqual(g.number_of_edges(), 32)


if __name__ == '__main__':
    unittest.main()
