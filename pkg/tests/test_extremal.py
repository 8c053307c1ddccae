import unittest

import pycq
from pycq.core import VertexSet
from pycq.enumeration import iter_subsets
from pycq.extremal import (WitnessBundle, build_A, connected_subsets, cq4_exceptional_cut,
                           extra_cut_upper_bound, tightly_super_check, validate_bundle,
                           witness_bundle)
from pycq.structure import PATH3, classify_shape, components, is_g_extra_cut
from pycq.topology import CrossedCube


class TestPathSet(unittest.TestCase):
    def test_build_A(self):
        self.assertEqual(build_A(4).to_binary(), ['0000', '0100', '0110', '0111'])
        self.assertEqual(list(build_A(9)), [0, 4, 6, 7])

    def test_induces_a_path(self):
        for n in range(4, 9):
            self.assertEqual(classify_shape(CrossedCube(n), build_A(n)), PATH3)

    def test_too_small(self):
        with self.assertRaises(pycq.PycqError) as ex:
            build_A(3)
        self.assertEqual(str(ex.exception), "The 3-path set needs n >= 4, given 3.")


class TestWitnessBundle(unittest.TestCase):
    def test_cq4_neighborhood(self):
        bundle = witness_bundle(4)
        self.assertEqual(bundle.NA.to_binary(),
                         ['0001', '0010', '0101', '1000', '1100', '1101', '1110'])
        self.assertEqual(bundle.F1, bundle.NA)
        self.assertEqual(bundle.F2, bundle.A | bundle.NA)

    def test_cq5_neighborhood(self):
        self.assertEqual(list(witness_bundle(5).NA),
                         [1, 2, 5, 8, 12, 13, 14, 16, 28, 29, 30])

    def test_sizes(self):
        for n in range(4, 15):
            bundle = witness_bundle(n)
            self.assertEqual(len(bundle.F1), 4 * n - 9)
            self.assertEqual(len(bundle.F2), 4 * n - 5)
            self.assertEqual(bundle.F1 ^ bundle.F2, bundle.A)

    def test_validate_bundle(self):
        for n in range(4, 15):
            validate_bundle(CrossedCube(n), witness_bundle(n))

    def test_validate_rejects_broken_bundle(self):
        cube = CrossedCube(5)
        good = witness_bundle(5)
        # dropping a neighbor of A from F1 leaves an edge from A to the outside
        broken = WitnessBundle(5, good.A, good.NA, good.NA - VertexSet.from_labels(5, [1]),
                               good.F2)
        with self.assertRaises(pycq.WitnessError):
            validate_bundle(cube, broken)


class TestExceptionalCut(unittest.TestCase):
    def test_cut(self):
        cut, prof = cq4_exceptional_cut()
        self.assertEqual(len(cut), 6)
        self.assertEqual(prof.describe(), 'Other(5)+Other(5)')
        self.assertTrue(is_g_extra_cut(CrossedCube(4), cut, 3))

    def test_sides(self):
        cut, _ = cq4_exceptional_cut()
        sides = components(CrossedCube(4), cut)
        self.assertEqual(sides[1].to_binary(), ['0101', '1001', '1100', '1101', '1111'])


class TestConnectedSubsets(unittest.TestCase):
    def brute_force(self, cube, order):
        found = set()
        for mask in iter_subsets(cube.vertex_count, order):
            s = VertexSet(cube.n, mask)
            if len(components(cube, s.complement())) == 1:
                found.add(mask)
        return found

    def test_matches_brute_force(self):
        for n, order in ((3, 1), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4)):
            cube = CrossedCube(n)
            sets = [s.bits for s in connected_subsets(cube, order)]
            self.assertEqual(len(sets), len(set(sets)))
            self.assertEqual(set(sets), self.brute_force(cube, order))

    def test_counts(self):
        cube = CrossedCube(4)
        self.assertEqual([sum(1 for _ in connected_subsets(cube, k)) for k in range(1, 6)],
                         [16, 32, 96, 304, 880])
        self.assertEqual(sum(1 for _ in connected_subsets(CrossedCube(3), 4)), 44)

    def test_order_positive(self):
        with self.assertRaises(pycq.PycqError):
            list(connected_subsets(CrossedCube(3), 0))


class TestUpperBound(unittest.TestCase):
    def test_cq4_g0(self):
        bound = extra_cut_upper_bound(CrossedCube(4), 0)
        self.assertEqual(bound.size, 4)
        self.assertEqual(len(bound.seed), 1)

    def test_cq4_g3_uses_larger_seed(self):
        cube = CrossedCube(4)
        bound = extra_cut_upper_bound(cube, 3)
        self.assertEqual(bound.size, 6)
        self.assertEqual(len(bound.seed), 5)
        self.assertTrue(is_g_extra_cut(cube, bound.cut, 3))

    def test_cq5_g3(self):
        bound = extra_cut_upper_bound(CrossedCube(5), 3)
        self.assertEqual(bound.size, 11)

    def test_no_cut_in_cq3(self):
        self.assertIsNone(extra_cut_upper_bound(CrossedCube(3), 3))

    def test_seed_too_large(self):
        self.assertIsNone(extra_cut_upper_bound(CrossedCube(5), 6))


class TestTightlySuper(unittest.TestCase):
    def test_cq5(self):
        report = tightly_super_check(CrossedCube(5))
        self.assertEqual(report.cut_size, 11)
        self.assertEqual(report.sets_checked, 1456)
        self.assertEqual(report.minimum_neighborhood, 11)
        self.assertEqual(report.tight, 176)
        self.assertEqual(report.not_extra_cut, 0)
        self.assertEqual(report.violations, [])

    def test_cq7(self):
        report = tightly_super_check(CrossedCube(7))
        self.assertEqual(report.sets_checked, 19456)
        self.assertEqual(report.minimum_neighborhood, 19)
        self.assertEqual(report.tight, 1888)
        self.assertEqual(report.violations, [])

    def test_too_small(self):
        with self.assertRaises(pycq.PycqError) as ex:
            tightly_super_check(CrossedCube(3))
        self.assertEqual(str(ex.exception),
                         "Tightly super 3-extra connectivity needs n >= 4, given 3.")


if __name__ == '__main__':
    unittest.main()
