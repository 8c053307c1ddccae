# This tutorial will teach you how to build a crossed cube in PyCQ and look at
# what is left of it after some of its vertices fail.
# In the next tutorial, we'll use that to bound how many faults can be diagnosed.

# First we need to import the PyCQ library
import pycq

# A crossed cube is built by giving its dimension n. CQ_n has 2^n vertices,
# labeled by the integers 0..2^n - 1; when we print them we use n-bit strings,
# most significant bit first.
cube = pycq.CrossedCube(4)

# Every vertex has exactly n neighbors. Here they are for 0000 and 0111:
print(cube.neighbors(0b0000).to_binary())
print(cube.neighbors(0b0111).to_binary())

# CQ_n has two definitions: a flat rule that decides adjacency directly from the
# labels, and a recursive construction that joins two copies of CQ_{n-1} with
# a perfect matching of "cross edges". verify() checks that the two agree, and
# raises a WitnessError if they don't.
cube.verify()

# Removing vertices is done with VertexSets. They can be built from integers or
# from binary labels, and support the usual set operators.
faults = pycq.VertexSet.from_binary(4, ['0100', '0111', '0011', '1000', '1110', '1011'])
print(faults)

# components() lists what is left of the cube, ordered by smallest label.
for comp in pycq.components(cube, faults):
    print(comp.to_binary())

# profile() summarizes the components by shape: isolated vertices, edges (K2),
# short paths, stars, and everything bigger as Other(order). The six faults
# above split CQ_4 into two halves of five vertices each.
print(pycq.profile(cube, faults).describe())

# A set F is a g-extra cut when CQ_n - F is disconnected and every component
# has at least g+1 vertices. The set above is a 3-extra cut (and a 4-extra one):
print(pycq.is_g_extra_cut(cube, faults, 3))

# The smallest such set gives the g-extra connectivity. For CQ_4 and g = 3 it is
# 6, and the set above is one of the witnesses.
result = pycq.extra_connectivity(cube, 3)
print(result.value, result.witness.to_binary(), result.profile.describe())

# Finally, classify_lemma() checks a fault set against the table of known
# component structures that applies to its size, and lemma_sweep() does the
# same for every fault set of a given size. For CQ_4 with six faults that is
# 8008 sets, all of which fall under one of five conditions.
print(pycq.classify_lemma(cube, faults))
report = pycq.lemma_sweep(cube, 6)
print(report.total_subsets, dict(report.condition_histogram), report.violation_count)

# That's it for now! In the next tutorial we'll put faults to the test.
