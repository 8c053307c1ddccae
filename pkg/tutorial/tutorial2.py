# In this tutorial we'll look at fault diagnosis in crossed cubes.
#
# Under the PMC model every vertex tests each of its neighbors; under the MM*
# model every vertex compares each pair of its neighbors. A fault-free tester
# always reports the truth, a faulty one may report anything. Two fault sets
# are distinguishable if no collection of test outcomes (a "syndrome") could
# have come from both. CQ_n is g-extra t-diagnosable when any two different
# fault sets of size at most t, each leaving only components of at least g+1
# vertices, are distinguishable.
import pycq
from pycq import DiagnosisModel

n = 7
cube = pycq.CrossedCube(n)

# The 3-path 0...0000 - 0...0100 - 0...0110 - 0...0111 and its neighborhood give
# a pair of fault sets, F1 = N(A) and F2 = A + N(A), that no syndrome can tell
# apart. F1 has 4n-9 vertices and F2 has 4n-5.
bundle = pycq.witness_bundle(n)
print(bundle.A.to_binary())
print(len(bundle.F1), len(bundle.F2))

for model in DiagnosisModel:
    print(model.value, pycq.distinguishable(cube, bundle.F1, bundle.F2, model))

# The closed-form predicates above are cross-checked by an oracle that only
# knows the syndrome semantics:
print(pycq.oracle_distinguishable(cube, bundle.F1, bundle.F2, DiagnosisModel.MMSTAR))

# We can also generate a syndrome for one fault set and ask whether another one
# could have produced it. Faulty testers answer with a fixed pseudorandom bit.
syndrome = pycq.generate_syndrome(cube, bundle.F1, DiagnosisModel.PMC, adversary_seed=1)
print(pycq.syndrome_compatible(cube, bundle.F2, syndrome, DiagnosisModel.PMC))

# Since this pair has size 4n-5, CQ_n cannot be 3-extra (4n-5)-diagnosable:
verdict = pycq.is_g_extra_t_diagnosable(cube, 3, 4 * n - 5, DiagnosisModel.PMC)
print(bool(verdict), verdict.method)

# extra_diagnosability() brackets the 3-extra diagnosability. The upper end
# comes from the witness pair; the lower end, under PMC, from the 3-extra
# connectivity. If we tell it that value (4n-9 for n >= 5), the bracket closes
# at 4n-6.
bracket = pycq.extra_diagnosability(cube, 3, DiagnosisModel.PMC,
                                    extra_connectivity=4 * n - 9)
print(bracket.lower, bracket.upper, bracket.exact, bracket.value)

# Without it, only the connectivity n is used and the bracket stays open:
bracket = pycq.extra_diagnosability(cube, 3, DiagnosisModel.PMC)
print(bracket.lower, bracket.upper, bracket.method)

# On small cubes the question can be settled by checking every pair:
small = pycq.CrossedCube(3)
print(pycq.extra_diagnosability(small, 1, DiagnosisModel.MMSTAR))

# To see a fault set on the cube, pycq.graph(cube, faults) starts an
# interactive viewer in your browser:
#
#     pycq.graph(pycq.CrossedCube(4), pycq.witness_bundle(4).F1)
