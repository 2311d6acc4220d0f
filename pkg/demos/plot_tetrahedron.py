"""
Tetrahedron equations
=====================

RRRR, RLLL and the n-layer equation are checked as exact identities on
finite families of input vectors.
"""

from ybx.threed import REFERENCE_CHAINS, sweep_te_rlll, sweep_te_rrrr, verify_combinatorial_te

# every input with entry sum <= 2, plus random ones
print(sweep_te_rrrr(max_sum=2, n_random=10, max_entry=3, seed=1).summary())
print(sweep_te_rlll(max_fock_sum=2).summary())

# at q = 0 the operators become bijections and the equation is a statement
# about composing maps; the intermediate states form a chain
report = verify_combinatorial_te("RRRR", max_entry=2)
print(report.summary())
print("chain for 261435:", report.details["chains"]["lhs"])
print("reference chain:", ["".join(map(str, s)) for s in REFERENCE_CHAINS["RRRR"]["lhs"]])
