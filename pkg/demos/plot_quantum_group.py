"""
Quantum group symmetry
======================

The representation matrices of the generalized quantum group satisfy the
defining relations, and S(x/y) commutes with the coproduct action.
"""

from fractions import Fraction

from ybx.qgroup import check_algebra_relations, random_weight_preserving, rep_matrices, verify_intertwiner

eps = (1, 0, 1)
q, x, y = Fraction(3, 5), Fraction(2, 7), Fraction(-4, 3)

rep = rep_matrices(eps, 2, q, x)
print("dimension of W_2:", rep.dim)
print(check_algebra_relations(eps, 2, q, x).summary())
print(verify_intertwiner(eps, 2, 1, q, x, y).summary())

# a random matrix with the same zero pattern is not an intertwiner
fake = random_weight_preserving(eps, 2, 1, seed=3)
print(verify_intertwiner(eps, 2, 1, q, x, y, s_matrix=fake).summary())
