"""
Combinatorial R and the energy
==============================

At q = 0 the scaled S(z) becomes a bijection on crystal vectors
together with an integer energy H. The pairing algorithm computes both.
"""

from ybx.crystal import CrystalVector, comb_r, enumerate_crystal, pl_oracle, verify_inverse
from ybx.smatrix import s_scaled_limit

eps = (0, 1, 0, 1, 0)
i = CrystalVector(eps, (0, 1, 3, 1, 3))
j = CrystalVector(eps, (1, 0, 2, 1, 0))
b, a, h, trace = comb_r(i, j)
print(f"{i} (x) {j} -> {b} (x) {a}, H = {h}")
print("borders:", trace.borders)
print("piecewise-linear formula agrees:", pl_oracle(i, j) == (b, a, h, trace.borders))

# the scaled q -> 0 limit of S picks out exactly this image
eps3 = (1, 0, 1)
i3, j3 = CrystalVector(eps3, (0, 3, 1)), CrystalVector(eps3, (1, 1, 0))
b3, a3, h3, _ = comb_r(i3, j3)
print("limit of S at the image:", s_scaled_limit(eps3, 4, 2, a3.a, b3.a, i3.a, j3.a), "with H =", h3)

print("crystal of level 2 for eps=01:", [str(v) for v in enumerate_crystal((0, 1), 2)])
print(verify_inverse((0, 1, 0), 3, 2).summary())
