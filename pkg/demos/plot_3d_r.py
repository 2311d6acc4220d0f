"""
The 3D R and L operators
========================

Elements of the 3D R are Laurent polynomials in q. Three independent
constructions are available and always agree.
"""

from ybx.threed import l_elem, q0_r_map, r_elem, r_elem_alt, r_elem_contour

# one element, three ways
idx = (2, 2, 1, 3, 1, 2)
print("R^{2,2,1}_{3,1,2} =", r_elem(*idx))
print("same via the second formula:", r_elem_alt(*idx) == r_elem(*idx))
print("same via the contour route:", r_elem_contour(*idx) == r_elem(*idx))

# weight conservation: a+b = i+j and b+c = j+k, so a column is finite
i, j, k = 3, 1, 2
for b in range(min(i + j, j + k) + 1):
    a, c = i + j - b, j + k - b
    print(f"  R^{{{a},{b},{c}}}_{{{i},{j},{k}}} = {r_elem(a, b, c, i, j, k)}")

# at q = 0 each column has a single surviving entry
print("q = 0 image of (3,1,2):", q0_r_map(3, 1, 2))

# the L operator acts on one Fock space and two spin-1/2 legs
print("L^{0,1,0}_{1,0,1} =", l_elem(0, 1, 0, 1, 0, 1))
