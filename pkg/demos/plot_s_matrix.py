"""
The matrix S(z)
===============

S(z) is obtained by stacking n layers of 3D R or L and tracing over the
auxiliary Fock space. Each element is a finite sum of simple poles in z.
"""

from fractions import Fraction

from ybx.exactalg import spectral_to_fraction
from ybx.smatrix import s_block, s_element, verify_ybe_point

eps = (1, 0, 1)
s = s_element(eps, (0, 3, 1), (1, 1, 0), (0, 3, 1), (1, 1, 0))
print("as a sum of poles:", s)
num, slopes = spectral_to_fraction(s)
print("numerator:", num)
print("denominator: product of (1 - z q^k) for k in", slopes)

# the whole block for levels (2, 1)
block = s_block(eps, 2, 1)
print(f"block (2,1): {block.dim} x {block.dim}, {len(block.entries)} nonzero entries")

# Yang-Baxter equation at one exact rational point
print(verify_ybe_point(eps, 1, 1, 1, Fraction(2, 3), Fraction(5, 7), Fraction(-3, 4)).summary())
