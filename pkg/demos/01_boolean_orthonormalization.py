"""
Boolean orthonormalization of binary vectors
=============================================

Two binary vectors are orthogonal in the Boolean sense when their AND is
all zero. Orthonormalizing a set keeps, for each vector, only the bits that
no earlier vector has claimed; the cleared bits form the residual.
"""

import numpy as np

from sbon.bop import bop_v1, bop_v2, is_orthonormal_set

###############################################################################
# A small, overlapping set
vs = np.array([
    [1, 1, 0, 0, 1],
    [1, 0, 1, 0, 1],
    [0, 1, 1, 1, 0],
])
print("input orthonormal?", is_orthonormal_set(vs))

result = bop_v1(vs)
print("u (orthonormalized):\n", result.u)
print("s (residuals):\n", result.s)
print("output orthonormal?", is_orthonormal_set(result.u))

###############################################################################
# The residual-accumulating variant reaches exactly the same pair of sets
print("v1 == v2:", bop_v1(vs) == bop_v2(vs))

###############################################################################
# Order matters: the first vector keeps everything it has
print("reversed order u:\n", bop_v1(vs[::-1]).u[::-1])
