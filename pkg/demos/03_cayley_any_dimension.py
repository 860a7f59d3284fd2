"""
The Cayley bridge: rotations from antisymmetric matrices in any dimension
=========================================================================

(I - E)(I + E)^-1 turns an antisymmetric matrix E into a rotation in any
dimension, and the inverse transform has the very same shape.  In 3D the
antisymmetric matrix packs into a vector -- the Gibbs vector -- and the
matrix inversions collapse into the fast rational formulas.
"""

import numpy as np

from gibbsrot import (
    SingularCayleyError,
    cayley_forward,
    cayley_inverse,
    gibbs_to_matrix,
    matrix_to_gibbs,
    skew_from_vector,
    vector_from_skew,
)

# In 3D the packed matrix multiplies like a cross product.
r = np.array([0.3, -0.2, 0.5])
e = skew_from_vector(r)
print("skew form of", r, "is")
print(e.to_array())
v = np.array([1.0, 2.0, 3.0])
print("E @ v equals v x r:", e.to_array() @ v, np.cross(v, r))

# The generic transform and the 3D fast path land on the same rotation.
u_generic = cayley_inverse(e)
u_fast = gibbs_to_matrix(r)
print("generic-vs-fast matrix gap:", np.abs(u_generic - u_fast).max())

# And back again: the forward transform recovers the skew matrix, whose
# packed vector is the Gibbs vector of the rotation.
back = vector_from_skew(cayley_forward(u_generic))
print("round trip through the generic path:", back)
print("direct extraction:                  ", matrix_to_gibbs(u_fast))

# Nothing here is three-dimensional.  A random 5x5 antisymmetric seed
# gives a 5x5 rotation, and the forward transform returns the seed.
rng = np.random.default_rng(1)
a = rng.normal(size=(5, 5))
e5 = (a - a.T) / 2.0
u5 = cayley_inverse(e5)
print("5x5 orthogonality residual:", np.abs(u5 @ u5.T - np.eye(5)).max())
print("5x5 seed recovered to:", np.abs(cayley_forward(u5).to_array() - e5).max())

# The one blind spot: rotations with -1 as an eigenvalue (half turns in
# 3D) make I + U singular, and the forward transform reports it.
half_turn = np.diag([1.0, -1.0, -1.0])
try:
    cayley_forward(half_turn)
except SingularCayleyError as exc:
    print("half turns refuse the generic path:", exc)

# The vector form has no such blind spot: the extraction encodes them.
enc = matrix_to_gibbs(half_turn)
print("but the 3D extraction still answers: half turn about",
      (enc / np.abs(enc).max()).round(12))
