"""
Composing rotations without matrices
====================================

Two Gibbs vectors combine into the vector of the composite rotation with
a cross product, a dot product, and one division -- cheaper than a 3x3
matrix product and exactly equivalent to it.
"""

import numpy as np

from gibbsrot import (
    compose,
    compose_sequence,
    gibbs_to_matrix,
    invert,
    is_pi_encoded,
    matrix_to_gibbs,
)

# compose(r, s) is the rotation "s first, then r", matching the matrix
# product U(r) @ U(s) on column vectors.
r = np.array([1.0, 0.0, 0.0])   # half of a half turn about x (90 degrees)
s = np.array([0.0, 1.0, 0.0])   # 90 degrees about y
t = compose(r, s)
print("compose((1,0,0),(0,1,0)) =", t)

check = matrix_to_gibbs(gibbs_to_matrix(r) @ gibbs_to_matrix(s))
print("via matrices:            ", check.round(15))

# Inverses are free: negate the vector.
print("t composed with invert(t):", compose(t, invert(t)))

# Two quarter turns about the same axis make a half turn.  The rational
# formula's denominator vanishes there, and the result comes back
# pi-encoded instead of overflowing or raising.
tt = compose(r, r)
print("two quarter turns about x give a half turn:", is_pi_encoded(tt))

# Long chains fold with compose_sequence; the last element acts first,
# like reading a matrix product left to right.
steps = np.tile([0.0, 0.0, np.tan(np.radians(0.5))], (360, 1))
total = compose_sequence(steps)
print("360 one-degree steps about z return to the identity:",
      np.linalg.norm(total))

# Halfway through such a loop sits the half turn itself; the fold passes
# through it without losing the thread.
half = compose_sequence(steps[:180])
print("the 180-step prefix is the half turn about z:", is_pi_encoded(half))

# Composition is associative to rounding error, so chunked folds agree.
rng = np.random.default_rng(0)
chain = rng.normal(size=(64, 3))
left = compose(compose_sequence(chain[:32]), compose_sequence(chain[32:]))
print("chunked fold matches flat fold:",
      np.abs(left - compose_sequence(chain)).max() < 1e-12)
