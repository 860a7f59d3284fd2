"""
Rotations that carry one vector onto another
============================================

Asking for "the" rotation taking p to q is underdetermined: a whole
one-parameter family does it, and in Gibbs form that family is simply a
straight line of vectors.  A second vector pair picks out one member --
by intersecting two such lines.
"""

import numpy as np

from gibbsrot import (
    AntipodalError,
    InvalidPairError,
    align_family,
    align_line,
    align_pair,
    gibbs_to_axis_angle,
    rotate_vector,
)

# The family taking x to y: a base point plus a direction, parameterized
# by gamma.  Every member really does the job.
p = np.array([1.0, 0.0, 0.0])
q = np.array([0.0, 1.0, 0.0])
family = align_family(p, q)
print("base member:     ", family.base)
print("line direction:  ", family.direction)
for gamma in (-1.0, 0.0, 2.0):
    member = family.member(gamma)
    print(f"gamma={gamma:+.0f} member {member} maps p to",
          rotate_vector(member, p).round(12))

# gamma = 0 is the minimal rotation, perpendicular to both vectors; the
# axis tilts as you walk the line, sweeping every rotation that works.
axis, angle = gibbs_to_axis_angle(align_line(p, q, 0.0))
print(f"minimal member: {np.degrees(angle):.0f} degrees about {axis.round(12)}")

# Exactly opposite vectors are the one degenerate case -- the line
# escapes to infinity.  The error carries a usable replacement: the
# basis of half-turn axes that flip p onto -p.
try:
    align_line(p, -p, 0.0)
except AntipodalError as exc:
    print("antipodal pair rejected; half-turn axes span:")
    print(exc.basis.round(12))

# Two pairs determine the rotation outright, as the intersection of two
# families.  Build a ground-truth rotation and reconstruct it.
rng = np.random.default_rng(8)
true = rng.normal(size=3) * 0.7
p1, p2 = rng.normal(size=(2, 3))
q1, q2 = rotate_vector(true, p1), rotate_vector(true, p2)
got = align_pair(p1, q1, p2, q2)
print("true rotation:     ", true.round(12))
print("reconstructed:     ", got.round(12))

# Rigidity is checked before solving: pairs that no rotation can relate
# (stretched lengths, bent mutual angles) are refused with a reason.
try:
    align_pair(p1, 1.001 * q1, p2, q2)
except InvalidPairError as exc:
    print("stretched pair rejected:", exc.condition)
bend_axis = np.cross(q1, q2)
bend_axis /= np.linalg.norm(bend_axis)
bent_q2 = rotate_vector(np.tan(0.0005) * bend_axis, q2)  # lengths intact
try:
    align_pair(p1, q1, p2, bent_q2)
except InvalidPairError as exc:
    print("bent pair rejected:     ", exc.condition)
