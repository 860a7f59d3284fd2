"""Conversions between Gibbs vectors and the neighbouring representations.

Quaternions, axis-angle pairs, and intrinsic z-y-x Euler angles each get a
pair of maps to and from the Gibbs vector (through the rotation matrix
where that is the natural meeting point).  Besides serving users, these
are the independent oracles the test suite checks the rational fast paths
against.

Conventions
-----------
* Quaternions are arrays ``[w, x, y, z]`` (scalar part first) with unit
  norm: ``w**2 + x**2 + y**2 + z**2 == 1`` within ``TOL_QUATERNION_NORM``.
  The canonical representative has ``w >= 0``; when ``w == 0`` the first
  nonzero of ``(x, y, z)`` is positive.  The canonical form is lossy over
  the unit quaternions (q and -q collapse) but lossless over rotations.
* ``quaternion_multiply(a, b)`` is the standard quaternion product.  In
  this package's matrix convention that composes as
  ``quaternion_to_matrix(quaternion_multiply(a, b)) ==
  quaternion_to_matrix(b) @ quaternion_to_matrix(a)``, so the partner of
  ``compose(r, s)`` is ``quaternion_multiply(gibbs_to_quaternion(s),
  gibbs_to_quaternion(r))``.
* Axis-angle pairs carry a unit axis and an angle in ``(-pi, pi]``; the
  Gibbs vector along the same axis has length ``tan(angle / 2)``.
* Euler angles are intrinsic z-y-x: ``yaw`` about z first, then ``pitch``
  about the new y, then ``roll`` about the newest x, all expressed in the
  package's column-vector matrix convention.  Any fixed convention would
  do for a comparison baseline; this one is declared and tested.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import (
    PI_ENCODING_THRESHOLD,
    TOL_ORTHO_INPUT,
    _as_matrix3,
    _as_vec3,
    _pi_mask,
    _require_rotation,
    _unit_axis,
    pi_encode,
)
from .errors import InvalidInputError

__all__ = [
    "TOL_QUATERNION_NORM",
    "TOL_QUATERNION_REAL",
    "AxisAngle",
    "EulerAngles",
    "gibbs_to_quaternion",
    "quaternion_to_gibbs",
    "quaternion_multiply",
    "canonicalize_quaternion",
    "quaternion_to_matrix",
    "matrix_to_quaternion",
    "gibbs_to_axis_angle",
    "axis_angle_to_gibbs",
    "euler_to_matrix",
    "matrix_to_euler",
]

# Tolerance on |q|^2 - 1 for accepting a quaternion as unit.
TOL_QUATERNION_NORM = 1e-12

# Real parts at or below this magnitude are treated as zero, i.e. as half
# turns.  The value is the reciprocal of PI_ENCODING_THRESHOLD so the
# quaternion and Gibbs encodings of "as close to a half turn as a float
# can express" hand off to each other exactly.
TOL_QUATERNION_REAL = 4.0 / np.finfo(np.float64).max



class AxisAngle(NamedTuple):
    """Unit rotation axis and signed angle in ``(-pi, pi]`` radians."""

    axis: np.ndarray
    angle: float


class EulerAngles(NamedTuple):
    """Intrinsic z-y-x angles in radians: yaw about z, then pitch about
    the rotated y, then roll about the resulting x."""

    yaw: float
    pitch: float
    roll: float


# ---------------------------------------------------------------------------
# quaternion helpers


def _as_quaternion(q, name: str = "q") -> np.ndarray:
    """Validate shape and unit norm; return a float copy."""
    a = np.asarray(q, dtype=float)
    if a.ndim == 0 or a.shape[-1] != 4:
        raise InvalidInputError(
            f"{name} must have shape (..., 4) as [w, x, y, z], got {a.shape}"
        )
    if not np.isfinite(a).all():
        raise InvalidInputError(f"{name} has non-finite entries")
    err = np.abs(np.sum(a * a, axis=-1) - 1.0)
    if err.size and float(err.max()) > TOL_QUATERNION_NORM:
        raise InvalidInputError(
            f"{name} is not unit length: |q|^2 - 1 = {float(err.max()):.3e} "
            f"exceeds {TOL_QUATERNION_NORM:g}"
        )
    return a.copy()


def canonicalize_quaternion(q) -> np.ndarray:
    """Canonical sign representative: ``w >= 0``; for ``w == 0`` the first
    nonzero imaginary component is positive.

    Only signs are touched (no renormalization), so the operation is
    idempotent bit for bit.
    """
    a = _as_quaternion(q)
    flat = a.reshape(-1, 4)
    w = flat[:, 0]
    flip = w < 0.0
    on_zero = w == 0.0
    if on_zero.any():
        v = flat[on_zero, 1:]
        first = np.argmax(v != 0.0, axis=-1)
        lead = np.take_along_axis(v, first[:, None], axis=-1)[:, 0]
        flip[on_zero] = lead < 0.0
    flat[flip] = -flat[flip]
    return flat.reshape(a.shape)


def quaternion_multiply(a, b) -> np.ndarray:
    """Quaternion product ``a * b`` (scalar-first layout, broadcasting).

    The output is not renormalized; products of unit inputs stay unit to
    roundoff.  Note the matrix correspondence runs right to left:
    ``quaternion_to_matrix(a * b) == quaternion_to_matrix(b) @
    quaternion_to_matrix(a)``.
    """
    a = _as_quaternion(a, "a")
    b = _as_quaternion(b, "b")
    aw, ax, ay, az = (a[..., i] for i in range(4))
    bw, bx, by, bz = (b[..., i] for i in range(4))
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by + ay * bw + az * bx - ax * bz,
            aw * bz + az * bw + ax * by - ay * bx,
        ],
        axis=-1,
    )


def gibbs_to_quaternion(r) -> np.ndarray:
    """Canonical unit quaternion of a Gibbs vector.

    Finite regime: ``(1, r) / sqrt(1 + |r|^2)``, computed against the
    largest component so magnitudes near the encoding threshold cannot
    overflow.  Half-turn encodings map to ``(0, axis)``.
    """
    a = _as_vec3(r, "r")
    flat = a.reshape(-1, 3)
    out = np.empty((flat.shape[0], 4))
    pi = _pi_mask(flat)
    if pi.any():
        axis = _unit_axis(flat[pi])
        out[pi, 0] = 0.0
        out[pi, 1:] = axis
    fin = ~pi
    if fin.any():
        f = flat[fin]
        c = np.maximum(np.abs(f).max(axis=-1), 1.0)[:, None]
        w = 1.0 / c
        v = f / c
        norm = np.sqrt(w * w + np.sum(v * v, axis=-1, keepdims=True))
        out[fin, 0] = (w / norm)[:, 0]
        out[fin, 1:] = v / norm
    return canonicalize_quaternion(out.reshape(a.shape[:-1] + (4,)))


def quaternion_to_gibbs(q) -> np.ndarray:
    """Gibbs vector of a unit quaternion: the imaginary part divided by
    the real part.  Real parts within ``TOL_QUATERNION_REAL`` of zero are
    half turns and produce the encoding about the imaginary direction.
    """
    a = _as_quaternion(q)
    flat = a.reshape(-1, 4)
    out = np.empty((flat.shape[0], 3))
    w = flat[:, 0]
    half = np.abs(w) <= TOL_QUATERNION_REAL
    if half.any():
        out[half] = pi_encode(flat[half, 1:])
    fin = ~half
    if fin.any():
        out[fin] = flat[fin, 1:] / w[fin, None]
    return out.reshape(a.shape[:-1] + (3,))


def quaternion_to_matrix(q) -> np.ndarray:
    """Rotation matrix of a unit quaternion, in the package's
    column-vector convention (matches ``gibbs_to_matrix`` of the
    corresponding Gibbs vector, half turns included)."""
    a = _as_quaternion(q)
    flat = a.reshape(-1, 4)
    w, x, y, z = (flat[:, i] for i in range(4))
    k = 2.0 * w * w - 1.0
    u = np.empty((flat.shape[0], 3, 3))
    u[:, 0, 0] = k + 2.0 * x * x
    u[:, 0, 1] = 2.0 * (x * y + w * z)
    u[:, 0, 2] = 2.0 * (x * z - w * y)
    u[:, 1, 0] = 2.0 * (x * y - w * z)
    u[:, 1, 1] = k + 2.0 * y * y
    u[:, 1, 2] = 2.0 * (y * z + w * x)
    u[:, 2, 0] = 2.0 * (x * z + w * y)
    u[:, 2, 1] = 2.0 * (y * z - w * x)
    u[:, 2, 2] = k + 2.0 * z * z
    return u.reshape(a.shape[:-1] + (3, 3))


def matrix_to_quaternion(u, *, check: bool = True, ortho_tol: float = TOL_ORTHO_INPUT) -> np.ndarray:
    """Canonical unit quaternion of a rotation matrix.

    Uses the stable four-branch extraction: the largest of the four
    squared components (read off the trace and diagonal) is taken by
    square root and the rest by ratios, so no branch divides by a small
    number.  Set ``check=False`` to skip the orthogonality test for
    matrices already known to be rotations.
    """
    a = _as_matrix3(u, "matrix")
    if check:
        _require_rotation(a, ortho_tol)
    flat = a.reshape(-1, 3, 3)
    n = flat.shape[0]
    d0 = flat[:, 0, 0]
    d1 = flat[:, 1, 1]
    d2 = flat[:, 2, 2]
    # Each column below equals 4 q_i^2 for i in (w, x, y, z).
    four_sq = np.stack(
        [
            1.0 + d0 + d1 + d2,
            1.0 + d0 - d1 - d2,
            1.0 - d0 + d1 - d2,
            1.0 - d0 - d1 + d2,
        ],
        axis=-1,
    )
    branch = np.argmax(four_sq, axis=-1)
    q = np.empty((n, 4))
    dwx = flat[:, 1, 2] - flat[:, 2, 1]
    dwy = flat[:, 2, 0] - flat[:, 0, 2]
    dwz = flat[:, 0, 1] - flat[:, 1, 0]
    sxy = flat[:, 0, 1] + flat[:, 1, 0]
    sxz = flat[:, 0, 2] + flat[:, 2, 0]
    syz = flat[:, 1, 2] + flat[:, 2, 1]
    for which in range(4):
        m = branch == which
        if not m.any():
            continue
        lead = 0.5 * np.sqrt(np.maximum(four_sq[m, which], 0.0))
        inv = 1.0 / (4.0 * lead)
        if which == 0:
            q[m, 0] = lead
            q[m, 1] = dwx[m] * inv
            q[m, 2] = dwy[m] * inv
            q[m, 3] = dwz[m] * inv
        elif which == 1:
            q[m, 0] = dwx[m] * inv
            q[m, 1] = lead
            q[m, 2] = sxy[m] * inv
            q[m, 3] = sxz[m] * inv
        elif which == 2:
            q[m, 0] = dwy[m] * inv
            q[m, 1] = sxy[m] * inv
            q[m, 2] = lead
            q[m, 3] = syz[m] * inv
        else:
            q[m, 0] = dwz[m] * inv
            q[m, 1] = sxz[m] * inv
            q[m, 2] = syz[m] * inv
            q[m, 3] = lead
    # Exact orthogonality is only approximate in the input, so nudge the
    # result back onto the unit sphere before canonicalizing.
    q /= np.sqrt(np.sum(q * q, axis=-1, keepdims=True))
    return canonicalize_quaternion(q.reshape(a.shape[:-2] + (4,)))


# ---------------------------------------------------------------------------
# axis-angle


def gibbs_to_axis_angle(r) -> AxisAngle:
    """Unit axis and angle of a Gibbs vector: ``angle = 2 atan(|r|)``.

    The zero vector has no axis; by convention it reports axis (0, 0, 1)
    with angle 0.  Half-turn encodings report their axis with angle pi.
    Batched input yields stacked axes and an angle array.
    """
    a = _as_vec3(r, "r")
    flat = a.reshape(-1, 3)
    axis = np.zeros_like(flat)
    angle = np.zeros(flat.shape[0])
    pi = _pi_mask(flat)
    if pi.any():
        axis[pi] = _unit_axis(flat[pi])
        angle[pi] = np.pi
    big = np.abs(flat).max(axis=-1)
    zero = ~pi & (big == 0.0)
    axis[zero] = (0.0, 0.0, 1.0)
    fin = ~pi & ~zero
    if fin.any():
        f = flat[fin]
        c = big[fin][:, None]
        v = f / c
        scaled = np.sqrt(np.sum(v * v, axis=-1, keepdims=True))
        axis[fin] = v / scaled
        angle[fin] = 2.0 * np.arctan2(scaled[:, 0] * c[:, 0], 1.0)
    if a.ndim == 1:
        return AxisAngle(axis[0], float(angle[0]))
    return AxisAngle(axis.reshape(a.shape), angle.reshape(a.shape[:-1]))


def axis_angle_to_gibbs(axis, angle=None) -> np.ndarray:
    """Gibbs vector ``tan(angle/2) * axis``; accepts an :class:`AxisAngle`
    or a separate axis and angle.

    The angle is first reduced to ``(-pi, pi]`` (a float-accurate
    reduction: values many turns out lose precision as usual).  An angle
    of exactly pi after reduction produces the half-turn encoding.
    """
    if angle is None:
        axis, angle = axis
    a = _as_vec3(axis, "axis")
    ang = np.asarray(angle, dtype=float)
    if not np.isfinite(ang).all():
        raise InvalidInputError("angle must be finite")
    try:
        ang = np.broadcast_to(ang, a.shape[:-1])
    except ValueError:
        raise InvalidInputError(
            f"angle shape {ang.shape} does not broadcast against axis shape {a.shape}"
        ) from None
    flat = a.reshape(-1, 3)
    norm2 = np.sum(flat * flat, axis=-1)
    if (np.abs(norm2 - 1.0) > 1e-9).any():
        raise InvalidInputError("axis must be unit length (within 1e-9 on |axis|^2)")
    flat = flat / np.sqrt(norm2)[:, None]
    th = np.remainder(ang.reshape(-1) + np.pi, 2.0 * np.pi) - np.pi
    th[th == -np.pi] = np.pi
    out = np.empty_like(flat)
    half = th == np.pi
    if half.any():
        out[half] = pi_encode(flat[half])
    fin = ~half
    if fin.any():
        out[fin] = np.tan(th[fin, None] / 2.0) * flat[fin]
    return out.reshape(a.shape)


# ---------------------------------------------------------------------------
# Euler angles (intrinsic z-y-x)


def euler_to_matrix(yaw, pitch=None, roll=None) -> np.ndarray:
    """Rotation matrix of intrinsic z-y-x angles, in the package's
    column-vector convention.

    Accepts an :class:`EulerAngles`, a single (..., 3) array of
    ``[yaw, pitch, roll]``, or three separate angle arrays.
    """
    if pitch is None:
        arr = np.asarray(yaw, dtype=float)
        if arr.shape[-1:] != (3,):
            raise InvalidInputError(
                f"expected [yaw, pitch, roll] along the last axis, got {arr.shape}"
            )
        yaw, pitch, roll = arr[..., 0], arr[..., 1], arr[..., 2]
    a, b, c = np.broadcast_arrays(
        np.asarray(yaw, dtype=float),
        np.asarray(pitch, dtype=float),
        np.asarray(roll, dtype=float),
    )
    if not (np.isfinite(a).all() and np.isfinite(b).all() and np.isfinite(c).all()):
        raise InvalidInputError("angles must be finite")
    ca, sa = np.cos(a), np.sin(a)
    cb, sb = np.cos(b), np.sin(b)
    cc, sc = np.cos(c), np.sin(c)
    u = np.empty(a.shape + (3, 3))
    u[..., 0, 0] = ca * cb
    u[..., 0, 1] = sa * cc + ca * sb * sc
    u[..., 0, 2] = sa * sc - ca * sb * cc
    u[..., 1, 0] = -sa * cb
    u[..., 1, 1] = ca * cc - sa * sb * sc
    u[..., 1, 2] = ca * sc + sa * sb * cc
    u[..., 2, 0] = sb
    u[..., 2, 1] = -cb * sc
    u[..., 2, 2] = cb * cc
    return u


def matrix_to_euler(u, *, check: bool = True, ortho_tol: float = TOL_ORTHO_INPUT) -> EulerAngles:
    """Intrinsic z-y-x angles of a rotation matrix.

    Yaw and roll land in ``(-pi, pi]`` and pitch in ``[-pi/2, pi/2]``.
    The extraction is built from two-argument arctangents whose operands
    share a common cos(pitch) factor, so it stays accurate arbitrarily
    close to gimbal lock.  Only when that factor is exactly zero (yaw and
    roll truly collapsed into one angle) does the canonical representative
    with ``roll = 0`` come back.
    """
    a = _as_matrix3(u, "matrix")
    if check:
        _require_rotation(a, ortho_tol)
    flat = a.reshape(-1, 3, 3)
    sb = flat[:, 2, 0]
    # hypot(yaw entries) recovers |cos(pitch)| without the precision cliff
    # of arcsin near +/-1.
    cb = np.hypot(flat[:, 0, 0], flat[:, 1, 0])
    pitch = np.arctan2(sb, cb)
    yaw = np.arctan2(-flat[:, 1, 0], flat[:, 0, 0])
    roll = np.arctan2(-flat[:, 2, 1], flat[:, 2, 2])
    locked = cb == 0.0
    if locked.any():
        up = locked & (sb >= 0.0)
        dn = locked & (sb < 0.0)
        roll[locked] = 0.0
        yaw[up] = np.arctan2(flat[up, 0, 1], -flat[up, 0, 2])
        yaw[dn] = np.arctan2(flat[dn, 0, 1], flat[dn, 0, 2])
    yaw[yaw == -np.pi] = np.pi
    roll[roll == -np.pi] = np.pi
    if a.ndim == 2:
        return EulerAngles(float(yaw[0]), float(pitch[0]), float(roll[0]))
    shape = a.shape[:-2]
    return EulerAngles(yaw.reshape(shape), pitch.reshape(shape), roll.reshape(shape))
