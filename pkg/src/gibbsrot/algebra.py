"""Composition of rotations directly on Gibbs vectors.

The product of two encoded rotations is again a rational expression in
the operands: no matrices, no square roots, no trigonometry.  The order
convention (fixed once by an oracle experiment against matrix products)
is::

    gibbs_to_matrix(compose(r, s)) == gibbs_to_matrix(r) @ gibbs_to_matrix(s)

so on column vectors ``compose(r, s)`` applies ``s`` first, then ``r``.
Equivalently it matches the quaternion product ``q(s) * q(r)`` under the
ratio map.

A denominator near zero means the composite is a half turn; the result
comes back pi-encoded along the numerator direction.  Pi-encoded operands
are routed through the matrix product, which is exact there.
"""

from __future__ import annotations

import numpy as np

from .core import (
    _as_vec3,
    _pi_mask,
    gibbs_to_matrix,
    matrix_to_gibbs,
    pi_encode,
)
from .errors import InvalidInputError

__all__ = ["TOL_COMPOSE_SINGULAR", "compose", "compose_sequence"]

# Relative threshold deciding that the composition denominator vanished
# (the composite is a half turn).
TOL_COMPOSE_SINGULAR = 1e-12


def _compose_direct(r, s):
    """Textbook rational composition, unscaled.

    Exact on ``fractions.Fraction`` inputs.  Elementary arithmetic only;
    no overflow guard, so float callers use :func:`_compose_scaled`.
    """
    x1, y1, z1 = r[..., 0], r[..., 1], r[..., 2]
    x2, y2, z2 = s[..., 0], s[..., 1], s[..., 2]
    cx = y1 * z2 - z1 * y2
    cy = z1 * x2 - x1 * z2
    cz = x1 * y2 - y1 * x2
    num = np.stack([x1 + x2 - cx, y1 + y2 - cy, z1 + z2 - cz], axis=-1)
    den = 1 - (x1 * x2 + y1 * y2 + z1 * z2)
    return num / den[..., None]


def _compose_scaled(r: np.ndarray, s: np.ndarray):
    """Overflow-guarded composition pieces for finite-regime floats.

    Both operands are divided by ``a = max(|r|_inf, 1)`` and
    ``b = max(|s|_inf, 1)``; numerator and denominator are then formed
    already divided by ``a*b``, which leaves the quotient unchanged and
    every intermediate in range.  Elementary arithmetic only.

    Returns ``(num, den, singular, degenerate)`` where ``num/den`` is the
    composite, ``singular`` marks vanishing denominators (half-turn
    composites; encode along ``num``) and ``degenerate`` marks the rows
    where the numerator vanished as well (resolve via matrices).
    """
    a = np.maximum(np.abs(r).max(axis=-1), 1.0)
    b = np.maximum(np.abs(s).max(axis=-1), 1.0)
    with np.errstate(under="ignore"):
        rp = r / a[..., None]
        sp = s / b[..., None]
        inv_ab = (1.0 / a) * (1.0 / b)
        x1, y1, z1 = rp[..., 0], rp[..., 1], rp[..., 2]
        x2, y2, z2 = sp[..., 0], sp[..., 1], sp[..., 2]
        cx = y1 * z2 - z1 * y2
        cy = z1 * x2 - x1 * z2
        cz = x1 * y2 - y1 * x2
        ib = 1.0 / b
        ia = 1.0 / a
        num = np.stack(
            [
                x1 * ib + x2 * ia - cx,
                y1 * ib + y2 * ia - cy,
                z1 * ib + z2 * ia - cz,
            ],
            axis=-1,
        )
        dot = x1 * x2 + y1 * y2 + z1 * z2
        den = inv_ab - dot
        # Same comparison as |1 - r.s| <= tol * (1 + |r||s|), squared to stay
        # square-root free; the squared-sum scale is within a factor of two.
        rr = x1 * x1 + y1 * y1 + z1 * z1
        ss = x2 * x2 + y2 * y2 + z2 * z2
        scale_sq = inv_ab * inv_ab + rr * ss
        tol_sq = TOL_COMPOSE_SINGULAR * TOL_COMPOSE_SINGULAR
        singular = den * den <= tol_sq * scale_sq
        numsq = (num * num).sum(axis=-1)
        degenerate = singular & (numsq <= tol_sq * scale_sq)
    return num, den, singular, degenerate


def _compose_via_matrices(r: np.ndarray, s: np.ndarray) -> np.ndarray:
    prod = gibbs_to_matrix(r) @ gibbs_to_matrix(s)
    return matrix_to_gibbs(prod, check=False)


def compose(r, s) -> np.ndarray:
    """Gibbs vector of the composite rotation (``s`` first, then ``r``).

    Satisfies ``gibbs_to_matrix(compose(r, s)) ==
    gibbs_to_matrix(r) @ gibbs_to_matrix(s)`` to rounding.  Half-turn
    composites come back pi-encoded; half-turn operands are handled via
    the matrix product.  Never returns NaN for valid inputs.

    >>> compose([1.0, 0, 0], [0, 1.0, 0]).tolist()
    [1.0, 1.0, -1.0]
    """
    a = _as_vec3(r, "r")
    b = _as_vec3(s, "s")
    a, b = np.broadcast_arrays(a, b)
    shape = a.shape
    ra = a.reshape(-1, 3)
    sb = b.reshape(-1, 3)
    out = np.empty_like(ra, dtype=float)

    matrix_route = _pi_mask(ra) | _pi_mask(sb)
    fin = ~matrix_route
    if fin.any():
        num, den, singular, degenerate = _compose_scaled(ra[fin], sb[fin])
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            vals = num / den[..., None]
        sub = np.empty_like(vals)
        plain = ~singular
        sub[plain] = vals[plain]
        encode = singular & ~degenerate
        if encode.any():
            sub[encode] = pi_encode(num[encode])
        if degenerate.any():
            # Inverse half-turn pairs cancel the numerator too; matrices
            # resolve them exactly.
            fin_idx = np.flatnonzero(fin)
            matrix_route[fin_idx[degenerate]] = True
        out[fin] = sub
    if matrix_route.any():
        out[matrix_route] = _compose_via_matrices(ra[matrix_route], sb[matrix_route])
    return out.reshape(shape)


def compose_sequence(vectors) -> np.ndarray:
    """Left fold of :func:`compose` over a non-empty sequence.

    ``compose_sequence([g2, g1, g0])`` encodes "apply g0, then g1, then
    g2" on column vectors.  An empty sequence raises
    :class:`InvalidInputError`.
    """
    arr = _as_vec3(np.atleast_2d(vectors), "vectors")
    if arr.ndim != 2:
        raise InvalidInputError(
            f"vectors must be a sequence of 3-vectors, got shape {arr.shape}"
        )
    if arr.shape[0] == 0:
        raise InvalidInputError("cannot compose an empty sequence")
    acc = arr[0]
    for nxt in arr[1:]:
        acc = compose(acc, nxt)
    return np.array(acc, dtype=float)
