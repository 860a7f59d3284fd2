"""Shared oracles for the test suite.

Everything here is independent of the library internals: rotation
matrices are built from explicit trigonometry, so agreement between
these oracles and the rational code paths is meaningful evidence.
"""

import numpy as np


def matrix_about(axis, angle: float) -> np.ndarray:
    """Trigonometric rotation matrix for the library's convention.

    ``matrix_about(u, a)`` is the matrix the library assigns to the
    Gibbs vector ``tan(a/2) * u``.  Column vectors transform as
    ``v -> U v`` and the probe
    ``matrix_about((1,0,0), pi/2) @ (0,1,0) == (0,0,-1)`` holds.
    """
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    x, y, z = u
    c, s = np.cos(angle), np.sin(angle)
    cross = np.array([[0.0, z, -y], [-z, 0.0, x], [y, -x, 0.0]])
    return c * np.eye(3) + (1.0 - c) * np.outer(u, u) + s * cross


def random_units(rng, n: int) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_gibbs(rng, n: int, lo: float = 1e-6, hi: float = 1e3) -> np.ndarray:
    """Gibbs vectors with |r| log-uniform in [lo, hi]."""
    mags = 10.0 ** rng.uniform(np.log10(lo), np.log10(hi), size=(n, 1))
    return random_units(rng, n) * mags


def rotation_error(u: np.ndarray, v: np.ndarray) -> float:
    """Largest entry difference between two stacks of matrices."""
    return float(np.abs(np.asarray(u) - np.asarray(v)).max())


def component_error(got: np.ndarray, want: np.ndarray) -> float:
    """Per-component error relative to each vector's largest component.

    The natural round-trip metric for Gibbs vectors: components passing
    through zero carry no relative scale of their own, so each row is
    judged against its own magnitude.
    """
    got = np.atleast_2d(got)
    want = np.atleast_2d(want)
    scale = np.abs(want).max(axis=-1)
    return float((np.abs(got - want).max(axis=-1) / scale).max())
