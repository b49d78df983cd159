"""
Independent reference computations used by the tests.
"""

import itertools

import numpy as np


def brute_pfaffian(a) -> complex:
    """Pfaffian by expansion along the first row."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0j
    total = 0j
    for j in range(1, n):
        keep = [i for i in range(n) if i not in (0, j)]
        minor = a[np.ix_(keep, keep)]
        total += (-1) ** (j + 1) * a[0, j] * brute_pfaffian(minor)
    return total


def random_skew(rng, n: int) -> np.ndarray:
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x - x.T


def d_vector(kx, ky, m: float) -> np.ndarray:
    return np.stack([np.sin(kx), np.sin(ky), m + np.cos(kx) + np.cos(ky)], axis=-1)


def _solid_angle(a, b, c) -> float:
    """Signed solid angle of the spherical triangle a, b, c."""
    numerator = np.dot(a, np.cross(b, c))
    denominator = 1.0 + np.dot(a, b) + np.dot(b, c) + np.dot(c, a)
    return 2.0 * np.arctan2(numerator, denominator)


def d_hat_degree(m: float, n: int = 48) -> int:
    """Degree of k -> d(k)/|d(k)| from signed triangle solid angles."""
    axis = 2 * np.pi * np.arange(n) / n
    kx, ky = np.meshgrid(axis, axis, indexing="ij")
    d = d_vector(kx, ky, m)
    d /= np.linalg.norm(d, axis=-1, keepdims=True)
    total = 0.0
    for i, j in itertools.product(range(n), repeat=2):
        p00 = d[i, j]
        p10 = d[(i + 1) % n, j]
        p11 = d[(i + 1) % n, (j + 1) % n]
        p01 = d[i, (j + 1) % n]
        total += _solid_angle(p00, p10, p11) + _solid_angle(p00, p11, p01)
    return int(round(total / (4 * np.pi)))


def all_signs(count: int):
    """Every +-1 assignment of the given length."""
    return [list(s) for s in itertools.product((1, -1), repeat=count)]
