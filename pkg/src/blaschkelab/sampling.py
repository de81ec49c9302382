"""Seeded random draws used by harnesses and tests.

Everything is driven by a numpy Generator so that a single 64-bit seed
fixes every draw exactly.
"""

from __future__ import annotations

import numpy as np

from .blaschke import BlaschkeProduct, blaschke_product


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_points_in_disk(rng: np.random.Generator, n: int,
                          rmax: float = 0.8) -> np.ndarray:
    """Uniform draws from the disk of radius rmax."""
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def random_blaschke(rng: np.random.Generator, degree: int, rmax: float = 0.8,
                    min_pairwise: float = 0.0) -> BlaschkeProduct:
    """Random finite Blaschke product with simple zeros.

    ``min_pairwise`` enforces a minimal pairwise Euclidean distance
    (rejection sampling), keeping the omitted-product values away from 0.
    """
    while True:
        pts = random_points_in_disk(rng, degree, rmax)
        if degree < 2 or min_pairwise <= 0.0:
            break
        d = np.abs(pts[:, None] - pts[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() >= min_pairwise:
            break
    return blaschke_product(pts.tolist())


def random_polynomial(rng: np.random.Generator, degree: int) -> np.ndarray:
    """Ascending complex coefficients with standard-normal parts."""
    return rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)


def random_unit_lp(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    """Random complex vector normalized to unit l^p norm."""
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return a / np.sum(np.abs(a) ** p) ** (1.0 / p)
