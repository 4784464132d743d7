"""Shared helpers for the test suite: seeded random draw utilities."""

import random

from magicdist.bloch import BlochVector, SingleQubitDensity, bloch_to_density


def random_bloch_in_ball(rng: random.Random) -> BlochVector:
    """Uniform-ish Bloch vector with norm <= 1 (rejection from the cube)."""
    while True:
        x, y, z = (rng.uniform(-1.0, 1.0) for _ in range(3))
        if x * x + y * y + z * z <= 1.0:
            return BlochVector(x, y, z)


def random_density(rng: random.Random) -> SingleQubitDensity:
    """A random physical density matrix, generically with complex off-diagonals."""
    return bloch_to_density(random_bloch_in_ball(rng))


def random_pure_direction(rng: random.Random) -> BlochVector:
    """A random point on the Bloch sphere (Gaussian direction, normalized)."""
    while True:
        x, y, z = (rng.gauss(0.0, 1.0) for _ in range(3))
        norm = (x * x + y * y + z * z) ** 0.5
        if norm > 1e-6:
            return BlochVector(x / norm, y / norm, z / norm)
