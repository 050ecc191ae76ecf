"""Reproducible random streams keyed by (seed, label)."""

from __future__ import annotations

import zlib

import numpy as np


def stream(seed: int, label: str = "") -> np.random.Generator:
    """PCG64 generator whose state depends only on seed and label."""
    key = zlib.crc32(label.encode("utf-8"))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed) & (2 ** 64 - 1), key])))


def annulus(rng: np.random.Generator, lo: float = 0.3, hi: float = 2.0, phase: tuple | None = None) -> complex:
    """Complex number with modulus uniform in [lo, hi] and uniform phase."""
    rho = rng.uniform(lo, hi)
    th = rng.uniform(*(phase or (-np.pi, np.pi)))
    return complex(rho * np.cos(th), rho * np.sin(th))
