"""Deterministic 64-bit generator and random test fixtures.

SplitMix64 update rule (also written out in the README so oracles can be
reproduced in any language):

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2^64
    z = (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2^64
    z = z XOR (z >> 31)

``uniform`` maps z to [0, 1) as z / 2^64; ``normal`` uses the Box-Muller
transform on two consecutive uniforms.
"""

from __future__ import annotations

import math

import numpy as np

from .grid import Grid1D, PhaseGrid, SampledSignal, norm

__all__ = ["SplitMix64", "gaussian_mixture", "random_symbol_mixture", "random_signal"]

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * (self.next_u64() / 2.0**64)

    def normal(self) -> float:
        u1 = max(self.uniform(), 1e-300)
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def cnormal(self) -> complex:
        return complex(self.normal(), self.normal())


def gaussian_mixture(grid: Grid1D, gen: SplitMix64, ncomp: int = 2,
                     center: float = None, freq: float = None,
                     width_lo: float = None, width_hi: float = None,
                     unit_norm: bool = True) -> SampledSignal:
    """Random complex Gaussian mixture, concentrated well inside the window
    and below half the Nyquist band so all GRT identities stay alias-free.

    Unset parameters adapt to the grid: with window halfwidth T = n dx / 2
    and reflection half-band H = 1/(4 dx), centers stay within T/4, linear
    modulations within H/4, and the width sits near sqrt(T/H), balancing
    time-window truncation against half-band aliasing.
    """
    T = grid.period / 2.0
    H = 1.0 / (4.0 * grid.dx)
    if center is None:
        center = min(1.5, 0.25 * T)
    if freq is None:
        freq = min(1.5, 0.25 * H)
    scale = max(np.sqrt(T / H), 0.75)
    if width_lo is None:
        width_lo = 0.8 * scale
    if width_hi is None:
        width_hi = 1.25 * scale
    t = grid.points
    out = np.zeros(grid.n, dtype=complex)
    for _ in range(ncomp):
        c = gen.uniform(-center, center)
        om = gen.uniform(-freq, freq)
        wd = gen.uniform(width_lo, width_hi)
        out += gen.cnormal() * np.exp(-np.pi * ((t - c) / wd) ** 2 + 2j * np.pi * om * t)
    sig = SampledSignal(grid, out)
    if unit_norm:
        sig = SampledSignal(grid, sig.samples / norm(sig))
    return sig


def random_symbol_mixture(gen: SplitMix64, ncomp: int = 2,
                          center: float = 1.0, width_lo: float = 0.9,
                          width_hi: float = 1.4):
    """Parameters of a random phase-space Gaussian mixture, plus an evaluator
    usable on any coordinate arrays (so one draw can be sampled on several
    grids)."""
    params = []
    for _ in range(ncomp):
        params.append((gen.uniform(-center, center), gen.uniform(-center, center),
                       gen.uniform(width_lo, width_hi), gen.cnormal()))

    def evaluate(x, w):
        X = np.asarray(x, dtype=float)
        W = np.asarray(w, dtype=float)
        out = np.zeros(np.broadcast(X, W).shape, dtype=complex)
        for cx, cw, wd, amp in params:
            out = out + amp * np.exp(-np.pi * (((X - cx) ** 2 + (W - cw) ** 2) / wd**2))
        return out

    return evaluate


def random_signal(grid: Grid1D, gen: SplitMix64) -> SampledSignal:
    """Unstructured complex white noise on the grid (for oracle tests)."""
    vals = np.array([gen.cnormal() for _ in range(grid.n)])
    return SampledSignal(grid, vals)
