"""Binary-input AWGN channel: BPSK mapping, noise, LLRs, SNR conversion.

Bit 0 maps to +1 so that a positive LLR favors 0, matching the hard
decision rule used by every decoder here.  LLRs are saturated at +-60,
far enough out that exp/log arithmetic cannot overflow while leaving
metrics unchanged at double precision.
"""

from __future__ import annotations

import numpy as np

__all__ = ["LLR_CLAMP", "snr_to_sigma", "transmit", "frame_rng"]

LLR_CLAMP = 60.0


def snr_to_sigma(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation for a BPSK Eb/N0 point at the given code rate."""
    if not 0.0 < rate <= 1.0:
        raise ValueError(f"rate must lie in (0, 1], got {rate}")
    return float((2.0 * rate * 10.0 ** (ebn0_db / 10.0)) ** -0.5)


def frame_rng(master_seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for one frame of one simulation stream.

    Seeded by the (master seed, stream indices...) tuple, so results are a
    pure function of those integers regardless of worker scheduling.
    """
    return np.random.default_rng([int(master_seed), *map(int, stream)])


def transmit(codeword, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """BPSK-modulate, add Gaussian noise, return saturated channel LLRs."""
    c = np.asarray(codeword)
    x = 1.0 - 2.0 * c
    if sigma <= 0.0:
        return np.clip(x * LLR_CLAMP, -LLR_CLAMP, LLR_CLAMP)
    y = x + sigma * rng.standard_normal(len(c))
    llr = 2.0 * y / (sigma * sigma)
    return np.clip(llr, -LLR_CLAMP, LLR_CLAMP)
