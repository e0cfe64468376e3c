"""Kronecker-power transform and encoding for G_N-coset codes.

The transform used throughout this package is the natural in-place
butterfly for G_2^{otimes n} with the pairing (k, k + half) inside each
block.  This is the unique convention under which the decoder consumes
channel LLRs in natural codeword order and reproduces the worked
four-bit search trace bit-exactly, so encoder, decoders and the ML
oracle all share it.  A bit-reversal permutation helper is provided
separately.
"""

from __future__ import annotations

import numpy as np

from .codes import CodeSpec, crc_attach

__all__ = [
    "bit_reversal_perm",
    "polar_transform",
    "expand_message",
    "encode",
    "message_matrix",
    "encode_batch",
]


def bit_reversal_perm(N: int) -> np.ndarray:
    """1-based bit-reversal permutation: entry i is rev(i-1)+1 over n bits."""
    if N < 1 or N & (N - 1):
        raise ValueError(f"N must be a power of two, got {N}")
    n = N.bit_length() - 1
    out = np.empty(N, dtype=np.int64)
    for i in range(N):
        r = 0
        x = i
        for _ in range(n):
            r = (r << 1) | (x & 1)
            x >>= 1
        out[i] = r + 1
    return out


def polar_transform(u) -> np.ndarray:
    """c = u G_N over GF(2) via the O(N log N) butterfly (an involution)."""
    c = np.asarray(u, dtype=np.uint8).copy()
    N = len(c)
    if N < 1 or N & (N - 1):
        raise ValueError(f"length must be a power of two, got {N}")
    half = N >> 1
    while half:
        block = half << 1
        for start in range(0, N, block):
            c[start : start + half] ^= c[start + half : start + block]
        half >>= 1
    return c


def expand_message(spec: CodeSpec, payload) -> np.ndarray:
    """Map payload bits to the full u-domain vector of length N.

    Attaches the CRC when the spec carries one, scatters the message into
    the information positions in index order, then evaluates every dynamic
    frozen rule sequentially.
    """
    payload = np.asarray(payload, dtype=np.uint8)
    if spec.crc is not None:
        if len(payload) != spec.payload_len:
            raise ValueError(f"expected {spec.payload_len} payload bits, got {len(payload)}")
        message = crc_attach(payload, spec.crc)
    else:
        message = payload
    if len(message) != spec.K:
        raise ValueError(f"expected {spec.K} message bits, got {len(message)}")
    u = np.zeros(spec.N, dtype=np.uint8)
    info_idx = np.array(spec.info_set, dtype=np.int64) - 1
    u[info_idx] = message
    for i, row in spec.frozen_rows.items():
        v = 0
        for j in row:
            v ^= int(u[j - 1])
        u[i - 1] = v
    return u


def encode(spec: CodeSpec, payload) -> np.ndarray:
    """Payload bits -> codeword c = u G_N."""
    return polar_transform(expand_message(spec, payload))


_MSG_MATRIX_CACHE: dict[tuple, np.ndarray] = {}


def message_matrix(spec: CodeSpec) -> np.ndarray:
    """(N, K) GF(2) matrix E with u = E m for a message vector m.

    Row i-1 is the unit vector of the message position when i is an
    information index, and the (fully expanded) XOR rule otherwise.
    """
    key = spec.cache_key()
    hit = _MSG_MATRIX_CACHE.get(key)
    if hit is not None:
        return hit
    pos = {i: k for k, i in enumerate(spec.info_set)}
    E = np.zeros((spec.N, spec.K), dtype=np.uint8)
    for i, k in pos.items():
        E[i - 1, k] = 1
    for i, row in spec.frozen_rows.items():
        for j in row:
            E[i - 1, pos[j]] ^= 1
    _MSG_MATRIX_CACHE[key] = E
    return E


def encode_batch(spec: CodeSpec, payloads: np.ndarray, return_u: bool = False):
    """Vectorized encoding of a (B, payload_len) batch of payload rows."""
    payloads = np.asarray(payloads, dtype=np.uint8)
    if spec.crc is not None:
        msgs = np.stack([crc_attach(p, spec.crc) for p in payloads])
    else:
        msgs = payloads
    if msgs.shape[1] != spec.K:
        raise ValueError(f"expected {spec.K} message bits per row, got {msgs.shape[1]}")
    E = message_matrix(spec)
    if spec.K > 255:  # uint8 matmul would wrap mod 256
        us = ((msgs.astype(np.int32) @ E.T.astype(np.int32)) & 1).astype(np.uint8)
    else:
        us = (msgs @ E.T) & 1
    cs = us.copy()
    N = spec.N
    half = N >> 1
    while half:
        block = half << 1
        for start in range(0, N, block):
            cs[:, start : start + half] ^= cs[:, start + half : start + block]
        half >>= 1
    if return_u:
        return us, cs
    return cs
