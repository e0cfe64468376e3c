"""Hot-path successive cancellation kernels.

One decode path is a pair of (n+1, N) arrays: ``llr`` holds the
intermediate LLRs (row n = channel, row 0 = per-phase leaf values, row s
split into blocks of size 2^s) and ``bits`` the matching partial sums
(row 0 = u decisions, row n ends up as the codeword).  Because every
block at level s occupies its own column range, values computed for a
path prefix stay valid after the phase pointer is rolled back, which is
what makes cheap resume-from-phase-j work.

``run_span`` advances one path over a phase range with optional forced
or flipped decisions, path-metric pruning and a visit budget.  It is the
single entry point shared by plain SC, SCOS branch re-decoding, flip
decoders, the Fano search, the genie pass and the V-set enumeration.

Compiled with numba when available; the same source runs (slowly) as
plain Python otherwise.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


STATUS_LEAF = 0
STATUS_PRUNED = 1
STATUS_BUDGET = 2

NO_PIN = -1


@njit(cache=True)
def _f_exact(a: float, b: float) -> float:
    # stable log-domain boxplus
    s = min(abs(a), abs(b))
    if (a < 0.0) != (b < 0.0):
        s = -s
    return s + math.log1p(math.exp(-abs(a + b))) - math.log1p(math.exp(-abs(a - b)))


@njit(cache=True)
def _f_minsum(a: float, b: float) -> float:
    s = min(abs(a), abs(b))
    if (a < 0.0) != (b < 0.0):
        s = -s
    return s


@njit(cache=True)
def _penalty(ell: float, bit: int, hardened: bool) -> float:
    x = ell if bit == 0 else -ell
    if hardened:
        return -x if x < 0.0 else 0.0
    if x < 0.0:
        return -x + math.log1p(math.exp(x))
    return math.log1p(math.exp(-x))


@njit(cache=True)
def leaf_llr(llr: np.ndarray, bits: np.ndarray, n: int, phase: int, hardened: bool) -> float:
    """Recompute the stale levels for ``phase`` and return its leaf LLR."""
    if phase == 0:
        for s in range(n - 1, -1, -1):
            half = 1 << s
            for k in range(half):
                a = llr[s + 1, k]
                b = llr[s + 1, k + half]
                llr[s, k] = _f_minsum(a, b) if hardened else _f_exact(a, b)
        return llr[0, 0]
    t = 0
    while not (phase >> t) & 1:
        t += 1
    half = 1 << t
    b_idx = phase >> t
    pbase = (b_idx >> 1) * (half << 1)
    out = b_idx * half
    for k in range(half):
        a = llr[t + 1, pbase + k]
        c = llr[t + 1, pbase + half + k]
        u = bits[t, pbase + k]
        llr[t, out + k] = c + a - 2.0 * u * a
    for s in range(t - 1, -1, -1):
        half = 1 << s
        b_idx = phase >> s
        base = b_idx * half
        for k in range(half):
            a = llr[s + 1, base + k]
            c = llr[s + 1, base + half + k]
            llr[s, base + k] = _f_minsum(a, c) if hardened else _f_exact(a, c)
    return llr[0, phase]


@njit(cache=True)
def _push_bit(bits: np.ndarray, phase: int, bit: int) -> None:
    bits[0, phase] = bit
    b_idx = phase
    s = 0
    while b_idx & 1:
        half = 1 << s
        left = (b_idx - 1) * half
        right = b_idx * half
        for k in range(half):
            lo = bits[s, left + k]
            hi = bits[s, right + k]
            bits[s + 1, left + k] = lo ^ hi
            bits[s + 1, left + half + k] = hi
        b_idx >>= 1
        s += 1


@njit(cache=True)
def run_span(
    llr: np.ndarray,
    bits: np.ndarray,
    pm: np.ndarray,
    flip_pm: np.ndarray,
    n: int,
    frozen_mask: np.ndarray,
    row_ptr: np.ndarray,
    row_idx: np.ndarray,
    start: int,
    hardened: bool,
    flip_mask: np.ndarray,
    pin_phase: int,
    pin_value: int,
    genie: bool,
    genie_bits: np.ndarray,
    prune_at: float,
    max_phases: int,
):
    """Run SC from ``start`` to the leaf, a prune, or the visit budget.

    Returns (last_phase_processed, status, phases_processed).
    """
    N = 1 << n
    done = 0
    last = start - 1
    for phase in range(start, N):
        if done >= max_phases:
            return last, STATUS_BUDGET, done
        ell = leaf_llr(llr, bits, n, phase, hardened)
        if frozen_mask[phase]:
            bit = 0
            for t in range(row_ptr[phase], row_ptr[phase + 1]):
                bit ^= bits[0, row_idx[t]]
        elif genie:
            bit = int(genie_bits[phase])
        elif phase == pin_phase:
            bit = pin_value
        else:
            bit = 0 if ell >= 0.0 else 1
            if flip_mask[phase]:
                bit ^= 1
        m = pm[phase] + _penalty(ell, bit, hardened)
        pm[phase + 1] = m
        flip_pm[phase] = pm[phase] + _penalty(ell, bit ^ 1, hardened)
        _push_bit(bits, phase, bit)
        done += 1
        last = phase
        if m >= prune_at:
            return last, STATUS_PRUNED, done
    return last, STATUS_LEAF, done
