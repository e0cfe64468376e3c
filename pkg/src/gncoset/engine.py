"""Successive cancellation engine shared by every decoder.

Implements the LLR recursion with hard decisions, the additive path
metric, the length-aware score, rollback-capable decoder state and
node-visit accounting.  Two metric profiles exist and are always set
jointly:

* ``exact``    - log-domain boxplus check rule, penalty log(1 + e^{-x});
* ``hardened`` - min-sum check rule, penalty max(0, -x).

The hardened profile reproduces the worked four-bit search example
bit-exactly; exact is the default for experiments.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from . import _kernels
from ._kernels import NO_PIN, STATUS_BUDGET, STATUS_LEAF, STATUS_PRUNED
from .channel import transmit
from .codes import CodeSpec, ReliabilityProfile
from .transform import encode_batch

__all__ = [
    "MetricMode",
    "SCState",
    "sc_decode",
    "resume_from",
    "f_combine",
    "g_combine",
    "pm_update",
    "score_of",
    "codeword_metric",
    "estimate_first_error_probs",
    "STATUS_LEAF",
    "STATUS_PRUNED",
    "STATUS_BUDGET",
]


class MetricMode(Enum):
    """Joint (check rule, penalty rule) profile."""

    EXACT = "exact"
    HARDENED = "hardened"

    @property
    def hardened(self) -> bool:
        return self is MetricMode.HARDENED

    @classmethod
    def of(cls, mode) -> "MetricMode":
        if isinstance(mode, cls):
            return mode
        return cls(str(mode).lower())


def f_combine(a: float, b: float, mode=MetricMode.EXACT) -> float:
    """Check-node LLR combination (boxplus, or min-sum when hardened)."""
    if MetricMode.of(mode).hardened:
        return _kernels._f_minsum(float(a), float(b))
    return _kernels._f_exact(float(a), float(b))


def g_combine(a: float, b: float, u: int) -> float:
    """Variable-node LLR combination: b + (1 - 2u) a."""
    return float(b) + (1.0 - 2.0 * int(u)) * float(a)


def pm_update(m: float, ell: float, u: int, mode=MetricMode.EXACT) -> float:
    """One-step path metric extension; applies at frozen phases too."""
    return float(m) + _kernels._penalty(float(ell), int(u), MetricMode.of(mode).hardened)


def score_of(m: float, phase: int, profile: ReliabilityProfile) -> float:
    """Length-aware score: m plus the cumulative log 'no first error yet'."""
    return float(m) + float(profile.cum_log_no_error()[phase])


_SPEC_CACHE: dict[tuple, tuple] = {}


def _spec_arrays(spec: CodeSpec):
    key = spec.cache_key()
    hit = _SPEC_CACHE.get(key)
    if hit is not None:
        return hit
    N = spec.N
    frozen_mask = np.ones(N, dtype=np.uint8)
    frozen_mask[[i - 1 for i in spec.info_set]] = 0
    counts = np.zeros(N, dtype=np.int64)
    for i, row in spec.frozen_rows.items():
        counts[i - 1] = len(row)
    row_ptr = np.zeros(N + 1, dtype=np.int64)
    np.cumsum(counts, out=row_ptr[1:])
    row_idx = np.zeros(int(row_ptr[-1]), dtype=np.int64)
    for i, row in spec.frozen_rows.items():
        row_idx[row_ptr[i - 1] : row_ptr[i]] = [j - 1 for j in row]
    info_idx = np.array([i - 1 for i in spec.info_set], dtype=np.int64)
    out = (frozen_mask, row_ptr, row_idx, info_idx)
    _SPEC_CACHE[key] = out
    return out


class SCState:
    """One rollback-capable decode path.

    Per-level LLR and partial-sum arrays persist along the current path,
    so truncating to an earlier phase and resuming costs only the span
    that is actually re-decoded.  ``visits`` counts processed phases,
    including re-processing.
    """

    __slots__ = (
        "spec", "mode", "n", "N", "llr", "bits", "pm", "flip_pm",
        "clog", "phase", "visits", "_frozen", "_row_ptr", "_row_idx", "_info_idx",
        "_noflips",
    )

    def __init__(self, spec: CodeSpec, channel_llrs, mode=MetricMode.EXACT,
                 profile: ReliabilityProfile | None = None):
        self.spec = spec
        self.mode = MetricMode.of(mode)
        self.n = spec.n
        self.N = spec.N
        channel_llrs = np.asarray(channel_llrs, dtype=np.float64)
        if len(channel_llrs) != self.N:
            raise ValueError(f"expected {self.N} channel LLRs, got {len(channel_llrs)}")
        self.llr = np.zeros((self.n + 1, self.N))
        self.llr[self.n] = channel_llrs
        self.bits = np.zeros((self.n + 1, self.N), dtype=np.int8)
        self.pm = np.zeros(self.N + 1)
        self.flip_pm = np.full(self.N, np.nan)
        if profile is None:
            self.clog = np.zeros(self.N + 1)
        else:
            if len(profile.p) != self.N:
                raise ValueError("profile length does not match the code")
            self.clog = profile.cum_log_no_error()
        self.phase = 0
        self.visits = 0
        self._frozen, self._row_ptr, self._row_idx, self._info_idx = _spec_arrays(spec)
        self._noflips = np.zeros(self.N, dtype=np.uint8)

    # -- path state ---------------------------------------------------

    @property
    def m(self) -> float:
        """Path metric of the current (partial) path."""
        return float(self.pm[self.phase])

    @property
    def score(self) -> float:
        return float(self.pm[self.phase] + self.clog[self.phase])

    @property
    def u(self) -> np.ndarray:
        return self.bits[0].copy()

    @property
    def codeword(self) -> np.ndarray:
        if self.phase != self.N:
            raise ValueError("path has not reached a leaf")
        return self.bits[self.n].astype(np.uint8)

    def message(self) -> np.ndarray:
        """Information bits of the current path (CRC bits included)."""
        return self.bits[0][self._info_idx].astype(np.uint8)

    def flip_scores(self) -> np.ndarray:
        """Score of each recorded one-step flipped extension."""
        return self.flip_pm + self.clog[1:]

    def leaf_llrs(self) -> np.ndarray:
        """Per-phase soft messages seen along the current path."""
        return self.llr[0].copy()

    def reset(self, channel_llrs) -> "SCState":
        """Reuse this state for a fresh frame (avoids re-allocation)."""
        channel_llrs = np.asarray(channel_llrs, dtype=np.float64)
        if len(channel_llrs) != self.N:
            raise ValueError(f"expected {self.N} channel LLRs, got {len(channel_llrs)}")
        self.llr[self.n] = channel_llrs
        self.pm[0] = 0.0
        self.phase = 0
        self.visits = 0
        return self

    def clone(self) -> "SCState":
        other = object.__new__(SCState)
        other.spec = self.spec
        other.mode = self.mode
        other.n = self.n
        other.N = self.N
        other.llr = self.llr.copy()
        other.bits = self.bits.copy()
        other.pm = self.pm.copy()
        other.flip_pm = self.flip_pm.copy()
        other.clog = self.clog
        other.phase = self.phase
        other.visits = self.visits
        other._frozen = self._frozen
        other._row_ptr = self._row_ptr
        other._row_idx = self._row_idx
        other._info_idx = self._info_idx
        other._noflips = self._noflips
        return other

    # -- moves ----------------------------------------------------------

    def run(self, start: int | None = None, flip_mask: np.ndarray | None = None,
            pin_phase: int = NO_PIN, pin_value: int = 0,
            genie_bits: np.ndarray | None = None,
            prune_at: float = math.inf, budget: int | None = None) -> int:
        """Advance from 0-based phase ``start`` (default: the frontier).

        Decisions follow SC unless flipped via ``flip_mask``, pinned at
        one phase, or (genie mode) forced wholesale to ``genie_bits``.
        Stops at the leaf, when the path metric reaches ``prune_at``, or
        when ``budget`` phases have been processed; returns the kernel
        status.  Starting before the frontier truncates the path there.
        """
        if start is None:
            start = self.phase
        if not 0 <= start <= self.phase:
            raise ValueError(f"cannot resume at phase {start} with frontier {self.phase}")
        genie = genie_bits is not None
        if genie:
            genie_bits = np.ascontiguousarray(genie_bits, dtype=np.uint8)
        if flip_mask is not None:
            flip_mask = np.ascontiguousarray(flip_mask, dtype=np.uint8)
        last, status, done = _kernels.run_span(
            self.llr, self.bits, self.pm, self.flip_pm,
            self.n, self._frozen, self._row_ptr, self._row_idx,
            start, self.mode.hardened,
            self._noflips if flip_mask is None else flip_mask,
            pin_phase, pin_value,
            genie, genie_bits if genie else self._noflips,
            prune_at, self.N if budget is None else budget,
        )
        self.phase = last + 1
        self.visits += done
        return status

    def peek_llr(self) -> float:
        """Soft message at the frontier phase, without committing a bit."""
        if self.phase >= self.N:
            raise ValueError("path is already complete")
        return float(_kernels.leaf_llr(self.llr, self.bits, self.n,
                                       self.phase, self.mode.hardened))

    def frozen_bit(self, phase: int) -> int:
        """Dynamic frozen value at a 0-based phase, given the decided prefix."""
        val = 0
        for t in range(self._row_ptr[phase], self._row_ptr[phase + 1]):
            val ^= int(self.bits[0, self._row_idx[t]])
        return val

    def step_back(self, to_phase: int) -> None:
        """Truncate the path so that ``to_phase`` phases remain decided."""
        if not 0 <= to_phase <= self.phase:
            raise ValueError(f"cannot truncate to {to_phase} from {self.phase}")
        self.phase = to_phase


def sc_decode(spec: CodeSpec, channel_llrs, mode=MetricMode.EXACT,
              profile: ReliabilityProfile | None = None) -> SCState:
    """Plain SC decoding; returns the completed path (visits = N).

    The state records, at every phase, the metric of the one-step flipped
    alternative; scores follow via ``flip_scores``.
    """
    state = SCState(spec, channel_llrs, mode, profile)
    state.run()
    return state


def resume_from(state: SCState, j: int, forced_bit: int,
                prune_at: float = math.inf, budget: int | None = None) -> int:
    """Truncate to phase j-1 (1-based j), force u_j, continue SC.

    ``j`` must be an information phase at or before the current frontier.
    Returns the kernel status; each re-processed phase counts one visit.
    """
    if not 1 <= j <= state.phase:
        raise ValueError(f"resume phase {j} out of range 1..{state.phase}")
    if state._frozen[j - 1]:
        raise ValueError(f"phase {j} is frozen")
    return state.run(start=j - 1, pin_phase=j - 1, pin_value=int(forced_bit),
                     prune_at=prune_at, budget=budget)


def codeword_metric(codeword, channel_llrs, mode=MetricMode.EXACT) -> float:
    """Leaf metric computed directly from a codeword.

    Equals the SC path metric of the corresponding full input path (the
    additive per-channel-bit form of the posterior, up to a constant).
    """
    c = np.asarray(codeword, dtype=np.float64)
    x = (1.0 - 2.0 * c) * np.asarray(channel_llrs, dtype=np.float64)
    if MetricMode.of(mode).hardened:
        return float(np.maximum(0.0, -x).sum())
    return float(np.logaddexp(0.0, -x).sum())


def codeword_metric_batch(codewords, channel_llrs, mode=MetricMode.EXACT) -> np.ndarray:
    x = (1.0 - 2.0 * np.asarray(codewords, dtype=np.float64)) * np.asarray(channel_llrs)
    if MetricMode.of(mode).hardened:
        return np.maximum(0.0, -x).sum(axis=-1)
    return np.logaddexp(0.0, -x).sum(axis=-1)


def estimate_first_error_probs(spec: CodeSpec, sigma: float, trials: int = 100_000,
                               seed: int = 0) -> ReliabilityProfile:
    """Monte Carlo estimate of the first-SC-error probabilities p_j.

    Genie-aided: every decision is forced to the true bit, and the frame
    contributes one count at the first information phase whose hard
    decision would have disagreed.  Frozen phases get 0; information
    phases are clamped to [1e-9, 0.5].
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    N = spec.N
    info_idx = np.array([i - 1 for i in spec.info_set], dtype=np.int64)
    counts = np.zeros(N, dtype=np.int64)
    batch = 1024
    left = trials
    while left > 0:
        b = min(batch, left)
        payloads = rng.integers(0, 2, size=(b, spec.payload_len), dtype=np.uint8)
        us, cs = encode_batch(spec, payloads, return_u=True)
        for t in range(b):
            llr = transmit(cs[t], sigma, rng)
            st = SCState(spec, llr)
            st.run(genie_bits=us[t])
            dec = (st.llr[0][info_idx] < 0.0).astype(np.uint8)
            bad = np.nonzero(dec != us[t][info_idx])[0]
            if len(bad):
                counts[info_idx[bad[0]]] += 1
        left -= b
    p = np.zeros(N)
    p[info_idx] = np.clip(counts[info_idx] / trials, 1e-9, 0.5)
    return ReliabilityProfile(p)
