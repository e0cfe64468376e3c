"""Ground truth: brute-force ML decoding and the search-complexity bound.

The brute-force decoder enumerates every message, encodes it and scores
the codeword with the additive leaf metric, which equals the SC path
metric of the corresponding full input path.  ``enumerate_v_set`` counts
the partial input sequences whose path metric does not exceed the ML
leaf metric; by metric monotonicity that count lower-bounds the node
visits of any ordered search that certifies the ML decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codes import CodeSpec
from .engine import MetricMode, SCState, codeword_metric_batch
from .scos import DecodeResult
from .transform import encode_batch

__all__ = ["VSetReport", "ml_decode_bruteforce", "enumerate_v_set", "lemma1_check"]

_ENUM_GUARD = 20  # 2^K codewords; keep brute force honest and bounded


@dataclass(frozen=True)
class VSetReport:
    """Size of the bounded-metric prefix set, with truncation bookkeeping."""

    size: int
    truncated: bool
    cap: int


def _all_messages(K: int) -> np.ndarray:
    ints = np.arange(1 << K, dtype=np.int64)[:, None]
    return ((ints >> np.arange(K - 1, -1, -1)[None, :]) & 1).astype(np.uint8)


def ml_decode_bruteforce(spec: CodeSpec, channel_llrs, mode=MetricMode.EXACT) -> DecodeResult:
    """Exhaustive ML decision over every payload (2^payload_len <= 2^20).

    Codewords are scored with the additive leaf metric; the winning path
    metric is then recomputed through the SC recursion so it is bitwise
    comparable with search-decoder metrics.  Ties break toward the
    lexicographically smallest message.
    """
    if spec.payload_len > _ENUM_GUARD:
        raise ValueError(
            f"payload length {spec.payload_len} too large for enumeration (limit {_ENUM_GUARD})"
        )
    msgs = _all_messages(spec.payload_len)
    best_m = math.inf
    best_u = None
    chunk = 1 << 14
    for lo in range(0, len(msgs), chunk):
        us, cs = encode_batch(spec, msgs[lo : lo + chunk], return_u=True)
        metrics = codeword_metric_batch(cs, channel_llrs, mode)
        k = int(np.argmin(metrics))
        if metrics[k] < best_m:
            best_m = float(metrics[k])
            best_u = us[k]
    state = SCState(spec, channel_llrs, mode)
    state.run(genie_bits=best_u)
    return DecodeResult(
        u=state.u,
        codeword=state.codeword,
        pm=float(state.pm[spec.N]),
        visits=state.visits,  # the verification pass; enumeration itself is free-form
        ml_certified=True,
    )


def enumerate_v_set(spec: CodeSpec, channel_llrs, m_ml: float, mode=MetricMode.EXACT,
                    node_cap: int = 10_000_000) -> VSetReport:
    """Count partial inputs u^i with M(u^i) <= m_ml (boundary included).

    Depth-first over the SC tree: frozen phases follow their dynamic
    rule, information phases branch both ways, and subtrees are cut the
    moment the metric exceeds ``m_ml`` (exhaustive by monotonicity).
    Stops early with ``truncated=True`` once ``node_cap`` prefixes have
    been expanded.
    """
    state = SCState(spec, channel_llrs, mode)
    N = spec.N
    frozen = state._frozen
    size = 0
    expanded = 0
    # stack entry: (phase, next_bit_to_try); frozen phases carry a single try
    stack: list[list[int]] = [[0, 0]]
    while stack:
        phase, b = stack[-1]
        if frozen[phase]:
            ntries = 1
        else:
            ntries = 2
        if b >= ntries:
            stack.pop()
            state.step_back(phase)
            continue
        stack[-1][1] += 1
        if expanded >= node_cap:
            return VSetReport(size=size, truncated=True, cap=node_cap)
        expanded += 1
        state.step_back(phase)
        if frozen[phase]:
            state.run(start=phase, budget=1)
        else:
            state.run(start=phase, pin_phase=phase, pin_value=b, budget=1)
        if state.pm[phase + 1] <= m_ml:
            size += 1
            if phase + 1 < N:
                stack.append([phase + 1, 0])
    return VSetReport(size=size, truncated=False, cap=node_cap)


def lemma1_check(visits: int, report: VSetReport) -> bool:
    """Per-frame complexity bound: certified-ML visits >= |V|."""
    if report.truncated:
        raise ValueError("V-set enumeration was truncated; bound not comparable")
    return visits >= report.size
