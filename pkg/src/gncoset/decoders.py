"""Reference decoders: SCL, SCF, DSCF and an SC-Fano sequential search.

These are the baselines the ordered search is measured against.  All of
them run on the same rollback-capable SC engine and report node visits
as processed phases (re-processing included).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush

import numpy as np

from .codes import CodeSpec, ReliabilityProfile, crc_check
from .engine import MetricMode, SCState, pm_update, sc_decode
from .scos import DecodeResult

__all__ = [
    "FlipMetricParams",
    "FanoParams",
    "scl_decode",
    "scf_decode",
    "dscf_metric",
    "dscf_decode",
    "sc_fano_decode",
]


@dataclass(frozen=True)
class FlipMetricParams:
    """Knobs for the flip decoders: metric scale, attempts, set growth."""

    alpha: float = 0.3
    max_attempts: int = 8
    max_flips: int = 3

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if self.max_attempts < 0:
            raise ValueError("max_attempts must be non-negative")


@dataclass(frozen=True)
class FanoParams:
    """Threshold step and visit budget of the Fano search."""

    delta: float = 1.0
    chi_max: float = math.inf

    def __post_init__(self):
        if self.delta <= 0.0:
            raise ValueError("delta must be positive")


def _result(state: SCState, visits: int, crc_ok=None) -> DecodeResult:
    return DecodeResult(
        u=state.u,
        codeword=state.codeword,
        pm=float(state.pm[state.N]),
        visits=visits,
        ml_certified=False,
        crc_ok=crc_ok,
    )


def scl_decode(spec: CodeSpec, channel_llrs, list_size: int = 8,
               mode=MetricMode.EXACT) -> DecodeResult:
    """Breadth-first successive cancellation list decoding.

    Keeps the ``list_size`` lowest-metric paths per phase (ties broken
    stably by path id) and returns the lowest-metric leaf, preferring
    CRC-passing leaves when the spec carries a CRC.
    """
    if list_size < 1:
        raise ValueError("list size must be at least 1")
    mode = MetricMode.of(mode)
    N = spec.N
    root = SCState(spec, channel_llrs, mode)
    paths: list[tuple[int, SCState]] = [(0, root)]
    next_id = 1
    visits = 0
    for phase in range(N):
        visits += len(paths)
        if root._frozen[phase]:
            for _, st in paths:
                st.run(start=phase, budget=1)
            continue
        candidates = []  # (pm_child, parent_pos, path_id, bit)
        for pos, (pid, st) in enumerate(paths):
            ell = st.peek_llr()
            for bit in (0, 1):
                candidates.append((pm_update(st.pm[phase], ell, bit, mode), pid, pos, bit))
        candidates.sort(key=lambda c: (c[0], c[1], c[3]))
        survivors = candidates[:list_size]
        used: set[int] = set()
        new_paths = []
        for _, _, pos, bit in survivors:
            _, st = paths[pos]
            if pos in used:
                st = st.clone()
            used.add(pos)
            st.run(start=phase, pin_phase=phase, pin_value=bit, budget=1)
            new_paths.append((next_id, st))
            next_id += 1
        paths = new_paths
    paths.sort(key=lambda p: (p[1].pm[N], p[0]))
    if spec.crc is not None:
        for _, st in paths:
            if crc_check(st.message(), spec.crc):
                return _result(st, visits, crc_ok=True)
        return _result(paths[0][1], visits, crc_ok=False)
    return _result(paths[0][1], visits)


def scf_decode(spec: CodeSpec, channel_llrs, params: FlipMetricParams = FlipMetricParams(),
               mode=MetricMode.EXACT) -> DecodeResult:
    """SC flip: retry single flips at the least reliable info decisions.

    Requires a CRC to detect success.  Attempt t flips the t-th smallest
    |soft message| of the initial pass and re-decodes from there.
    """
    if spec.crc is None:
        raise ValueError("SC flip decoding needs an outer CRC")
    mode = MetricMode.of(mode)
    initial = sc_decode(spec, channel_llrs, mode)
    visits = initial.visits
    if crc_check(initial.message(), spec.crc):
        return _result(initial, visits, crc_ok=True)
    ells = initial.leaf_llrs()
    info0 = initial._info_idx
    order = info0[np.argsort(np.abs(ells[info0]), kind="stable")]
    u0 = initial.u
    for ph0 in order[: params.max_attempts]:
        trial = initial.clone()
        trial.run(start=int(ph0), pin_phase=int(ph0), pin_value=int(u0[ph0]) ^ 1)
        visits += trial.phase - int(ph0)
        if crc_check(trial.message(), spec.crc):
            return _result(trial, visits, crc_ok=True)
    return _result(initial, visits, crc_ok=False)


def dscf_metric(flip_set, leaf_llrs, info_set, alpha: float) -> float:
    """Reliability metric of a candidate flip set (lower = more likely).

    Sum of |soft message| over the set plus a length-alpha bias summed
    over every information phase up to the largest flip index.
    """
    flip_set = sorted(flip_set)
    i_max = flip_set[-1]
    ells = np.asarray(leaf_llrs)
    q = float(np.sum(np.abs(ells[[i - 1 for i in flip_set]])))
    js = [j for j in info_set if j <= i_max]
    a = np.abs(ells[[j - 1 for j in js]])
    q += float(np.sum(np.log1p(np.exp(-alpha * a))) / alpha)
    return q


def dscf_decode(spec: CodeSpec, channel_llrs, params: FlipMetricParams = FlipMetricParams(),
                mode=MetricMode.EXACT) -> DecodeResult:
    """Dynamic SC flip: progressively grown multi-bit flip sets.

    Candidate sets are visited in ascending metric order; each attempted
    set spawns supersets with one later flip, scored from that attempt's
    own soft messages.  Stops at the first CRC pass or after
    ``max_attempts`` re-decodes.
    """
    if spec.crc is None:
        raise ValueError("dynamic SC flip decoding needs an outer CRC")
    mode = MetricMode.of(mode)
    initial = sc_decode(spec, channel_llrs, mode)
    visits = initial.visits
    if crc_check(initial.message(), spec.crc):
        return _result(initial, visits, crc_ok=True)
    heap: list[tuple[float, int, tuple[int, ...]]] = []
    counter = 0
    ells0 = initial.leaf_llrs()
    for i in spec.info_set:
        q = dscf_metric((i,), ells0, spec.info_set, params.alpha)
        heappush(heap, (q, counter, (i,)))
        counter += 1
    flip_mask = np.zeros(spec.N, dtype=np.uint8)
    attempts = 0
    while heap and attempts < params.max_attempts:
        _, _, flips = heappop(heap)
        attempts += 1
        trial = initial.clone()
        flip_mask[:] = 0
        for i in flips:
            flip_mask[i - 1] = 1
        start = flips[0] - 1
        trial.run(start=start, flip_mask=flip_mask)
        visits += trial.phase - start
        if crc_check(trial.message(), spec.crc):
            return _result(trial, visits, crc_ok=True)
        if len(flips) < params.max_flips:
            ells = trial.leaf_llrs()
            for j in spec.info_set:
                if j > flips[-1]:
                    q = dscf_metric(flips + (j,), ells, spec.info_set, params.alpha)
                    heappush(heap, (q, counter, flips + (j,)))
                    counter += 1
    return _result(initial, visits, crc_ok=False)


def sc_fano_decode(spec: CodeSpec, channel_llrs, params: FanoParams = FanoParams(),
                   profile: ReliabilityProfile | None = None,
                   mode=MetricMode.EXACT) -> DecodeResult:
    """Depth-first Fano search over the SC tree using the negated score.

    Moves forward while the child's metric clears a running threshold,
    tightens the threshold on first visits, backs up or lowers it by
    delta when stuck.  Back moves are disallowed once the remaining
    visit budget exactly covers a straight descent, so the budget always
    suffices to return a complete leaf and chi_max = N degenerates to
    plain SC.
    """
    mode = MetricMode.of(mode)
    N = spec.N
    chi_max = params.chi_max
    if chi_max < N:
        raise ValueError(f"chi_max must be at least N={N}")
    delta = params.delta
    st = SCState(spec, channel_llrs, mode, profile)
    clog = st.clog
    mu = np.zeros(N + 1)
    rank = np.zeros(N + 1, dtype=np.int64)  # child currently taken at each node
    T = 0.0
    while st.phase < N:
        d = st.phase
        remaining = chi_max - st.visits
        ell = st.peek_llr()
        if st._frozen[d]:
            bit = st.frozen_bit(d)
            children = [(-(pm_update(st.pm[d], ell, bit, mode) + clog[d + 1]), bit)]
        else:
            sc_bit = 0 if ell >= 0.0 else 1
            children = [
                (-(pm_update(st.pm[d], ell, sc_bit, mode) + clog[d + 1]), sc_bit),
                (-(pm_update(st.pm[d], ell, sc_bit ^ 1, mode) + clog[d + 1]), sc_bit ^ 1),
            ]
        k = rank[d]
        must_finish = remaining <= N - d
        if k < len(children) and (children[k][0] >= T or must_finish):
            mu_child, bit = children[k]
            st.run(start=d, pin_phase=d, pin_value=bit, budget=1)
            if not must_finish and mu[d] < T + delta:
                while mu_child >= T + delta:  # first visit: tighten
                    T += delta
            mu[d + 1] = mu_child
            rank[d + 1] = 0
        elif d > 0 and remaining >= N - d + 1 and mu[d - 1] >= T:
            st.step_back(d - 1)
            rank[d - 1] += 1
        else:
            T -= delta
            rank[d] = 0
    return _result(st, st.visits)
