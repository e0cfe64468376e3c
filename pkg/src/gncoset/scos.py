"""Successive cancellation ordered search: complexity-adaptive ML decoding.

The search keeps one rollback-capable SC path plus an ordered list of
*flipping sets*: sets E of information phases at which the SC decisions
are inverted.  A set enters the list only while the path metric of its
one-step flipped extension is below the best leaf metric found so far,
and entries are visited in ascending score order.  Exploring a set
re-decodes from the first phase where it differs from the previously
explored set, prunes as soon as the branch metric reaches the best leaf
(sound because the path metric never decreases), and spawns supersets
with one extra later flip.  An empty list certifies the maximum
likelihood decision; a visit budget turns this into the bounded-
complexity near-ML variant.
"""

from __future__ import annotations

import math
from bisect import insort
from dataclasses import dataclass, field

import numpy as np

from ._kernels import STATUS_BUDGET, STATUS_LEAF
from .codes import CodeSpec, ReliabilityProfile
from .engine import MetricMode, SCState

__all__ = ["FlipSet", "DecodeResult", "scos_decode", "next_rollback_phase", "list_insert"]


@dataclass(frozen=True, order=True)
class FlipSet:
    """A candidate set of phases to flip, keyed for the search order.

    Ordering is ascending score, ties broken by smaller set size then
    lexicographic content; ``m_created`` is the path metric of the
    one-step flipped extension at creation time.
    """

    score: float
    size: int
    phases: tuple[int, ...]  # 1-based, sorted
    m_created: float = field(compare=False)


@dataclass
class DecodeResult:
    """Outcome of one decode: decision, codeword, complexity, certainty."""

    u: np.ndarray
    codeword: np.ndarray
    pm: float
    visits: int
    ml_certified: bool
    crc_ok: bool | None = None

    def message(self, spec: CodeSpec) -> np.ndarray:
        return self.u[[i - 1 for i in spec.info_set]]

    def payload(self, spec: CodeSpec) -> np.ndarray:
        msg = self.message(spec)
        return msg[: spec.payload_len]


def next_rollback_phase(e_star, e_prev) -> int:
    """First phase where two flipping sets differ (min of the symmetric
    difference); with no previous set, the first flip of ``e_star``."""
    diff = set(e_star) ^ set(e_prev)
    if not diff:
        raise ValueError("flipping sets are identical")
    return min(diff)


def list_insert(lst: list[FlipSet], fs: FlipSet, list_cap: float) -> None:
    """Insert keyed by (score, size, phases); evict the worst beyond cap."""
    insort(lst, fs)
    if len(lst) > list_cap:
        lst.pop()


def scos_decode(spec: CodeSpec, channel_llrs, profile: ReliabilityProfile | None = None,
                mode=MetricMode.EXACT, chi_max: int | None = None,
                list_cap: float | None = None) -> DecodeResult:
    """Ordered tree search over SC decision flips.

    ``chi_max`` bounds the total number of node visits (phases processed,
    re-processing included); ``None`` means unbounded, in which case the
    returned flag certifies an ML decision.  ``list_cap`` bounds the
    candidate list; by default log2(N) * chi_max / N when chi_max is
    finite, unbounded otherwise.

    The score ordering needs a reliability profile; without one the
    scores degenerate to plain path metrics (correctness is unaffected,
    only the exploration order and hence the visit count).
    """
    mode = MetricMode.of(mode)
    N = spec.N
    if chi_max is None:
        chi_max = -1  # sentinel: unbounded
    elif chi_max < N:
        raise ValueError(f"chi_max must be at least N={N}")
    if list_cap is None:
        list_cap = math.inf if chi_max < 0 else max(1.0, spec.n * chi_max / N)

    state = SCState(spec, channel_llrs, mode, profile)
    state.run()
    clog = state.clog

    best_u = state.u
    best_codeword = state.codeword
    best_m = float(state.pm[N])

    info_phases = state._info_idx  # sorted, 0-based

    lst: list[FlipSet] = []
    for ph0 in info_phases:
        m = float(state.flip_pm[ph0])
        if m < best_m:
            list_insert(lst, FlipSet(m + clog[ph0 + 1], 1, (int(ph0) + 1,), m), list_cap)

    e_prev: tuple[int, ...] = ()
    flip_mask = np.zeros(N, dtype=np.uint8)
    budget_hit = False

    while lst:
        fs = lst.pop(0)
        if fs.m_created >= best_m:
            continue  # stale: created against a leaf that has since been beaten
        if chi_max >= 0 and state.visits >= chi_max:
            budget_hit = True
            break
        j = next_rollback_phase(fs.phases, e_prev)
        flip_mask[:] = 0
        for ph in fs.phases:
            if ph >= j:
                flip_mask[ph - 1] = 1
        budget = None if chi_max < 0 else chi_max - state.visits
        status = state.run(start=j - 1, flip_mask=flip_mask, prune_at=best_m, budget=budget)
        e_prev = fs.phases
        if status == STATUS_BUDGET:
            budget_hit = True
            break
        if status == STATUS_LEAF and state.pm[N] < best_m:
            best_m = float(state.pm[N])
            best_u = state.u
            best_codeword = state.codeword
        # spawn supersets with one extra flip strictly past max(E*); phases
        # below that were already offered by the ancestor branches
        hi = state.phase  # records at phases < hi are fresh on this branch
        tail = info_phases[(info_phases >= fs.phases[-1]) & (info_phases < hi)]
        for ph0 in tail:
            m = float(state.flip_pm[ph0])
            if m < best_m:
                list_insert(
                    lst,
                    FlipSet(m + clog[ph0 + 1], fs.size + 1,
                            fs.phases + (int(ph0) + 1,), m),
                    list_cap,
                )

    return DecodeResult(
        u=best_u,
        codeword=best_codeword,
        pm=float(best_m),
        visits=state.visits,
        ml_certified=not budget_hit,
    )
