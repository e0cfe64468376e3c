"""Monte Carlo FER/complexity sweeps with deterministic parallelism.

Each frame is a pure function of (master seed, SNR point index, frame
index), so sweeps are reproducible bit-for-bit for any worker count.
Frames are processed in fixed-size batches merged in index order; the
stopping rule (enough error events, or the frame cap) is evaluated on
that ordered prefix, which keeps early stopping deterministic too.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from .channel import frame_rng, snr_to_sigma, transmit
from .codes import CodeSpec, ReliabilityProfile
from .decoders import FanoParams, FlipMetricParams, dscf_decode, sc_fano_decode, scf_decode, scl_decode
from .engine import MetricMode, codeword_metric, estimate_first_error_probs, sc_decode
from .oracle import enumerate_v_set, ml_decode_bruteforce
from .scos import DecodeResult, scos_decode
from .transform import encode

__all__ = ["SimConfig", "SimRecord", "run_sweep", "ml_lb_account", "write_csv", "read_csv", "CSV_FIELDS"]

DECODERS = ("sc", "scl", "scf", "dscf", "scfano", "scos", "ml")

_BATCH = 512  # frames per work unit; part of the deterministic stopping rule


@dataclass
class SimConfig:
    """Everything one sweep needs; see the CLI for the matching flags."""

    spec: CodeSpec
    decoder: str = "sc"
    snr_db: tuple[float, ...] = (3.0,)
    max_frames: int = 10_000_000
    min_errors: int = 100
    master_seed: int = 0
    workers: int = 1
    mode: str = "exact"
    max_visits_factor: float = 0.0  # chi_max = factor * N; 0 = unbounded
    list_size: int = 8
    list_cap: float | None = None
    delta: float = 1.0
    alpha: float = 0.3
    flip_attempts: int = 8
    max_flips: int = 3
    profile_trials: int = 100_000
    profile_seed: int = 1
    profile_cache: str | None = None
    audit_lemma1: bool = False
    vset_cap: int = 10_000_000
    noiseless: bool = False

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}; pick one of {DECODERS}")
        if not self.snr_db:
            raise ValueError("empty SNR grid")
        if self.min_errors < 1 or self.max_frames < 1:
            raise ValueError("min_errors and max_frames must be positive")

    @property
    def rate(self) -> float:
        return self.spec.payload_len / self.spec.N

    def chi_max(self) -> int | None:
        if self.max_visits_factor and self.max_visits_factor > 0:
            return int(round(self.max_visits_factor * self.spec.N))
        return None


@dataclass
class SimRecord:
    """Aggregate results of one SNR point."""

    snr_db: float
    frames: int
    errors: int
    fer: float
    mean_visits_over_n: float
    ml_certified_fraction: float
    ml_lb_errors: int
    ml_lb_fer: float
    mean_vset_over_n: float = math.nan
    lemma1_ok_fraction: float = math.nan
    vset_excluded: int = 0
    profile_seed: int = 0
    profile_trials: int = 0


CSV_FIELDS = [
    "snr_db", "frames", "errors", "fer", "mean_visits_over_n",
    "ml_certified_fraction", "ml_lb_errors", "ml_lb_fer",
    "mean_vset_over_n", "lemma1_ok_fraction", "vset_excluded",
    "profile_seed", "profile_trials",
]

_INT_FIELDS = {"frames", "errors", "ml_lb_errors", "vset_excluded", "profile_seed", "profile_trials"}


def ml_lb_account(decoded: DecodeResult, true_codeword, channel_llrs,
                  frame_errored: bool, mode=MetricMode.EXACT) -> bool:
    """True when even an ML decoder would have erred on this frame.

    A decoding failure counts toward the empirical ML lower bound when
    the decided word is at least as likely as the transmitted one.
    """
    if not frame_errored:
        return False
    m_dec = codeword_metric(decoded.codeword, channel_llrs, mode)
    m_true = codeword_metric(true_codeword, channel_llrs, mode)
    return m_dec <= m_true


def _profile_path(cache_dir: str, spec: CodeSpec, snr_db: float, trials: int, seed: int) -> str:
    name = f"profile_{spec.structural_hash()}_{snr_db:.4f}dB_t{trials}_s{seed}.txt"
    return os.path.join(cache_dir, name)


def _get_profile(cfg: SimConfig, snr_db: float) -> ReliabilityProfile:
    if cfg.decoder not in ("scos", "scfano"):
        # only the score-ordered searches consume the profile
        return ReliabilityProfile.zeros(cfg.spec.N)
    sigma = snr_to_sigma(snr_db, cfg.rate)
    if cfg.profile_cache:
        os.makedirs(cfg.profile_cache, exist_ok=True)
        path = _profile_path(cfg.profile_cache, cfg.spec, snr_db, cfg.profile_trials, cfg.profile_seed)
        if os.path.exists(path):
            return ReliabilityProfile.load(path)
    prof = estimate_first_error_probs(cfg.spec, sigma, cfg.profile_trials, cfg.profile_seed)
    if cfg.profile_cache:
        prof.save(path)
    return prof


def _make_decoder(cfg: SimConfig, profile: ReliabilityProfile):
    spec = cfg.spec
    mode = MetricMode.of(cfg.mode)
    name = cfg.decoder
    if name == "sc":
        def run(llr):
            st = sc_decode(spec, llr, mode)
            return DecodeResult(u=st.u, codeword=st.codeword, pm=float(st.pm[spec.N]),
                                visits=st.visits, ml_certified=False)
    elif name == "scl":
        def run(llr):
            return scl_decode(spec, llr, cfg.list_size, mode)
    elif name == "scf":
        params = FlipMetricParams(alpha=cfg.alpha, max_attempts=cfg.flip_attempts, max_flips=1)
        def run(llr):
            return scf_decode(spec, llr, params, mode)
    elif name == "dscf":
        params = FlipMetricParams(alpha=cfg.alpha, max_attempts=cfg.flip_attempts,
                                  max_flips=cfg.max_flips)
        def run(llr):
            return dscf_decode(spec, llr, params, mode)
    elif name == "scfano":
        chi = cfg.chi_max()
        params = FanoParams(delta=cfg.delta, chi_max=math.inf if chi is None else chi)
        def run(llr):
            return sc_fano_decode(spec, llr, params, profile, mode)
    elif name == "scos":
        chi = cfg.chi_max()
        def run(llr):
            return scos_decode(spec, llr, profile, mode, chi_max=chi, list_cap=cfg.list_cap)
    elif name == "ml":
        def run(llr):
            return ml_decode_bruteforce(spec, llr, mode)
    else:  # pragma: no cover - guarded in __post_init__
        raise ValueError(name)
    return run


def _run_batch(cfg: SimConfig, point_idx: int, snr_db: float,
               profile: ReliabilityProfile, lo: int, hi: int) -> dict:
    spec = cfg.spec
    mode = MetricMode.of(cfg.mode)
    sigma = 0.0 if cfg.noiseless else snr_to_sigma(snr_db, cfg.rate)
    decode = _make_decoder(cfg, profile)
    agg = {"frames": 0, "errors": 0, "visits": 0, "certified": 0,
           "ml_lb": 0, "vset": 0.0, "vset_n": 0, "lemma_ok": 0, "excluded": 0}
    for frame in range(lo, hi):
        rng = frame_rng(cfg.master_seed, point_idx, frame)
        payload = rng.integers(0, 2, size=spec.payload_len).astype(np.uint8)
        cw = encode(spec, payload)
        llr = transmit(cw, sigma, rng)
        res = decode(llr)
        err = not np.array_equal(res.payload(spec), payload)
        agg["frames"] += 1
        agg["errors"] += err
        agg["visits"] += res.visits
        agg["certified"] += res.ml_certified
        if err and ml_lb_account(res, cw, llr, True, mode):
            agg["ml_lb"] += 1
        if cfg.audit_lemma1 and res.ml_certified:
            rep = enumerate_v_set(spec, llr, res.pm, mode, node_cap=cfg.vset_cap)
            if rep.truncated:
                agg["excluded"] += 1
            else:
                agg["vset"] += rep.size
                agg["vset_n"] += 1
                agg["lemma_ok"] += res.visits >= rep.size
    return agg


def _merge(total: dict, part: dict) -> None:
    for k, v in part.items():
        total[k] += v


def _sweep_point(cfg: SimConfig, point_idx: int, snr_db: float, pool) -> SimRecord:
    profile = _get_profile(cfg, snr_db)
    total = {"frames": 0, "errors": 0, "visits": 0, "certified": 0,
             "ml_lb": 0, "vset": 0.0, "vset_n": 0, "lemma_ok": 0, "excluded": 0}
    batches = []
    lo = 0
    while lo < cfg.max_frames:
        hi = min(lo + _BATCH, cfg.max_frames)
        batches.append((cfg, point_idx, snr_db, profile, lo, hi))
        lo = hi
    if pool is None:
        results = (_run_batch(*args) for args in batches)
    else:
        results = pool.imap(_run_batch_star, batches)
    for part in results:
        _merge(total, part)
        if total["errors"] >= cfg.min_errors:
            break
    frames = total["frames"]
    vn = total["vset_n"]
    return SimRecord(
        snr_db=snr_db,
        frames=frames,
        errors=total["errors"],
        fer=total["errors"] / frames,
        mean_visits_over_n=total["visits"] / frames / cfg.spec.N,
        ml_certified_fraction=total["certified"] / frames,
        ml_lb_errors=total["ml_lb"],
        ml_lb_fer=total["ml_lb"] / frames,
        mean_vset_over_n=(total["vset"] / vn / cfg.spec.N) if vn else math.nan,
        lemma1_ok_fraction=(total["lemma_ok"] / vn) if vn else math.nan,
        vset_excluded=total["excluded"],
        profile_seed=cfg.profile_seed,
        profile_trials=cfg.profile_trials,
    )


def _run_batch_star(args):
    return _run_batch(*args)


def run_sweep(cfg: SimConfig, progress=None) -> list[SimRecord]:
    """Run the configured sweep and return one record per SNR point."""
    pool = None
    records = []
    try:
        if cfg.workers > 1:
            import multiprocessing as mp

            pool = mp.get_context("fork").Pool(cfg.workers)
        for k, snr in enumerate(cfg.snr_db):
            rec = _sweep_point(cfg, k, float(snr), pool)
            records.append(rec)
            if progress is not None:
                progress(rec)
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
    return records


def _format(field: str, value) -> str:
    if field in _INT_FIELDS:
        return str(int(value))
    return f"{value:.6g}"


def write_csv(records: list[SimRecord], path, append: bool = False) -> None:
    """Persist records under the fixed schema; append validates the header."""
    if not records:
        raise ValueError("no records to write")
    mode = "a" if append and os.path.exists(path) else "w"
    if mode == "a":
        with open(path) as fh:
            header = fh.readline().strip().split(",")
        if header != CSV_FIELDS:
            raise ValueError(f"schema mismatch in {path}: {header}")
    with open(path, mode, newline="") as fh:
        w = csv.writer(fh)
        if mode == "w":
            w.writerow(CSV_FIELDS)
        for rec in records:
            w.writerow(_format(f, getattr(rec, f)) for f in CSV_FIELDS)


def read_csv(path) -> list[SimRecord]:
    out = []
    with open(path, newline="") as fh:
        rdr = csv.DictReader(fh)
        if rdr.fieldnames != CSV_FIELDS:
            raise ValueError(f"schema mismatch in {path}: {rdr.fieldnames}")
        for row in rdr:
            kw = {}
            for f in CSV_FIELDS:
                kw[f] = int(row[f]) if f in _INT_FIELDS else float(row[f])
            out.append(SimRecord(**kw))
    return out
