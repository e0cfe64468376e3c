"""Code specifications and constructions for modified G_N-coset codes.

A G_N-coset code of length N = 2^n is fixed by an information set A of
u-domain indices (1-based, in successive decoding order) plus, for every
frozen index, a sparse XOR rule over *earlier information indices* that
gives the frozen value (an empty rule means static zero).  This covers
plain polar and Reed-Muller codes, PAC codes (convolutional precoding
expressed as dynamic frozen bits), randomly drawn dRM-polar ensemble
members, and optionally a CRC outer code on the message.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CodeSpec",
    "ReliabilityProfile",
    "rm_info_set",
    "beta_expansion_ranking",
    "rm_polar_info_set",
    "pac_precoder",
    "sample_drm_polar",
    "frozen_value",
    "crc_attach",
    "crc_check",
    "save_spec",
    "load_spec",
]

P_FLOOR = 1e-9
P_CEIL = 1.0 - 1e-9


@dataclass(frozen=True)
class CodeSpec:
    """Immutable description of a modified G_N-coset code.

    Attributes
    ----------
    n : int
        log2 of the block length.
    info_set : tuple[int, ...]
        Sorted 1-based u-domain indices carrying information (|A| = K).
    frozen_rows : dict[int, tuple[int, ...]]
        For each frozen index i, the sorted info indices j < i whose XOR
        gives u_i.  Missing or empty entry = static zero.
    crc : tuple[int, ...] | None
        Optional CRC polynomial as a bit vector (MSB first, leading 1).
        When present the payload length is K minus the CRC degree.
    metadata : dict
        Free-form provenance (construction name, seed, beta, ...).
    """

    n: int
    info_set: tuple[int, ...]
    frozen_rows: dict[int, tuple[int, ...]] = field(default_factory=dict)
    crc: tuple[int, ...] | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be non-negative, got {self.n}")
        N = 1 << self.n
        a = tuple(sorted(set(self.info_set)))
        if len(a) != len(self.info_set):
            raise ValueError("info_set contains duplicates")
        object.__setattr__(self, "info_set", a)
        if a and (a[0] < 1 or a[-1] > N):
            raise ValueError(f"info_set indices must lie in 1..{N}")
        info = set(a)
        rows = {}
        for i, row in self.frozen_rows.items():
            if i in info:
                raise ValueError(f"frozen row given for information index {i}")
            if not 1 <= i <= N:
                raise ValueError(f"frozen index {i} out of range 1..{N}")
            row = tuple(sorted(row))
            for j in row:
                if j >= i:
                    raise ValueError(f"frozen row {i} references j={j} >= i")
                if j not in info:
                    raise ValueError(f"frozen row {i} references non-info index {j}")
            if row:
                rows[i] = row
        object.__setattr__(self, "frozen_rows", rows)
        if self.crc is not None:
            poly = tuple(int(b) for b in self.crc)
            if not poly or poly[0] != 1 or any(b not in (0, 1) for b in poly):
                raise ValueError("crc polynomial must be a bit vector with a leading 1")
            if len(poly) - 1 >= self.K:
                raise ValueError("crc degree leaves no payload bits")
            object.__setattr__(self, "crc", poly)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def K(self) -> int:
        return len(self.info_set)

    @property
    def payload_len(self) -> int:
        """Message bits carried per frame (K minus CRC degree)."""
        if self.crc is None:
            return self.K
        return self.K - (len(self.crc) - 1)

    @property
    def frozen_set(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.N + 1) if i not in set(self.info_set))

    def info_mask(self) -> np.ndarray:
        """Boolean mask over 0-based phases, True at information phases."""
        mask = np.zeros(self.N, dtype=bool)
        mask[[i - 1 for i in self.info_set]] = True
        return mask

    def cache_key(self) -> tuple:
        """Hashable structural identity (metadata excluded)."""
        return (
            self.n,
            self.info_set,
            tuple(sorted(self.frozen_rows.items())),
            self.crc,
        )

    def structural_hash(self) -> str:
        """Short hex digest of the structural identity, for cache file names."""
        import hashlib

        return hashlib.sha256(repr(self.cache_key()).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class ReliabilityProfile:
    """Per-phase probabilities that the first SC bit error occurs there.

    p[j-1] is the probability (clamped to [P_FLOOR, P_CEIL] before any
    logarithm) that phase j hosts the first erroneous SC decision; frozen
    phases carry 0 by convention when the profile is estimated.
    """

    p: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.ndim != 1:
            raise ValueError("profile must be one-dimensional")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("profile entries must lie in [0, 1]")
        object.__setattr__(self, "p", arr)

    def cum_log_no_error(self) -> np.ndarray:
        """clog[i] = sum_{j<=i} ln(1 - p_j), with clog[0] = 0.

        Probabilities are clamped away from 1 before the log so the sum
        stays finite.
        """
        q = 1.0 - np.clip(self.p, 0.0, P_CEIL)
        out = np.zeros(len(self.p) + 1)
        np.cumsum(np.log(q), out=out[1:])
        return out

    @classmethod
    def zeros(cls, N: int) -> "ReliabilityProfile":
        return cls(np.zeros(N))

    def save(self, path) -> None:
        np.savetxt(path, self.p, fmt="%.12g")

    @classmethod
    def load(cls, path) -> "ReliabilityProfile":
        return cls(np.atleast_1d(np.loadtxt(path)))


def rm_info_set(n: int, r: int) -> tuple[int, ...]:
    """Information set of the r-th order Reed-Muller code RM(r, n).

    Returns all 1-based indices i with popcount(i-1) >= n - r; the size is
    sum_{j<=r} C(n, j).
    """
    if n < 0 or not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    N = 1 << n
    return tuple(i for i in range(1, N + 1) if (i - 1).bit_count() >= n - r)


def _beta_weights(N: int, beta: float) -> np.ndarray:
    n = N.bit_length() - 1
    idx = np.arange(N)[:, None]
    bits = (idx >> np.arange(n)[None, :]) & 1
    return bits @ (beta ** np.arange(n))


def beta_expansion_ranking(N: int, beta: float) -> tuple[int, ...]:
    """Indices 1..N ordered by descending beta-expansion weight.

    The weight of index i is sum_k b_k beta^k over the bits b_k of the
    binary expansion of i-1 (b_0 = LSB).  Equal weights (impossible for
    irrational beta) are broken by ascending index.
    """
    if N < 1 or N & (N - 1):
        raise ValueError(f"N must be a power of two, got {N}")
    if beta <= 1.0:
        raise ValueError(f"beta must exceed 1, got {beta}")
    w = _beta_weights(N, beta)
    order = sorted(range(N), key=lambda k: (-w[k], k))
    return tuple(k + 1 for k in order)


def rm_polar_info_set(n: int, K: int, beta: float = 2.0 ** 0.25) -> tuple[int, ...]:
    """RM-polar information set: RM weight classes with a polar tie-break.

    Every index whose binary weight exceeds the critical weight w* (the
    largest class that cannot be included whole) is taken; the remaining
    slots are filled from the weight-w* class in descending beta-expansion
    rank.
    """
    N = 1 << n
    if not 1 <= K <= N:
        raise ValueError(f"need 1 <= K <= N={N}, got K={K}")
    by_weight: dict[int, list[int]] = {w: [] for w in range(n + 1)}
    for i in range(1, N + 1):
        by_weight[(i - 1).bit_count()].append(i)
    chosen: list[int] = []
    w = n
    while w >= 0 and len(chosen) + len(by_weight[w]) <= K:
        chosen.extend(by_weight[w])
        w -= 1
    missing = K - len(chosen)
    if missing:
        rank = {i: r for r, i in enumerate(beta_expansion_ranking(N, beta))}
        tied = sorted(by_weight[w], key=lambda i: rank[i])
        chosen.extend(tied[:missing])
    return tuple(sorted(chosen))


def _expand_to_info(terms: set[int], info: set[int], rows: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    # XOR-substitute frozen references until only info indices remain;
    # indices strictly decrease, so this terminates.
    out: set[int] = set()
    stack = sorted(terms, reverse=True)
    while stack:
        j = stack.pop(0)
        if j in info:
            out ^= {j}
        else:
            for t in rows.get(j, ()):
                stack.append(t)
    return tuple(sorted(out))


def pac_precoder(info_set, g, n: int | None = None, crc=None) -> CodeSpec:
    """Build a PAC code spec: convolutional precoding as dynamic frozen bits.

    ``g[k-1]`` is the indicator of delay k, so g = (0,1,1,0,1,1) realizes
    u_i = u_{i-2} + u_{i-3} + u_{i-5} + u_{i-6} at frozen i > 6.  Frozen
    indices at or below the constraint length are static zero.  Rows are
    recursively expanded so they reference information indices only.
    """
    info_set = tuple(sorted(info_set))
    if n is None:
        n = (max(info_set) - 1).bit_length()
    N = 1 << n
    g = tuple(int(b) for b in g)
    taps = [k + 1 for k, b in enumerate(g) if b]
    deg = len(g)
    info = set(info_set)
    rows: dict[int, tuple[int, ...]] = {}
    for i in range(1, N + 1):
        if i in info or i <= deg:
            continue
        refs = {i - k for k in taps if i - k >= 1}
        row = _expand_to_info(refs, info, rows)
        if row:
            rows[i] = row
        # keep empty rows out of the mapping: static zero is the default
    return CodeSpec(
        n=n,
        info_set=info_set,
        frozen_rows=rows,
        crc=tuple(crc) if crc is not None else None,
        metadata={"construction": "pac", "g": list(g)},
    )


def sample_drm_polar(n: int, K: int, beta: float = 2.0 ** 0.25, seed: int = 0) -> CodeSpec:
    """Draw one member of the (N, K) dRM-polar ensemble.

    Uses the RM-polar information set; every coefficient v_{j,i} (j info,
    j < i, i frozen) is an independent fair bit from a generator seeded by
    ``seed``, so equal seeds give identical specs.
    """
    info_set = rm_polar_info_set(n, K, beta)
    info = set(info_set)
    N = 1 << n
    rng = np.random.default_rng(seed)
    rows: dict[int, tuple[int, ...]] = {}
    for i in range(1, N + 1):
        if i in info:
            continue
        prior = [j for j in info_set if j < i]
        if not prior:
            continue
        v = rng.integers(0, 2, size=len(prior))
        row = tuple(j for j, b in zip(prior, v) if b)
        if row:
            rows[i] = row
    return CodeSpec(
        n=n,
        info_set=info_set,
        frozen_rows=rows,
        metadata={"construction": "drm-polar", "seed": int(seed), "beta": float(beta)},
    )


def frozen_value(spec: CodeSpec, i: int, decided) -> int:
    """Value of frozen bit u_i given the decided prefix u^{i-1}.

    ``decided`` is indexable with 0-based positions and must cover every
    index referenced by the row of i.
    """
    if i in set(spec.info_set):
        raise ValueError(f"index {i} is an information index")
    row = spec.frozen_rows.get(i, ())
    val = 0
    for j in row:
        if j > len(decided):
            raise ValueError(f"frozen row of {i} references undecided index {j}")
        val ^= int(decided[j - 1])
    return val


def crc_attach(payload, poly) -> np.ndarray:
    """Append the CRC remainder of ``payload`` under ``poly`` (MSB first)."""
    poly = np.asarray(poly, dtype=np.uint8)
    deg = len(poly) - 1
    payload = np.asarray(payload, dtype=np.uint8)
    if deg == 0:
        return payload.copy()
    buf = np.concatenate([payload, np.zeros(deg, dtype=np.uint8)])
    for k in range(len(payload)):
        if buf[k]:
            buf[k : k + deg + 1] ^= poly
    return np.concatenate([payload, buf[-deg:]])


def crc_check(message, poly) -> bool:
    """True when ``message`` (payload + appended CRC) has zero remainder."""
    poly = np.asarray(poly, dtype=np.uint8)
    deg = len(poly) - 1
    message = np.asarray(message, dtype=np.uint8)
    if deg == 0:
        return True
    if len(message) < deg:
        raise ValueError("message shorter than CRC degree")
    buf = message.copy()
    for k in range(len(message) - deg):
        if buf[k]:
            buf[k : k + deg + 1] ^= poly
    return not buf[-deg:].any()


def save_spec(spec: CodeSpec, path) -> None:
    """Write a spec to a JSON document (lossless round trip via load_spec)."""
    doc = {
        "n": spec.n,
        "info_set": list(spec.info_set),
        "frozen_rows": [[i, list(row)] for i, row in sorted(spec.frozen_rows.items())],
        "crc": list(spec.crc) if spec.crc is not None else None,
        "metadata": spec.metadata,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_spec(path) -> CodeSpec:
    with open(path) as fh:
        doc = json.load(fh)
    return CodeSpec(
        n=int(doc["n"]),
        info_set=tuple(doc["info_set"]),
        frozen_rows={int(i): tuple(row) for i, row in doc.get("frozen_rows", [])},
        crc=tuple(doc["crc"]) if doc.get("crc") else None,
        metadata=doc.get("metadata", {}),
    )
