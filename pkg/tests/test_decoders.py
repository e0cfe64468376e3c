import math

import numpy as np
import pytest

from gncoset.channel import snr_to_sigma, transmit
from gncoset.codes import CodeSpec, ReliabilityProfile, rm_polar_info_set, sample_drm_polar
from gncoset.decoders import (
    FanoParams,
    FlipMetricParams,
    dscf_decode,
    dscf_metric,
    sc_fano_decode,
    scf_decode,
    scl_decode,
)
from gncoset.engine import MetricMode, sc_decode
from gncoset.oracle import ml_decode_bruteforce
from gncoset.transform import encode, polar_transform

EX1_SPEC = CodeSpec(n=2, info_set=(2, 4))
EX1_LLR = np.array([-1.2, 3.4, -2.2, 0.9])
EX1_P = ReliabilityProfile(np.array([0.4512, 0.1813, 0.1813, 0.0952]))

CRC_SPEC = CodeSpec(n=4, info_set=rm_polar_info_set(4, 8), crc=(1, 0, 1, 1))


def _frames(spec, sigma, count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        payload = rng.integers(0, 2, spec.payload_len).astype(np.uint8)
        yield payload, transmit(encode(spec, payload), sigma, rng)


def test_scl_degenerates_to_sc():
    spec = sample_drm_polar(4, 8, seed=1)
    for payload, llr in _frames(spec, snr_to_sigma(1.0, 0.5), 40, seed=0):
        a = scl_decode(spec, llr, 1)
        b = sc_decode(spec, llr)
        assert np.array_equal(a.u, b.u)
        assert a.pm == pytest.approx(float(b.pm[16]), abs=1e-12)
        assert a.visits == 16


def test_scl_full_list_is_ml():
    spec = sample_drm_polar(4, 8, seed=2)
    for payload, llr in _frames(spec, snr_to_sigma(0.0, 0.5), 60, seed=1):
        got = scl_decode(spec, llr, 256)
        want = ml_decode_bruteforce(spec, llr)
        assert got.pm == pytest.approx(want.pm, abs=1e-9)


def test_scl_worked_example():
    res = scl_decode(EX1_SPEC, EX1_LLR, 4, MetricMode.HARDENED)
    assert list(res.u) == [0, 1, 0, 1]
    assert res.pm == pytest.approx(2.1, abs=1e-9)


def test_scl_monotone_in_list_size():
    spec = sample_drm_polar(4, 8, seed=3)
    for payload, llr in _frames(spec, snr_to_sigma(0.0, 0.5), 40, seed=2):
        pms = [scl_decode(spec, llr, L).pm for L in (1, 2, 4, 8, 16)]
        assert all(a >= b - 1e-12 for a, b in zip(pms, pms[1:]))


def test_scl_outputs_codeword():
    spec = CodeSpec(n=4, info_set=rm_polar_info_set(4, 8), crc=(1, 1, 0, 1))
    for payload, llr in _frames(spec, snr_to_sigma(0.0, 0.5), 20, seed=3):
        res = scl_decode(spec, llr, 4)
        assert np.array_equal(polar_transform(res.u.astype(np.uint8)), res.codeword)


def test_scf_requires_crc():
    spec = sample_drm_polar(4, 8, seed=1)
    with pytest.raises(ValueError):
        scf_decode(spec, np.zeros(16))


def test_scf_clean_frame_no_retrials():
    for payload, llr in _frames(CRC_SPEC, 1e-6, 5, seed=4):
        res = scf_decode(CRC_SPEC, llr)
        assert res.crc_ok
        assert res.visits == 16
        assert np.array_equal(res.payload(CRC_SPEC), payload)


def test_scf_zero_attempts_is_sc_plus_flag():
    params = FlipMetricParams(max_attempts=0)
    for payload, llr in _frames(CRC_SPEC, snr_to_sigma(-1.0, 0.25), 30, seed=5):
        res = scf_decode(CRC_SPEC, llr, params)
        sc = sc_decode(CRC_SPEC, llr)
        assert np.array_equal(res.u, sc.u)
        assert res.visits == 16


def test_scf_recovers_single_flips():
    sigma = snr_to_sigma(2.0, 0.5)
    n_fail = n_fixed = 0
    for payload, llr in _frames(CRC_SPEC, sigma, 300, seed=6):
        sc = sc_decode(CRC_SPEC, llr)
        if np.array_equal(sc.message()[: CRC_SPEC.payload_len], payload):
            continue
        n_fail += 1
        res = scf_decode(CRC_SPEC, llr, FlipMetricParams(max_attempts=8))
        if res.crc_ok and np.array_equal(res.payload(CRC_SPEC), payload):
            n_fixed += 1
    assert n_fail >= 10
    assert n_fixed > n_fail / 2  # majority of SC failures corrected


def test_dscf_metric_formula():
    # hand evaluation of the two-term metric on a fixed record
    ells = np.array([0.5, -2.0, 1.5, -0.25])
    info = (2, 4)
    alpha = 1.0
    want = (2.0 + 0.25) + (math.log1p(math.exp(-2.0)) + math.log1p(math.exp(-0.25)))
    assert dscf_metric((2, 4), ells, info, alpha) == pytest.approx(want, abs=1e-12)


def test_dscf_metric_alpha_limit_and_monotonicity():
    ells = np.array([0.5, -2.0, 1.5, -0.25])
    info = (2, 4)
    q = dscf_metric((2,), ells, info, alpha=200.0)
    assert q == pytest.approx(2.0, abs=1e-3)
    q1 = dscf_metric((2,), ells, info, alpha=0.3)
    q2 = dscf_metric((2, 4), np.array([0.5, -2.0, 1.5, -50.0]), info, alpha=0.3)
    assert q2 > q1


def test_dscf_zero_attempts():
    params = FlipMetricParams(max_attempts=0)
    for payload, llr in _frames(CRC_SPEC, snr_to_sigma(-1.0, 0.25), 20, seed=7):
        res = dscf_decode(CRC_SPEC, llr, params)
        sc = sc_decode(CRC_SPEC, llr)
        assert np.array_equal(res.u, sc.u)


def test_dscf_beats_scf_on_double_errors():
    sigma = snr_to_sigma(1.0, 0.5)
    params = FlipMetricParams(alpha=0.3, max_attempts=12, max_flips=2)
    scf_params = FlipMetricParams(max_attempts=12, max_flips=1)
    n_scf = n_dscf = 0
    for payload, llr in _frames(CRC_SPEC, sigma, 400, seed=8):
        sc = sc_decode(CRC_SPEC, llr)
        if np.array_equal(sc.message()[: CRC_SPEC.payload_len], payload):
            continue
        if scf_decode(CRC_SPEC, llr, scf_params).crc_ok:
            n_scf += 1
        if dscf_decode(CRC_SPEC, llr, params).crc_ok:
            n_dscf += 1
    assert n_dscf >= n_scf


def test_dscf_requires_crc():
    spec = sample_drm_polar(4, 8, seed=1)
    with pytest.raises(ValueError):
        dscf_decode(spec, np.zeros(16))


def test_fano_threshold_never_binds_on_clean_frame():
    spec = sample_drm_polar(4, 8, seed=1)
    rng = np.random.default_rng(9)
    payload = rng.integers(0, 2, 8).astype(np.uint8)
    llr = transmit(encode(spec, payload), 0.0, rng)
    res = sc_fano_decode(spec, llr, FanoParams(delta=1e9))
    assert res.visits == 16
    assert np.array_equal(res.payload(spec), payload)


def test_fano_worked_example_reaches_good_leaf():
    res = sc_fano_decode(EX1_SPEC, EX1_LLR, FanoParams(delta=0.5), EX1_P,
                         MetricMode.HARDENED)
    assert res.pm <= 3.4 + 1e-9


def test_fano_budget_equals_n_gives_sc():
    spec = sample_drm_polar(4, 8, seed=2)
    for payload, llr in _frames(spec, snr_to_sigma(-1.0, 0.5), 40, seed=10):
        res = sc_fano_decode(spec, llr, FanoParams(delta=1.0, chi_max=16))
        sc = sc_decode(spec, llr)
        assert np.array_equal(res.u, sc.u)
        assert res.visits == 16


def test_fano_respects_budget_and_returns_codeword():
    spec = sample_drm_polar(5, 16, seed=3)
    for payload, llr in _frames(spec, snr_to_sigma(-1.0, 0.5), 30, seed=11):
        res = sc_fano_decode(spec, llr, FanoParams(delta=1.0, chi_max=5 * 32))
        assert res.visits <= 5 * 32
        assert np.array_equal(polar_transform(res.u.astype(np.uint8)), res.codeword)


def test_param_validation():
    with pytest.raises(ValueError):
        FlipMetricParams(alpha=0.0)
    with pytest.raises(ValueError):
        FanoParams(delta=-1.0)
    with pytest.raises(ValueError):
        scl_decode(EX1_SPEC, EX1_LLR, 0)
