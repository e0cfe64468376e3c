import numpy as np
import pytest

from gncoset.channel import snr_to_sigma, transmit
from gncoset.codes import CodeSpec, sample_drm_polar
from gncoset.decoders import scl_decode
from gncoset.engine import MetricMode
from gncoset.oracle import enumerate_v_set, lemma1_check, ml_decode_bruteforce
from gncoset.scos import scos_decode
from gncoset.transform import encode

EX1_SPEC = CodeSpec(n=2, info_set=(2, 4))
EX1_LLR = np.array([-1.2, 3.4, -2.2, 0.9])


def test_bruteforce_worked_example():
    res = ml_decode_bruteforce(EX1_SPEC, EX1_LLR, MetricMode.HARDENED)
    assert list(res.u) == [0, 1, 0, 1]
    assert res.pm == pytest.approx(2.1, abs=1e-9)


def test_bruteforce_noiseless():
    spec = sample_drm_polar(4, 8, seed=0)
    rng = np.random.default_rng(0)
    payload = rng.integers(0, 2, 8).astype(np.uint8)
    llr = transmit(encode(spec, payload), 0.0, rng)
    res = ml_decode_bruteforce(spec, llr)
    assert np.array_equal(res.payload(spec), payload)
    assert res.pm < 1e-12


def test_bruteforce_enumeration_guard():
    spec = sample_drm_polar(5, 21, seed=0)
    with pytest.raises(ValueError):
        ml_decode_bruteforce(spec, np.zeros(32))


def test_bruteforce_agrees_with_full_scl():
    spec = sample_drm_polar(4, 8, seed=6)
    rng = np.random.default_rng(1)
    sigma = snr_to_sigma(1.0, 0.5)
    for _ in range(200):
        payload = rng.integers(0, 2, 8).astype(np.uint8)
        llr = transmit(encode(spec, payload), sigma, rng)
        a = ml_decode_bruteforce(spec, llr)
        b = scl_decode(spec, llr, 256)
        assert a.pm == pytest.approx(b.pm, abs=1e-9)


def test_vset_worked_example():
    # prefixes (0), (0,0), (0,1), (0,1,0), (0,1,0,1) are the only ones at
    # or below the ML metric 2.1 in the four-level tree
    rep = enumerate_v_set(EX1_SPEC, EX1_LLR, 2.1, MetricMode.HARDENED)
    assert not rep.truncated
    assert rep.size == 5


def test_vset_noiseless_is_exactly_n():
    spec = sample_drm_polar(4, 8, seed=0)
    rng = np.random.default_rng(2)
    payload = rng.integers(0, 2, 8).astype(np.uint8)
    llr = transmit(encode(spec, payload), 0.0, rng)
    ml = ml_decode_bruteforce(spec, llr)
    rep = enumerate_v_set(spec, llr, ml.pm)
    assert rep.size == spec.N


def test_vset_at_least_n_and_truncation():
    spec = sample_drm_polar(4, 8, seed=3)
    rng = np.random.default_rng(3)
    sigma = snr_to_sigma(0.0, 0.5)
    for _ in range(40):
        payload = rng.integers(0, 2, 8).astype(np.uint8)
        llr = transmit(encode(spec, payload), sigma, rng)
        ml = ml_decode_bruteforce(spec, llr)
        rep = enumerate_v_set(spec, llr, ml.pm)
        assert rep.size >= spec.N
    tiny = enumerate_v_set(spec, llr, ml.pm, node_cap=3)
    assert tiny.truncated
    with pytest.raises(ValueError):
        lemma1_check(100, tiny)


def test_lemma1_worked_example():
    res = scos_decode(EX1_SPEC, EX1_LLR,
                      profile=None, mode=MetricMode.HARDENED)
    rep = enumerate_v_set(EX1_SPEC, EX1_LLR, res.pm, MetricMode.HARDENED)
    assert res.visits == 7 and rep.size == 5
    assert lemma1_check(res.visits, rep)


def test_lemma1_noiseless_equality():
    spec = sample_drm_polar(4, 8, seed=0)
    rng = np.random.default_rng(4)
    payload = rng.integers(0, 2, 8).astype(np.uint8)
    llr = transmit(encode(spec, payload), 0.0, rng)
    res = scos_decode(spec, llr)
    rep = enumerate_v_set(spec, llr, res.pm)
    assert res.visits == rep.size == spec.N


def test_lemma1_random_audit():
    spec = sample_drm_polar(4, 8, seed=5)
    rng = np.random.default_rng(5)
    sigma = snr_to_sigma(1.0, 0.5)
    ratios = []
    for _ in range(200):
        payload = rng.integers(0, 2, 8).astype(np.uint8)
        llr = transmit(encode(spec, payload), sigma, rng)
        res = scos_decode(spec, llr)
        assert res.ml_certified
        rep = enumerate_v_set(spec, llr, res.pm)
        assert lemma1_check(res.visits, rep)
        ratios.append((res.visits, rep.size))
    visits = np.array([a for a, _ in ratios])
    sizes = np.array([b for _, b in ratios])
    assert visits.mean() >= sizes.mean()  # averaged form of the bound
