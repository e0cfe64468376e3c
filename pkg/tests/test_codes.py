import math

import numpy as np
import pytest

from gncoset.codes import (
    CodeSpec,
    ReliabilityProfile,
    beta_expansion_ranking,
    crc_attach,
    crc_check,
    frozen_value,
    load_spec,
    pac_precoder,
    rm_info_set,
    rm_polar_info_set,
    sample_drm_polar,
    save_spec,
)

PAC_G = (0, 1, 1, 0, 1, 1)


def test_rm_info_set_sizes():
    for n in range(0, 11):
        for r in range(0, n + 1):
            got = rm_info_set(n, r)
            assert len(got) == sum(math.comb(n, j) for j in range(r + 1))
            assert all(1 <= i <= (1 << n) for i in got)


def test_rm_info_set_examples():
    assert len(rm_info_set(7, 3)) == 64
    assert rm_info_set(3, 3) == tuple(range(1, 9))
    assert rm_info_set(2, 0) == (4,)


def test_rm_info_set_rejects_bad_order():
    with pytest.raises(ValueError):
        rm_info_set(3, 4)
    with pytest.raises(ValueError):
        rm_info_set(3, -1)


def test_beta_ranking_small():
    beta = 2.0 ** 0.25
    assert beta_expansion_ranking(4, beta) == (4, 3, 2, 1)
    assert beta_expansion_ranking(2, 1.7) == (2, 1)


def test_beta_ranking_matches_weight_sort():
    # independent oracle: evaluate the weight polynomial directly
    beta = 2.0 ** 0.25
    weights = {}
    for i in range(1, 9):
        w = 0.0
        for k, bit in enumerate(bin(i - 1)[2:][::-1]):
            w += int(bit) * beta ** k
        weights[i] = w
    expect = tuple(sorted(weights, key=lambda i: -weights[i]))
    assert beta_expansion_ranking(8, beta) == expect


def test_beta_ranking_validates():
    with pytest.raises(ValueError):
        beta_expansion_ranking(6, 1.2)
    with pytest.raises(ValueError):
        beta_expansion_ranking(8, 1.0)


def test_rm_polar_reduces_to_rm():
    assert rm_polar_info_set(7, 64) == rm_info_set(7, 3)


def test_rm_polar_corner():
    assert rm_polar_info_set(2, 1) == (4,)


def test_rm_polar_256_154():
    got = rm_polar_info_set(8, 154)
    assert len(got) == 154
    weights = [bin(i - 1).count("1") for i in got]
    # all indices of weight >= 5 are in, the rest come from the weight-4 class
    assert sum(1 for w in weights if w >= 5) == sum(math.comb(8, j) for j in range(5, 9))
    assert all(w >= 4 for w in weights)
    # the weight-4 members are the top-ranked ones of their class
    rank = {i: r for r, i in enumerate(beta_expansion_ranking(256, 2.0 ** 0.25))}
    chosen4 = sorted((i for i in got if bin(i - 1).count("1") == 4), key=lambda i: rank[i])
    all4 = sorted((i for i in range(1, 257) if bin(i - 1).count("1") == 4), key=lambda i: rank[i])
    assert chosen4 == all4[: len(chosen4)]


def test_rm_polar_infeasible():
    with pytest.raises(ValueError):
        rm_polar_info_set(3, 9)


def _pac_row_oracle(spec, i):
    # expand the raw delay recurrence over the frozen chain, independently
    taps = [k + 1 for k, b in enumerate(PAC_G) if b]
    info = set(spec.info_set)
    acc = set()
    stack = [i - k for k in taps if i - k >= 1]
    while stack:
        j = stack.pop()
        if j in info:
            acc ^= {j}
        elif j > len(PAC_G):
            stack.extend(j - k for k in taps if j - k >= 1)
        # frozen with j <= deg: static zero, drops out
    return tuple(sorted(acc))


def test_pac_rows_match_recurrence_expansion():
    spec = pac_precoder(rm_info_set(7, 3), PAC_G, n=7)
    assert spec.N == 128 and spec.K == 64
    info = set(spec.info_set)
    for i in range(1, 129):
        if i in info:
            continue
        assert spec.frozen_rows.get(i, ()) == _pac_row_oracle(spec, i)
    for row in spec.frozen_rows.values():
        assert all(j in info for j in row)


def test_pac_zero_polynomial():
    spec = pac_precoder(rm_info_set(4, 2), (0, 0, 0), n=4)
    assert spec.frozen_rows == {}


def test_pac_delay_indexing_toy():
    # g=(0,1) is a single delay-2 tap: u_3 = u_1, and u_1 is static zero
    spec = pac_precoder((2, 4), (0, 1), n=2)
    assert spec.frozen_rows == {}


def test_frozen_value_basics():
    spec = CodeSpec(n=2, info_set=(2, 4), frozen_rows={3: (2,)})
    assert frozen_value(spec, 1, []) == 0
    assert frozen_value(spec, 3, [0, 1]) == 1
    spec2 = CodeSpec(n=3, info_set=(2, 4, 6, 8), frozen_rows={5: (2, 4)})
    assert frozen_value(spec2, 5, [0, 1, 0, 1]) == 0  # XOR cancellation


def test_frozen_value_guards():
    spec = CodeSpec(n=2, info_set=(2, 4), frozen_rows={3: (2,)})
    with pytest.raises(ValueError):
        frozen_value(spec, 2, [0])
    with pytest.raises(ValueError):
        frozen_value(spec, 3, [0])


def test_frozen_value_pac_recurrence():
    from gncoset.transform import expand_message

    spec = pac_precoder(rm_info_set(7, 3), PAC_G, n=7)
    rng = np.random.default_rng(11)
    u = expand_message(spec, rng.integers(0, 2, 64).astype(np.uint8))
    taps = [k + 1 for k, b in enumerate(PAC_G) if b]
    for i in range(7, 129):
        if i in set(spec.info_set):
            continue
        direct = 0
        for k in taps:
            if i - k >= 1:
                direct ^= int(u[i - k - 1])
        assert frozen_value(spec, i, u) == direct == u[i - 1]


def test_drm_polar_determinism_and_shape():
    a = sample_drm_polar(4, 8, seed=42)
    b = sample_drm_polar(4, 8, seed=42)
    assert a.info_set == b.info_set and a.frozen_rows == b.frozen_rows
    c = sample_drm_polar(4, 8, seed=43)
    assert c.frozen_rows != a.frozen_rows
    for i, row in a.frozen_rows.items():
        assert all(j in set(a.info_set) and j < i for j in row)


def test_drm_polar_rate_one():
    spec = sample_drm_polar(2, 4, seed=0)
    assert spec.frozen_rows == {}
    assert spec.info_set == (1, 2, 3, 4)


def test_crc_roundtrip_and_detection():
    poly = (1, 0, 1, 1)
    rng = np.random.default_rng(5)
    for _ in range(20):
        payload = rng.integers(0, 2, 12).astype(np.uint8)
        msg = crc_attach(payload, poly)
        assert len(msg) == 15
        assert crc_check(msg, poly)
    msg = crc_attach(np.array([1, 0, 1, 1, 0, 0, 1], dtype=np.uint8), poly)
    for k in range(len(msg)):
        bad = msg.copy()
        bad[k] ^= 1
        assert not crc_check(bad, poly)


def test_crc_degree_zero():
    payload = np.array([1, 0, 1], dtype=np.uint8)
    assert np.array_equal(crc_attach(payload, (1,)), payload)
    assert crc_check(payload, (1,))


def test_spec_invariants_enforced():
    with pytest.raises(ValueError):
        CodeSpec(n=2, info_set=(2, 5))
    with pytest.raises(ValueError):
        CodeSpec(n=2, info_set=(2, 4), frozen_rows={2: (1,)})
    with pytest.raises(ValueError):
        CodeSpec(n=2, info_set=(2, 4), frozen_rows={3: (4,)})
    with pytest.raises(ValueError):
        CodeSpec(n=2, info_set=(2, 4), frozen_rows={3: (1,)})
    with pytest.raises(ValueError):
        CodeSpec(n=2, info_set=(2, 4), crc=(0, 1))


def test_spec_file_roundtrip(tmp_path):
    spec = pac_precoder(rm_info_set(4, 2), (0, 1, 1), n=4, crc=(1, 1, 0, 1))
    path = tmp_path / "spec.json"
    save_spec(spec, path)
    back = load_spec(path)
    assert back == spec
    assert back.metadata == spec.metadata


def test_profile_clamps_and_io(tmp_path):
    p = ReliabilityProfile(np.array([0.0, 0.5, 1.0, 0.25]))
    clog = p.cum_log_no_error()
    assert clog[0] == 0.0
    assert np.all(np.isfinite(clog))
    path = tmp_path / "prof.txt"
    p.save(path)
    q = ReliabilityProfile.load(path)
    assert np.allclose(p.p, q.p)
    with pytest.raises(ValueError):
        ReliabilityProfile(np.array([-0.1]))
