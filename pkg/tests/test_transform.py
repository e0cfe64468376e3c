import numpy as np
import pytest

from gncoset.codes import CodeSpec, pac_precoder, rm_info_set
from gncoset.transform import (
    bit_reversal_perm,
    encode,
    encode_batch,
    expand_message,
    message_matrix,
    polar_transform,
)


def _kron_power(n):
    g = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    out = np.array([[1]], dtype=np.uint8)
    for _ in range(n):
        out = np.kron(out, g)
    return out


def test_bit_reversal_examples():
    assert list(bit_reversal_perm(4)) == [1, 3, 2, 4]
    assert list(bit_reversal_perm(2)) == [1, 2]
    with pytest.raises(ValueError):
        bit_reversal_perm(6)


def test_bit_reversal_involution():
    for n in range(1, 11):
        perm = bit_reversal_perm(1 << n) - 1
        assert np.array_equal(perm[perm], np.arange(1 << n))


def test_transform_zero():
    assert not polar_transform(np.zeros(16, dtype=np.uint8)).any()


def test_transform_matches_kron_power():
    # the worked search example pins the transform to the plain Kronecker
    # power: u G_N with G_N = G_2^(x)n and the (k, k+half) butterfly pairing
    rng = np.random.default_rng(0)
    for n in range(0, 7):
        G = _kron_power(n)
        for _ in range(10):
            u = rng.integers(0, 2, 1 << n).astype(np.uint8)
            assert np.array_equal(polar_transform(u), (u @ G) % 2)
    u = np.array([0, 1, 0, 1], dtype=np.uint8)
    assert np.array_equal(polar_transform(u), [0, 0, 1, 1])


def test_transform_involution_and_linearity():
    rng = np.random.default_rng(1)
    for n in range(1, 11):
        N = 1 << n
        for _ in range(20):
            a = rng.integers(0, 2, N).astype(np.uint8)
            b = rng.integers(0, 2, N).astype(np.uint8)
            assert np.array_equal(polar_transform(polar_transform(a)), a)
            assert np.array_equal(
                polar_transform(a ^ b), polar_transform(a) ^ polar_transform(b)
            )


def test_transform_rejects_bad_length():
    with pytest.raises(ValueError):
        polar_transform(np.zeros(6, dtype=np.uint8))


def test_encode_zero_payload():
    spec = CodeSpec(n=3, info_set=(4, 6, 7, 8))
    assert not encode(spec, np.zeros(4, dtype=np.uint8)).any()


def test_encode_toy():
    spec = CodeSpec(n=2, info_set=(2, 4))
    u = expand_message(spec, np.array([1, 1], dtype=np.uint8))
    assert list(u) == [0, 1, 0, 1]
    assert np.array_equal(encode(spec, [1, 1]), polar_transform(u))


def test_encode_satisfies_frozen_rows():
    spec = pac_precoder(rm_info_set(7, 3), (0, 1, 1, 0, 1, 1), n=7)
    rng = np.random.default_rng(2)
    for _ in range(20):
        payload = rng.integers(0, 2, 64).astype(np.uint8)
        c = encode(spec, payload)
        u = polar_transform(c)  # involution pulls the codeword back
        for i, row in spec.frozen_rows.items():
            want = 0
            for j in row:
                want ^= int(u[j - 1])
            assert u[i - 1] == want
        for i in range(1, 129):
            if i not in set(spec.info_set) and i not in spec.frozen_rows:
                assert u[i - 1] == 0


def test_encode_length_guard():
    spec = CodeSpec(n=2, info_set=(2, 4))
    with pytest.raises(ValueError):
        encode(spec, [1, 1, 0])


def test_encode_batch_matches_encode():
    spec = pac_precoder(rm_info_set(4, 2), (0, 1, 1), n=4, crc=(1, 0, 1))
    rng = np.random.default_rng(3)
    payloads = rng.integers(0, 2, size=(32, spec.payload_len)).astype(np.uint8)
    cs = encode_batch(spec, payloads)
    for row, payload in zip(cs, payloads):
        assert np.array_equal(row, encode(spec, payload))


def test_message_matrix_matches_expand():
    spec = pac_precoder(rm_info_set(5, 2), (0, 1, 1, 0, 1, 1), n=5)
    rng = np.random.default_rng(4)
    E = message_matrix(spec)
    for _ in range(10):
        msg = rng.integers(0, 2, spec.K).astype(np.uint8)
        assert np.array_equal((E @ msg) % 2, expand_message(spec, msg))
