import math
import random

import pytest

from fastpcmm.counters import OpCounter
from fastpcmm.costmodel import counter_to_equiv
from fastpcmm.curve import G, INFINITY, P256, scalar_mult
from fastpcmm.elgamal import (
    MAX_BOUND,
    ZERO,
    BoundError,
    BsgsTable,
    DecodeError,
    ElGamalCiphertext,
    MessageBound,
    bsgs_decode,
    ct_add,
    ct_scalar_mul,
    ct_sub,
    decrypt,
    deserialize_ciphertext,
    encrypt,
    keygen,
    message_bound,
    serialize_ciphertext,
)


def test_keygen_deterministic_per_seed():
    assert keygen(7) == keygen(7)
    xs = {keygen(s).x for s in range(100)}
    assert len(xs) == 100
    k = keygen(7)
    assert 1 <= k.x < P256.q
    assert k.H == scalar_mult(k.x, G)


def test_encrypt_zero_and_identity_decrypt(ec):
    assert ec.decrypt(ec.encrypt(0)) == 0
    assert ec.decrypt(ZERO) == 0


def test_bound_edges(ec):
    assert ec.decrypt(ec.encrypt(ec.bound - 1)) == ec.bound - 1
    with pytest.raises(BoundError):
        ec.encrypt(ec.bound)
    with pytest.raises(BoundError):
        ec.encrypt(-1)


def test_encryption_is_randomized(ec):
    a, b = ec.encrypt(5), ec.encrypt(5)
    assert a != b
    assert ec.decrypt(a) == ec.decrypt(b) == 5


def test_homomorphic_examples(ec):
    assert ec.decrypt(ct_add(ec.encrypt(2), ec.encrypt(3))) == 5
    c = ec.encrypt(9)
    assert ct_add(c, ZERO) == c
    assert ec.decrypt(ct_sub(ec.encrypt(5), ec.encrypt(2))) == 3
    assert ct_scalar_mul(0, c, 4) == ZERO
    assert ec.decrypt(ct_scalar_mul(3, ec.encrypt(4), 4)) == 12


def test_negative_scalar_and_wraparound(ec):
    # -2 * enc(3) + enc(10) = enc(4): the negative intermediate wraps mod q.
    c = ct_add(ct_scalar_mul(-2, ec.encrypt(3), 4), ec.encrypt(10))
    assert ec.decrypt(c) == 4


def test_scalar_wider_than_declared_width(ec):
    # Summed Strassen blocks can exceed t bits; the result must stay exact
    # while the counter keeps charging the declared width.
    c = OpCounter()
    out = ct_scalar_mul(40, ec.encrypt(7), 4, c)
    assert ec.decrypt(out) == 280
    assert c.ecsm_calls == {4: 2}
    assert c.ecsm_steps == 12


def test_scalar_mul_cost_example():
    c = OpCounter()
    ct_scalar_mul(5, ElGamalCiphertext(G, G), 4, c)
    assert counter_to_equiv(c).total == 16
    assert (c.point_adds, c.point_doubles) == (8, 8)


def test_wrong_key_never_crashes(ec):
    wrong = keygen(99)
    rng = random.Random(2)
    outcomes = set()
    for _ in range(100):
        m = rng.randrange(ec.bound)
        try:
            outcomes.add(decrypt(wrong, ec.encrypt(m), ec.table) == m)
        except DecodeError:
            outcomes.add("decode-error")
    assert True not in outcomes


def test_bsgs_table_shape():
    t = BsgsTable(1 << 20)
    assert t.step == 1024
    assert t.step * t.giant_steps >= t.bound
    small = BsgsTable(100, baby_steps=7)
    for m in range(100):
        assert bsgs_decode(small, scalar_mult(m, G)) == m
    with pytest.raises(DecodeError):
        bsgs_decode(small, scalar_mult(100, G))
    assert bsgs_decode(small, INFINITY) == 0


def test_bsgs_bound_limits():
    with pytest.raises(BoundError):
        BsgsTable(MAX_BOUND + 1)
    with pytest.raises(BoundError):
        BsgsTable(0)


def test_message_bound():
    b = message_bound(16, 8)
    assert b.B == 16 << 16
    assert b.n_max * (b.Bs - 1) * (b.Bm - 1) < b.B
    with pytest.raises(BoundError):
        MessageBound(B=100, Bs=16, Bm=16, n_max=1)
    with pytest.raises(BoundError):
        message_bound(1 << 20, 12)


def test_serialization_roundtrip(ec):
    for m in (0, 1, 12345):
        c = ec.encrypt(m)
        data = serialize_ciphertext(c)
        assert len(data) == 66
        assert deserialize_ciphertext(data) == c
    assert deserialize_ciphertext(serialize_ciphertext(ZERO)) == ZERO
    with pytest.raises(ValueError):
        deserialize_ciphertext(b"\0" * 65)


def test_bsgs_step_is_ceil_sqrt():
    for B in (2, 3, 10, 1000, 1 << 20, (1 << 20) + 1):
        assert BsgsTable(B).step == math.isqrt(B - 1) + 1
