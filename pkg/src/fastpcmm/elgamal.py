"""Additively homomorphic EC-ElGamal over P-256 with bounded-message decoding.

Messages are mapped to the group as ``m -> mG``; decryption recovers ``m``
with a baby-step giant-step search, so plaintexts must lie in ``[0, B)``.
Intermediate plaintexts may go negative (they live as q-complements inside
the group) as long as the value finally decrypted is in range.
"""

from __future__ import annotations

import math
import random
import secrets
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .counters import OpCounter
from .curve import (
    G,
    INFINITY,
    P256,
    CurvePoint,
    FixedBaseTable,
    _add,
    decode_point,
    ecsm_ladder,
    encode_point,
    point_add,
    point_key,
    point_negate,
    scalar_mult,
)

MAX_BOUND = 1 << 42


class BoundError(ValueError):
    """A message or decoding bound is out of the supported range."""


class DecodeError(LookupError):
    """The decrypted point is not ``mG`` for any ``m`` below the bound."""


_G_TABLE: FixedBaseTable | None = None


def _g_table() -> FixedBaseTable:
    global _G_TABLE
    if _G_TABLE is None:
        _G_TABLE = FixedBaseTable(G)
    return _G_TABLE


@dataclass(frozen=True)
class PublicKey:
    H: CurvePoint

    @cached_property
    def _h_table(self) -> FixedBaseTable:
        return FixedBaseTable(self.H)


@dataclass(frozen=True)
class KeyPair:
    x: int
    H: CurvePoint

    @cached_property
    def public(self) -> PublicKey:
        return PublicKey(self.H)


class ElGamalCiphertext(NamedTuple):
    c1: CurvePoint
    c2: CurvePoint


ZERO = ElGamalCiphertext(INFINITY, INFINITY)


@dataclass(frozen=True)
class MessageBound:
    """``B`` is the decodable range; scalars are below ``Bs``, messages below ``Bm``."""

    B: int
    Bs: int
    Bm: int
    n_max: int

    def __post_init__(self):
        if self.n_max * (self.Bs - 1) * (self.Bm - 1) >= self.B:
            raise BoundError("inner products can overflow the message bound")
        if self.B > MAX_BOUND:
            raise BoundError(f"bound {self.B} exceeds the 2^42 cap")


def message_bound(n_max: int, t: int) -> MessageBound:
    """Default bound for inner products of length ``n_max`` with t-bit operands."""
    Bs = Bm = 1 << t
    return MessageBound(B=n_max * Bs * Bm, Bs=Bs, Bm=Bm, n_max=n_max)


def _rng(seed_or_rng) -> random.Random:
    if seed_or_rng is None:
        return secrets.SystemRandom()
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def keygen(seed=None) -> KeyPair:
    """Fresh key pair. ``seed`` may be an int/str seed, a Random, or None for OS entropy."""
    rng = _rng(seed)
    x = rng.randrange(1, P256.q)
    return KeyPair(x, _g_table().mult(x))


def encrypt(pk: PublicKey, m: int, rng=None, bound: int = MAX_BOUND) -> ElGamalCiphertext:
    if not 0 <= m < bound:
        raise BoundError(f"message {m} outside [0, {bound})")
    r = _rng(rng).randrange(1, P256.q)
    gt = _g_table()
    return ElGamalCiphertext(gt.mult(r), _add(pk._h_table.mult(r), gt.mult(m)))


class BsgsTable:
    """Baby-step table for recovering ``m`` from ``mG`` with ``0 <= m < bound``."""

    def __init__(self, bound: int, baby_steps: int | None = None):
        if not 1 <= bound <= MAX_BOUND:
            raise BoundError(f"bound {bound} outside [1, 2^42]")
        m = baby_steps or math.isqrt(bound - 1) + 1
        self.bound = bound
        self.step = m
        self.giant_steps = -(-bound // m)
        self.baby: dict[int, int] = {}
        P = INFINITY
        for j in range(m):
            self.baby.setdefault(point_key(P), j)
            P = _add(P, G)
        self.giant = point_negate(P)  # -m*G


def bsgs_decode(table: BsgsTable, P: CurvePoint) -> int:
    Q = P
    for i in range(table.giant_steps):
        j = table.baby.get(point_key(Q))
        if j is not None:
            v = i * table.step + j
            if v < table.bound:
                return v
            break
        Q = _add(Q, table.giant)
    raise DecodeError("point is not a multiple of G below the bound")


def decrypt(key: KeyPair, c: ElGamalCiphertext, table: BsgsTable) -> int:
    shared = scalar_mult(key.x, c.c1)
    return bsgs_decode(table, _add(c.c2, point_negate(shared)))


def ct_add(a: ElGamalCiphertext, b: ElGamalCiphertext, counter: OpCounter | None = None) -> ElGamalCiphertext:
    # Ciphertext components are on the curve by construction (encryption,
    # homomorphic ops, or validated deserialization), so skip re-checking.
    return ElGamalCiphertext(
        point_add(a.c1, b.c1, counter, validate=False),
        point_add(a.c2, b.c2, counter, validate=False),
    )


def ct_neg(a: ElGamalCiphertext) -> ElGamalCiphertext:
    return ElGamalCiphertext(point_negate(a.c1), point_negate(a.c2))


def ct_sub(a: ElGamalCiphertext, b: ElGamalCiphertext, counter: OpCounter | None = None) -> ElGamalCiphertext:
    return ct_add(a, ct_neg(b), counter)


def ct_scalar_mul(
    s: int, c: ElGamalCiphertext, width: int, counter: OpCounter | None = None
) -> ElGamalCiphertext:
    """``s * c`` with two ladder ECSMs of declared width ``width``.

    A scalar wider than ``width`` bits still gets a correct ladder of its own
    length; the counter keeps charging the declared width.
    """
    k = abs(s)
    steps = max(width, k.bit_length())
    out = ElGamalCiphertext(
        ecsm_ladder(k, c.c1, steps, counter, declared=width),
        ecsm_ladder(k, c.c2, steps, counter, declared=width),
    )
    return ct_neg(out) if s < 0 else out


def serialize_ciphertext(c: ElGamalCiphertext) -> bytes:
    return encode_point(c.c1) + encode_point(c.c2)


def deserialize_ciphertext(data: bytes) -> ElGamalCiphertext:
    if len(data) != 66:
        raise ValueError("ciphertext records are 66 bytes")
    return ElGamalCiphertext(decode_point(data[:33]), decode_point(data[33:]))


class ElGamalScheme:
    """Homomorphic-operation adapter used by the matrix engines."""

    name = "ec-elgamal"
    components = 2

    def __init__(self, public_key: PublicKey | None = None):
        self.public_key = public_key

    def zero(self) -> ElGamalCiphertext:
        return ZERO

    def add(self, a, b, counter=None):
        return ct_add(a, b, counter)

    def sub(self, a, b, counter=None):
        return ct_sub(a, b, counter)

    def scalar_mul(self, s, c, width, counter=None):
        return ct_scalar_mul(s, c, width, counter)
