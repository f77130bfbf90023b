"""NIST P-256 group arithmetic.

The counted operations (``point_add``, ``point_double``, ``ecsm_ladder``) use
affine coordinates and tally themselves into an :class:`OpCounter`. Key
generation, encryption and decryption use the uncounted Jacobian helpers
(``scalar_mult`` and :class:`FixedBaseTable`), which never appear in a cost
report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .counters import OpCounter
from .modmath import inverse


class OffCurveError(ValueError):
    """A point does not satisfy the curve equation."""


class CurvePoint(NamedTuple):
    """Affine point; ``x is None`` encodes the point at infinity."""

    x: int | None
    y: int | None

    @property
    def is_infinity(self) -> bool:
        return self.x is None


INFINITY = CurvePoint(None, None)


@dataclass(frozen=True)
class CurveParams:
    p: int
    a: int
    b: int
    G: CurvePoint
    q: int


P256 = CurveParams(
    p=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFF,
    a=0xFFFFFFFF00000001000000000000000000000000FFFFFFFFFFFFFFFFFFFFFFFC,
    b=0x5AC635D8AA3A93E7B3EBBD55769886BC651D06B0CC53B0F63BCE3C3E27D2604B,
    G=CurvePoint(
        0x6B17D1F2E12C4247F8BCE6E563A440F277037D812DEB33A0F4A13945D898C296,
        0x4FE342E2FE1A7F9B8EE7EB4A7C0F9E162BCE33576B315ECECBB6406837BF51F5,
    ),
    q=0xFFFFFFFF00000000FFFFFFFFFFFFFFFFBCE6FAADA7179E84F3B9CAC2FC632551,
)

_p = P256.p
_a = P256.a
_b = P256.b
G = P256.G


def is_on_curve(P: CurvePoint) -> bool:
    if P.x is None:
        return P.y is None
    x, y = P
    if not (0 <= x < _p and 0 <= y < _p):
        return False
    return (y * y - (x * x * x + _a * x + _b)) % _p == 0


def _check(P: CurvePoint) -> None:
    if not is_on_curve(P):
        raise OffCurveError(f"point {P} is not on P-256")


def _double(P: CurvePoint) -> CurvePoint:
    x, y = P
    if x is None or y == 0:
        return INFINITY
    lam = (3 * x * x + _a) * inverse(2 * y, _p) % _p
    x3 = (lam * lam - 2 * x) % _p
    return CurvePoint(x3, (lam * (x - x3) - y) % _p)


def _add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.x is None:
        return Q
    if Q.x is None:
        return P
    if P.x == Q.x:
        if (P.y + Q.y) % _p == 0:
            return INFINITY
        return _double(P)
    lam = (Q.y - P.y) * inverse(Q.x - P.x, _p) % _p
    x3 = (lam * lam - P.x - Q.x) % _p
    return CurvePoint(x3, (lam * (P.x - x3) - P.y) % _p)


def point_add(
    P: CurvePoint, Q: CurvePoint, counter: OpCounter | None = None, validate: bool = True
) -> CurvePoint:
    """Group sum. ``P == Q`` is delegated to doubling and tallied as one.

    ``validate=False`` skips the on-curve checks for points that are known to
    be valid, such as components of ciphertexts built by this package.
    """
    if validate:
        _check(P)
        _check(Q)
    if counter is not None:
        if P.x is not None and P == Q:
            counter.point_doubles += 1
        else:
            counter.point_adds += 1
    return _add(P, Q)


def point_double(P: CurvePoint, counter: OpCounter | None = None) -> CurvePoint:
    _check(P)
    if counter is not None:
        counter.point_doubles += 1
    return _double(P)


def point_negate(P: CurvePoint) -> CurvePoint:
    if P.x is None:
        return INFINITY
    return CurvePoint(P.x, (-P.y) % _p)


def ecsm_ladder(
    k: int,
    P: CurvePoint,
    width: int,
    counter: OpCounter | None = None,
    declared: int | None = None,
) -> CurvePoint:
    """Montgomery-ladder scalar multiplication ``kP``.

    Always performs ``width`` iterations of one addition and one doubling,
    independent of the bits of ``k``. ``declared`` is the width recorded in
    ``counter.ecsm_calls`` (defaults to ``width``).
    """
    if k < 0:
        raise ValueError("scalar must be nonnegative")
    if width < k.bit_length():
        raise ValueError(f"width {width} too small for a {k.bit_length()}-bit scalar")
    _check(P)
    R = [INFINITY, P]
    for i in range(width - 1, -1, -1):
        b = (k >> i) & 1
        R[1 - b] = _add(R[1], R[0])
        R[b] = _double(R[b])
    if counter is not None:
        counter.record_ecsm(width if declared is None else declared, width)
    return R[0]


# -- uncounted fast paths (Jacobian coordinates, a = -3) --------------------

def _jdouble(X, Y, Z):
    if Y == 0 or Z == 0:
        return 1, 1, 0
    delta = Z * Z % _p
    gamma = Y * Y % _p
    beta = X * gamma % _p
    alpha = 3 * (X - delta) * (X + delta) % _p
    X3 = (alpha * alpha - 8 * beta) % _p
    Z3 = ((Y + Z) ** 2 - gamma - delta) % _p
    Y3 = (alpha * (4 * beta - X3) - 8 * gamma * gamma) % _p
    return X3, Y3, Z3


def _jadd_affine(X1, Y1, Z1, x2, y2):
    if Z1 == 0:
        return x2, y2, 1
    Z1Z1 = Z1 * Z1 % _p
    H = (x2 * Z1Z1 - X1) % _p
    r = (y2 * Z1 * Z1Z1 - Y1) % _p
    if H == 0:
        if r == 0:
            return _jdouble(X1, Y1, Z1)
        return 1, 1, 0
    HH = H * H % _p
    HHH = H * HH % _p
    V = X1 * HH % _p
    X3 = (r * r - HHH - 2 * V) % _p
    Y3 = (r * (V - X3) - Y1 * HHH) % _p
    return X3, Y3, Z1 * H % _p


def _to_affine(X, Y, Z) -> CurvePoint:
    if Z == 0:
        return INFINITY
    zi = inverse(Z, _p)
    zi2 = zi * zi % _p
    return CurvePoint(X * zi2 % _p, Y * zi2 * zi % _p)


def scalar_mult(k: int, P: CurvePoint) -> CurvePoint:
    """``kP`` for any integer ``k`` (reduced mod q). Not counted."""
    k %= P256.q
    if k == 0 or P.x is None:
        return INFINITY
    X, Y, Z = 1, 1, 0
    for i in range(k.bit_length() - 1, -1, -1):
        X, Y, Z = _jdouble(X, Y, Z)
        if (k >> i) & 1:
            X, Y, Z = _jadd_affine(X, Y, Z, P.x, P.y)
    return _to_affine(X, Y, Z)


class FixedBaseTable:
    """Precomputed ``d * 16**i * P`` for fast uncounted multiples of a fixed point."""

    WINDOW = 4

    def __init__(self, P: CurvePoint, bits: int = 256):
        _check(P)
        self.point = P
        self.rows: list[list[CurvePoint]] = []
        base = P
        for _ in range(-(-bits // self.WINDOW)):
            row = [INFINITY, base]
            for _ in range(2, 1 << self.WINDOW):
                row.append(_add(row[-1], base))
            self.rows.append(row)
            base = _add(row[-1], base)

    def mult(self, k: int) -> CurvePoint:
        k %= P256.q
        X, Y, Z = 1, 1, 0
        mask = (1 << self.WINDOW) - 1
        for row in self.rows:
            d = k & mask
            k >>= self.WINDOW
            if d:
                pt = row[d]
                X, Y, Z = _jadd_affine(X, Y, Z, pt.x, pt.y)
            if not k:
                break
        return _to_affine(X, Y, Z)


def point_key(P: CurvePoint) -> int:
    """Compact injective key: ``2x + parity(y)``; -1 for infinity."""
    if P.x is None:
        return -1
    return (P.x << 1) | (P.y & 1)


def encode_point(P: CurvePoint) -> bytes:
    """32-byte little-endian x followed by a flag: 0 infinity, 2/3 y parity."""
    if P.x is None:
        return bytes(33)
    return P.x.to_bytes(32, "little") + bytes([2 | (P.y & 1)])


def decode_point(data: bytes) -> CurvePoint:
    if len(data) != 33:
        raise ValueError("encoded point must be 33 bytes")
    flag = data[32]
    if flag == 0:
        if any(data[:32]):
            raise ValueError("malformed infinity encoding")
        return INFINITY
    if flag not in (2, 3):
        raise ValueError(f"bad point flag {flag}")
    x = int.from_bytes(data[:32], "little")
    if x >= _p:
        raise OffCurveError("x-coordinate is not reduced")
    rhs = (x * x * x + _a * x + _b) % _p
    y = pow(rhs, (_p + 1) // 4, _p)
    if y * y % _p != rhs:
        raise OffCurveError("x-coordinate is not on P-256")
    if (y & 1) != (flag & 1):
        y = _p - y
    return CurvePoint(x, y)
