"""Paillier encryption as a second additively homomorphic back-end.

Ciphertext "addition" is multiplication mod N^2 and plaintext-scalar
multiplication is exponentiation through the Montgomery powering ladder.
"""

from __future__ import annotations

import math
import random
import secrets
from dataclasses import dataclass

from .counters import OpCounter
from .modmath import Modulus, Residue, inverse, mod_inv, mod_pow

MR_ROUNDS = 64
_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class KeyGenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class PaillierPublicKey:
    N: int
    g: int

    @property
    def n2(self) -> Modulus:
        return Modulus(self.N * self.N)


@dataclass(frozen=True)
class PaillierKeyPair:
    public: PaillierPublicKey
    lam: int
    mu: int

    @property
    def N(self) -> int:
        return self.public.N


@dataclass(frozen=True)
class PaillierCiphertext:
    value: Residue


def _rng(seed_or_rng) -> random.Random:
    if seed_or_rng is None:
        return secrets.SystemRandom()
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def is_probable_prime(n: int, rng: random.Random, rounds: int = MR_ROUNDS) -> bool:
    if n < 2:
        return False
    for sp in (2,) + _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random, max_tries: int = 100_000) -> int:
    for _ in range(max_tries):
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(cand, rng):
            return cand
    raise KeyGenerationError(f"no {bits}-bit prime found in {max_tries} draws")


def _L(x: int, N: int) -> int:
    return (x - 1) // N


def keypair_from_primes(p: int, q: int, g: int | None = None) -> PaillierKeyPair:
    """Build a key pair from given primes. ``g=None`` selects ``g = N + 1``."""
    N = p * q
    if p == q or math.gcd(N, (p - 1) * (q - 1)) != 1:
        raise KeyGenerationError("primes violate gcd(pq, (p-1)(q-1)) = 1")
    lam = math.lcm(p - 1, q - 1)
    if g is None:
        g = N + 1
    n2 = Modulus(N * N)
    u = _L(mod_pow(n2(g), lam).value, N)
    if math.gcd(u, N) != 1:
        raise KeyGenerationError("g does not yield an invertible L(g^lambda)")
    return PaillierKeyPair(PaillierPublicKey(N, g), lam, inverse(u, N))


def p_keygen(bits: int, seed=None, random_g: bool = False, max_retries: int = 32) -> PaillierKeyPair:
    """Key pair with two ``bits``-bit primes.

    ``random_g`` samples ``g`` uniformly from ``[1, N^2 - 1]`` instead of using
    ``N + 1``.
    """
    if bits < 16:
        raise ValueError("prime bit length must be at least 16")
    rng = _rng(seed)
    for _ in range(max_retries):
        p = random_prime(bits, rng)
        q = random_prime(bits, rng)
        try:
            key = keypair_from_primes(p, q)
        except KeyGenerationError:
            continue
        if not random_g:
            return key
        N = key.N
        for _ in range(max_retries):
            g = rng.randrange(1, N * N)
            if math.gcd(g, N) != 1:
                continue
            try:
                return keypair_from_primes(p, q, g)
            except KeyGenerationError:
                continue
    raise KeyGenerationError(f"gave up after {max_retries} attempts")


def p_encrypt(pk: PaillierPublicKey, m: int, rng=None) -> PaillierCiphertext:
    N = pk.N
    if not 0 <= m < N:
        raise ValueError(f"message {m} outside [0, {N})")
    n2 = pk.n2
    rng = _rng(rng)
    while True:
        r = rng.randrange(1, N)
        if math.gcd(r, N) == 1:
            break
    if pk.g == N + 1:
        gm = n2(1 + m * N)
    else:
        gm = mod_pow(n2(pk.g), m)
    return PaillierCiphertext(gm * mod_pow(n2(r), N))


def p_decrypt(key: PaillierKeyPair, c: PaillierCiphertext) -> int:
    N = key.N
    u = mod_pow(c.value, key.lam)
    return _L(u.value, N) * key.mu % N


def p_ct_add(a: PaillierCiphertext, b: PaillierCiphertext, counter: OpCounter | None = None) -> PaillierCiphertext:
    if counter is not None:
        counter.mod_muls += 1
    return PaillierCiphertext(a.value * b.value)


def p_ct_sub(a: PaillierCiphertext, b: PaillierCiphertext, counter: OpCounter | None = None) -> PaillierCiphertext:
    if counter is not None:
        counter.mod_invs += 1
    return p_ct_add(a, PaillierCiphertext(mod_inv(b.value)), counter)


def p_ct_scalar_mul(
    s: int, c: PaillierCiphertext, width: int, counter: OpCounter | None = None
) -> PaillierCiphertext:
    """``c^s mod N^2`` via the powering ladder; negative ``s`` inverts ``c^|s|``."""
    k = abs(s)
    steps = max(width, k.bit_length())
    out = mod_pow(c.value, k, counter, width=steps, declared=width)
    if s < 0:
        if counter is not None:
            counter.mod_invs += 1
        out = mod_inv(out)
    return PaillierCiphertext(out)


class PaillierScheme:
    name = "paillier"
    components = 1

    def __init__(self, public_key: PaillierPublicKey):
        self.public_key = public_key
        self._one = PaillierCiphertext(public_key.n2(1))

    def zero(self) -> PaillierCiphertext:
        return self._one

    def add(self, a, b, counter=None):
        return p_ct_add(a, b, counter)

    def sub(self, a, b, counter=None):
        return p_ct_sub(a, b, counter)

    def scalar_mul(self, s, c, width, counter=None):
        return p_ct_scalar_mul(s, c, width, counter)
