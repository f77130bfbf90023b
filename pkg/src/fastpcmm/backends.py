"""Key material plus encrypt/decrypt helpers bundled per scheme.

The engines only need a scheme adapter; tests and the benchmark driver also
need to produce and open ciphertexts, which is what these wrappers add.
"""

from __future__ import annotations

import random

from . import elgamal, paillier

DEFAULT_PAILLIER_BITS = 256


class ElGamalBackend:
    name = "ec-elgamal"

    def __init__(self, seed=None, bound: int = 1 << 20, baby_steps: int | None = None):
        self.rng = random.Random(seed) if seed is not None else None
        self.key = elgamal.keygen(self.rng)
        self.scheme = elgamal.ElGamalScheme(self.key.public)
        self.bound = bound
        self.table = elgamal.BsgsTable(bound, baby_steps)

    def encrypt(self, m: int):
        return elgamal.encrypt(self.key.public, m, self.rng, self.bound)

    def decrypt(self, c) -> int:
        return elgamal.decrypt(self.key, c, self.table)

    def encrypt_matrix(self, M):
        return [[self.encrypt(v) for v in row] for row in M]

    def decrypt_matrix(self, C):
        return [[self.decrypt(c) for c in row] for row in C]


class PaillierBackend:
    name = "paillier"

    def __init__(self, seed=None, bits: int = DEFAULT_PAILLIER_BITS, random_g: bool = False):
        self.rng = random.Random(seed) if seed is not None else None
        self.key = paillier.p_keygen(bits, self.rng, random_g=random_g)
        self.scheme = paillier.PaillierScheme(self.key.public)

    def encrypt(self, m: int):
        return paillier.p_encrypt(self.key.public, m, self.rng)

    def decrypt(self, c) -> int:
        return paillier.p_decrypt(self.key, c)

    def encrypt_matrix(self, M):
        return [[self.encrypt(v) for v in row] for row in M]

    def decrypt_matrix(self, C):
        return [[self.decrypt(c) for c in row] for row in C]


def make_backend(name: str, seed=None, bound: int = 1 << 20, paillier_bits: int = DEFAULT_PAILLIER_BITS):
    if name == "ec-elgamal":
        return ElGamalBackend(seed, bound)
    if name == "paillier":
        return PaillierBackend(seed, paillier_bits)
    raise ValueError(f"unknown scheme {name!r}")
