"""Plaintext-ciphertext matrix multiplication over unpacked additively homomorphic encryption."""

from .counters import OpCounter
from .costmodel import counter_to_equiv, equiv_analytic, equiv_proposed
from .cussen import compress, reconstruct, vs_mul_encrypted, vs_mul_plain
from .pcmm import matmul_plain_oracle, pcmm_proposed, pcmm_schoolbook, pcmm_strassen

__all__ = [
    "OpCounter",
    "compress",
    "counter_to_equiv",
    "equiv_analytic",
    "equiv_proposed",
    "matmul_plain_oracle",
    "pcmm_proposed",
    "pcmm_schoolbook",
    "pcmm_strassen",
    "reconstruct",
    "vs_mul_encrypted",
    "vs_mul_plain",
]
