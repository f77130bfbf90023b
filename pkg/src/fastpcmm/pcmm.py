"""Plaintext-ciphertext matrix multiplication engines.

Every engine takes a plaintext integer matrix ``A`` (m x n, nested lists), a
matrix of ciphertexts ``B`` (n x l) and a scheme adapter exposing
``zero/add/sub/scalar_mul``; it returns the m x l ciphertext matrix of
``A x B``. ``width`` is the declared element bit-width t charged per scalar
multiplication.
"""

from __future__ import annotations

from typing import Any, Protocol, Sequence

from .counters import OpCounter
from .cussen import DEFAULT_ITERATIONS, compress, reconstruct

Matrix = list[list[int]]
CipherMatrix = list[list[Any]]


class AHEScheme(Protocol):
    name: str
    components: int

    def zero(self) -> Any: ...

    def add(self, a, b, counter: OpCounter | None = None) -> Any: ...

    def sub(self, a, b, counter: OpCounter | None = None) -> Any: ...

    def scalar_mul(self, s: int, c, width: int, counter: OpCounter | None = None) -> Any: ...


def _shape(M: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0 or cols == 0 or any(len(r) != cols for r in M):
        raise ValueError("matrix must be non-empty and rectangular")
    return rows, cols


def _check_dims(A, B) -> tuple[int, int, int]:
    m, n = _shape(A)
    n2, l = _shape(B)
    if n != n2:
        raise ValueError(f"inner dimensions differ: {m}x{n} times {n2}x{l}")
    return m, n, l


def _check_width(A, width: int) -> None:
    hi = 1 << width
    for row in A:
        for v in row:
            if not 0 <= v < hi:
                raise ValueError(f"entry {v} outside the {width}-bit range")


def matmul_plain_oracle(A: Matrix, B: Matrix, mode: str = "inner") -> Matrix:
    m, n, l = _check_dims(A, B)
    if mode == "inner":
        return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(l)] for i in range(m)]
    if mode == "outer":
        C = [[0] * l for _ in range(m)]
        for k in range(n):
            for i in range(m):
                a = A[i][k]
                row = C[i]
                for j in range(l):
                    row[j] += a * B[k][j]
        return C
    raise ValueError(f"unknown mode {mode!r}")


def pcmm_schoolbook(
    A: Matrix, B: CipherMatrix, scheme: AHEScheme, width: int, counter: OpCounter | None = None
) -> CipherMatrix:
    """Row-by-column inner products: m*l*n scalar mults, m*l*(n-1) additions."""
    _check_dims(A, B)
    _check_width(A, width)
    return _schoolbook(A, B, scheme, width, counter)


def _schoolbook(A, B, scheme, width, counter):
    m, n, l = len(A), len(B), len(B[0])
    out = []
    for i in range(m):
        row = []
        for j in range(l):
            acc = scheme.scalar_mul(A[i][0], B[0][j], width, counter)
            for k in range(1, n):
                acc = scheme.add(acc, scheme.scalar_mul(A[i][k], B[k][j], width, counter), counter)
            row.append(acc)
        out.append(row)
    return out


# -- Strassen ----------------------------------------------------------------

def _split(M):
    h = len(M) // 2
    return (
        [r[:h] for r in M[:h]],
        [r[h:] for r in M[:h]],
        [r[:h] for r in M[h:]],
        [r[h:] for r in M[h:]],
    )


def _join(c11, c12, c21, c22):
    return [a + b for a, b in zip(c11, c12)] + [a + b for a, b in zip(c21, c22)]


def _padd(X, Y):
    return [[x + y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _psub(X, Y):
    return [[x - y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def pcmm_strassen(
    A: Matrix,
    B: CipherMatrix,
    scheme: AHEScheme,
    width: int,
    counter: OpCounter | None = None,
    leaf_size: int = 1,
    pad: bool = False,
) -> CipherMatrix:
    """Strassen recursion with plaintext A blocks and encrypted B blocks.

    Each level does 7 block products, 13 ciphertext block additions or
    subtractions and 5 plaintext ones. Recursion bottoms out at ``leaf_size``
    blocks, which are multiplied with the schoolbook engine. Only square
    power-of-two inputs are accepted unless ``pad`` zero-fills to the next
    power of two.
    """
    m, n, l = _check_dims(A, B)
    _check_width(A, width)
    if not (m == n == l and _is_pow2(n)):
        if not pad:
            raise ValueError("Strassen needs square power-of-two matrices (or pad=True)")
        size = 1 << (max(m, n, l) - 1).bit_length()
        Ap = [[A[i][k] if i < m and k < n else 0 for k in range(size)] for i in range(size)]
        z = scheme.zero()
        Bp = [[B[k][j] if k < n and j < l else z for j in range(size)] for k in range(size)]
        C = _strassen(Ap, Bp, scheme, width, counter, leaf_size)
        return [row[:l] for row in C[:m]]
    return _strassen(A, B, scheme, width, counter, leaf_size)


def _strassen(A, B, scheme, width, counter, leaf_size):
    n = len(A)
    if n <= leaf_size:
        return _schoolbook(A, B, scheme, width, counter)

    def cadd(X, Y):
        return [[scheme.add(x, y, counter) for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]

    def csub(X, Y):
        return [[scheme.sub(x, y, counter) for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]

    def rec(X, Y):
        return _strassen(X, Y, scheme, width, counter, leaf_size)

    A11, A12, A21, A22 = _split(A)
    B11, B12, B21, B22 = _split(B)
    M1 = rec(_padd(A11, A22), cadd(B11, B22))
    M2 = rec(_padd(A21, A22), B11)
    M3 = rec(A11, csub(B12, B22))
    M4 = rec(A22, csub(B21, B11))
    M5 = rec(_padd(A11, A12), B22)
    M6 = rec(_psub(A21, A11), cadd(B11, B12))
    M7 = rec(_psub(A12, A22), cadd(B21, B22))
    C11 = cadd(csub(cadd(M1, M4), M5), M7)
    C12 = cadd(M3, M5)
    C21 = cadd(M2, M4)
    C22 = cadd(cadd(csub(M1, M2), M3), M6)
    return _join(C11, C12, C21, C22)


# -- proposed ----------------------------------------------------------------

def pcmm_proposed(
    A: Matrix,
    B: CipherMatrix,
    scheme: AHEScheme,
    width: int,
    iterations: int = DEFAULT_ITERATIONS,
    counter: OpCounter | None = None,
) -> CipherMatrix:
    """Outer-product PC-MM with compressed columns of ``A``.

    Column k of A is compressed once and reused for all l ciphertexts of row
    k of B; the reconstructed outer-product columns are accumulated, with the
    first outer product initializing the accumulator.
    """
    m, n, l = _check_dims(A, B)
    _check_width(A, width)
    C: CipherMatrix = [[None] * l for _ in range(m)]
    for k in range(n):
        col = compress([A[i][k] for i in range(m)], iterations)
        for j in range(l):
            c = B[k][j]
            part = reconstruct(
                col,
                lambda v: scheme.scalar_mul(v, c, width, counter),
                lambda x, y: scheme.add(x, y, counter),
                scheme.zero(),
            )
            if k == 0:
                for i in range(m):
                    C[i][j] = part[i]
            else:
                for i in range(m):
                    C[i][j] = scheme.add(C[i][j], part[i], counter)
    return C


def column_counts(A: Matrix, iterations: int = DEFAULT_ITERATIONS):
    """Per-column compression counts of ``A`` as the proposed engine sees them."""
    m, n = _shape(A)
    return [compress([A[i][k] for i in range(m)], iterations).counts for k in range(n)]


# -- fixed point -------------------------------------------------------------

def fixed_point_encode(x: float, scale: int, bound: int | None = None) -> int:
    v = round(x * scale)
    if v < 0:
        raise ValueError("fixed-point inputs must be shifted to be nonnegative")
    if bound is not None and v >= bound:
        raise OverflowError(f"encoded value {v} exceeds the message bound {bound}")
    return v


def fixed_point_decode(v: int, scale: int, depth: int = 1) -> float:
    """Undo ``depth`` multiplicative levels of scaling."""
    return v / scale**depth
