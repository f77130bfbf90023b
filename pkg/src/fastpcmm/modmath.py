"""Modular integer arithmetic over an explicit modulus context.

Values are unsigned and always canonical (``0 <= value < modulus``); negation
is expressed as modular subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    import gmpy2
except ImportError:  # pragma: no cover - exercised only without gmpy2
    gmpy2 = None

from .counters import OpCounter


class ModulusMismatchError(ValueError):
    """Operands live in different residue rings."""


class NotInvertibleError(ArithmeticError):
    """The operand shares a factor with the modulus."""


@dataclass(frozen=True)
class Modulus:
    value: int

    def __post_init__(self):
        if self.value < 2:
            raise ValueError(f"modulus must be >= 2, got {self.value}")

    def __call__(self, x: int) -> Residue:
        return Residue(x % self.value, self)


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.value:
            raise ValueError(f"{self.value} is not reduced modulo {self.modulus.value}")

    def __add__(self, other: Residue) -> Residue:
        return mod_arith(self, other, "add")

    def __sub__(self, other: Residue) -> Residue:
        return mod_arith(self, other, "sub")

    def __mul__(self, other: Residue) -> Residue:
        return mod_arith(self, other, "mul")

    def __int__(self) -> int:
        return self.value


def mod_arith(a: Residue, b: Residue, op: str) -> Residue:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"{a.modulus.value} != {b.modulus.value}")
    m = a.modulus.value
    if op == "add":
        v = a.value + b.value
    elif op == "sub":
        v = a.value - b.value
    elif op == "mul":
        v = a.value * b.value
    else:
        raise ValueError(f"unknown operation {op!r}")
    return Residue(v % m, a.modulus)


def inverse(a: int, m: int) -> int:
    """Plain-int modular inverse; raises NotInvertibleError."""
    try:
        if gmpy2 is not None:
            return int(gmpy2.invert(a, m))
        return pow(a, -1, m)
    except (ValueError, ZeroDivisionError):
        raise NotInvertibleError(f"{a} has no inverse modulo {m}") from None


def mod_inv(a: Residue) -> Residue:
    return Residue(inverse(a.value, a.modulus.value), a.modulus)


def mod_pow(
    base: Residue,
    exp: int,
    counter: OpCounter | None = None,
    width: int | None = None,
    declared: int | None = None,
) -> Residue:
    """Montgomery powering ladder.

    Runs exactly ``width`` iterations (default: bit length of ``exp``), each
    one multiplication and one squaring. ``declared`` is the width charged in
    the counter's ``modexp_calls`` and defaults to ``width``.
    """
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    t = exp.bit_length() if width is None else width
    if t < exp.bit_length():
        raise ValueError(f"width {t} too small for a {exp.bit_length()}-bit exponent")
    m = base.modulus.value
    r = [1 % m, base.value]
    for i in range(t - 1, -1, -1):
        b = (exp >> i) & 1
        r[1 - b] = r[1] * r[0] % m
        r[b] = r[b] * r[b] % m
    if counter is not None:
        counter.record_modexp(t if declared is None else declared, t)
    return Residue(r[0], base.modulus)
