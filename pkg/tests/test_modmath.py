import random

import pytest
from hypothesis import given, strategies as st

from fastpcmm.counters import OpCounter
from fastpcmm.modmath import (
    Modulus,
    ModulusMismatchError,
    NotInvertibleError,
    Residue,
    inverse,
    mod_arith,
    mod_inv,
    mod_pow,
)

from oracles import repeated_mul

M7 = Modulus(7)


@pytest.mark.parametrize(
    "a, b, op, want",
    [(3, 4, "add", 0), (0, 1, "sub", 6), (5, 5, "mul", 4)],
)
def test_small_arithmetic(a, b, op, want):
    assert mod_arith(M7(a), M7(b), op) == M7(want)


def test_dunders_match_mod_arith():
    a, b = M7(3), M7(6)
    assert a + b == M7(2)
    assert a - b == M7(4)
    assert a * b == M7(4)


def test_reduction_on_construction():
    assert Modulus(7)(-1).value == 6
    assert Modulus(7)(15).value == 1
    with pytest.raises(ValueError):
        Residue(7, M7)
    with pytest.raises(ValueError):
        Modulus(1)


def test_mismatched_moduli():
    with pytest.raises(ModulusMismatchError):
        M7(1) + Modulus(11)(1)
    with pytest.raises(ValueError):
        mod_arith(M7(1), M7(2), "div")


def test_inverse_examples():
    assert mod_inv(Modulus(13)(1)).value == 1
    assert mod_inv(M7(2)).value == 4
    assert inverse(3, 10) == 7


def test_inverse_of_non_unit():
    with pytest.raises(NotInvertibleError):
        mod_inv(Modulus(12)(4))
    with pytest.raises(NotInvertibleError):
        inverse(0, 7)


@given(st.integers(2, 2**300), st.integers(0, 2**300))
def test_inverse_property(m, a):
    mod = Modulus(m)
    x = mod(a)
    try:
        y = mod_inv(x)
    except NotInvertibleError:
        import math

        assert math.gcd(a, m) != 1
    else:
        assert (x * y).value == 1 % m


def test_pow_examples():
    assert mod_pow(Modulus(11)(3), 0).value == 1
    assert mod_pow(Modulus(1000003)(2), 10).value == 1024


def test_pow_negative_exponent_rejected():
    with pytest.raises(ValueError):
        mod_pow(M7(3), -1)


def test_pow_width_too_small():
    with pytest.raises(ValueError):
        mod_pow(M7(3), 8, width=3)


def test_pow_against_repeated_multiplication():
    # Every base and exponent up to 64 against the naive oracle.
    m = 1009
    mod = Modulus(m)
    for base in range(65):
        for e in range(65):
            assert mod_pow(mod(base), e).value == repeated_mul(base, e, m)


@given(st.integers(0, 2**256), st.integers(0, 2**200), st.integers(2, 2**256))
def test_pow_matches_builtin(base, e, m):
    assert mod_pow(Modulus(m)(base), e).value == pow(base, e, m)


def test_ladder_count_law():
    rng = random.Random(5)
    mod = Modulus(2**127 - 1)
    for t in (1, 4, 8, 16):
        c = OpCounter()
        e = rng.randrange(1 << t)
        mod_pow(mod(rng.randrange(mod.value)), e, c, width=t)
        assert (c.mod_sqrs, c.mod_muls, c.modexp_calls, c.modexp_steps) == (t, t, {t: 1}, t)


def test_declared_width_is_recorded_separately():
    c = OpCounter()
    mod_pow(Modulus(101)(5), 300, c, width=9, declared=4)
    assert c.modexp_calls == {4: 1}
    assert c.modexp_steps == 9
    assert c.standalone_mod_ops == 0
